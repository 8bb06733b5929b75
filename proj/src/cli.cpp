// SPDX-License-Identifier: Apache-2.0
//
// dpalab: delay-phased array beamforming laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "dpalab/cli.hpp"

#include "dpalab/baselines.hpp"
#include "dpalab/benchmarks.hpp"
#include "dpalab/closedform.hpp"
#include "dpalab/io.hpp"
#include "dpalab/metrics.hpp"
#include "dpalab/netsim.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace dpalab
{
    namespace
    {
        struct GridOptions
        {
            int antennas = 16;
            double bandwidth_hz = 400e6;
            int freq_bins = 256;
            int angle_bins = 64;
            int phase_bits = 6;
            double delay_step_ns = 0.1;
            std::uint64_t seed = 1;
            std::string out;
            CLI::Option *antennas_opt = nullptr;
            CLI::Option *bandwidth_opt = nullptr;
            CLI::Option *freq_opt = nullptr;
            CLI::Option *angle_opt = nullptr;
            CLI::Option *phase_opt = nullptr;
            CLI::Option *delay_opt = nullptr;
            CLI::Option *seed_opt = nullptr;

            ArrayConfig config() const
            {
                ArrayConfig c;
                c.num_antennas = antennas;
                c.bandwidth_hz = bandwidth_hz;
                c.num_freq_bins = freq_bins;
                c.num_angle_bins = angle_bins;
                c.validate();
                return c;
            }

            QuantizerSpec quantizer(const ArrayConfig &c) const
            {
                // range spans the whole delay window so multi-beam plans never saturate
                QuantizerSpec q{phase_bits, delay_step_ns * 1e-9, c.time_window()};
                q.validate();
                return q;
            }
        };

        void add_grid_options(CLI::App *cmd, GridOptions &g)
        {
            g.antennas_opt = cmd->add_option("--antennas", g.antennas, "Number of antennas N");
            g.bandwidth_opt = cmd->add_option("--bandwidth-hz", g.bandwidth_hz, "System bandwidth B in Hz");
            g.freq_opt = cmd->add_option("--freq-bins", g.freq_bins, "Frequency bins M");
            g.angle_opt = cmd->add_option("--angle-bins", g.angle_bins, "Angle bins D (uniform in sin)");
            g.phase_opt = cmd->add_option("--phase-bits", g.phase_bits, "Phase quantizer bits");
            g.delay_opt = cmd->add_option("--delay-step-ns", g.delay_step_ns, "Delay quantizer step in ns");
            g.seed_opt = cmd->add_option("--seed", g.seed, "Random seed");
            cmd->add_option("--out", g.out, "Output directory (default: $DPALAB_OUT_DIR or .)");
        }

        fs::path output_dir(const GridOptions &g)
        {
            fs::path dir = g.out;
            if (dir.empty())
            {
                const char *env = std::getenv(output_dir_env);
                dir = (env && *env) ? fs::path(env) : fs::path(".");
            }
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (!fs::is_directory(dir))
                throw Error("io_error", "output directory is not usable: " + dir.string());
            return dir;
        }

        std::string read_file(const std::string &path)
        {
            std::ifstream in(path);
            if (!in)
                throw Error("io_error", "cannot read " + path);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        std::ofstream open_out(const fs::path &path)
        {
            std::ofstream out(path);
            if (!out)
                throw Error("io_error", "cannot write " + path.string());
            return out;
        }

        BeamPlan load_plan(const std::string &plan_path, const std::vector<double> &dirs_deg,
                           const std::vector<double> &fractions, double bandwidth_hz)
        {
            if (!plan_path.empty())
                return plan_from_json(read_file(plan_path));
            if (dirs_deg.empty())
                throw Error("invalid_arguments", "either --plan or --directions is required");
            std::vector<double> sins;
            for (double d : dirs_deg)
                sins.push_back(std::sin(d * pi / 180.0));
            if (fractions.empty())
                return BeamPlan::equal_split(sins, bandwidth_hz);
            return BeamPlan::from_fractions(sins, fractions, bandwidth_hz);
        }

        DelayPhaseWeights closed_form_for(const BeamPlan &plan, const ArrayConfig &c)
        {
            return generalized_weights(plan, c.bandwidth_hz, c.num_antennas);
        }

        DelayPhaseWeights baseline_weights(ArchitectureKind arch, const BeamPlan &plan, const ArrayConfig &c)
        {
            std::vector<double> dirs;
            for (const auto &b : plan.sorted_by_band().beams)
                dirs.push_back(b.sin_theta);
            switch (arch)
            {
            case ArchitectureKind::phased_tdma:
                return phased_array_weights(dirs.empty() ? 0.0 : dirs.front(), c.num_antennas);
            case ArchitectureKind::split_antenna:
                return split_array_weights(dirs, c.num_antennas);
            case ArchitectureKind::ttd_rainbow:
                return ttd_rainbow_weights(c.num_antennas, c.bandwidth_hz);
            default:
                break;
            }
            throw Error("invalid_architecture", "architecture has no per-antenna weights");
        }

        json files_json(const std::vector<fs::path> &files)
        {
            json arr = json::array();
            for (const auto &f : files)
                arr.push_back(f.string());
            return json{{"files", arr}};
        }

        double max_rel_diff(const std::vector<double> &a, const std::vector<double> &b)
        {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
            {
                num += (a[i] - b[i]) * (a[i] - b[i]);
                den += b[i] * b[i];
            }
            return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
        }

        DelayPhaseWeights random_weights(std::mt19937_64 &rng, int N, double max_delay)
        {
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            DelayPhaseWeights w;
            for (int n = 0; n < N; ++n)
            {
                w.delays.push_back(u01(rng) * max_delay);
                w.phases.push_back(u01(rng) * two_pi);
            }
            return w;
        }
    }

    std::vector<ValidationCheck> run_validation(const ArrayConfig &config)
    {
        config.validate();
        std::vector<ValidationCheck> checks;
        const int N = config.num_antennas, M = config.num_freq_bins, D = config.num_angle_bins;
        std::mt19937_64 rng(7);

        {
            ArrayConfig square = config;
            square.time_oversampling = 1;
            const CMatrix U = dft_matrix(square);
            const double e1 = (U.adjoint() * U - CMatrix::Identity(M, M)).norm() / std::sqrt(M);
            const CMatrix Ur = dft_matrix(config);
            const double e2 = (Ur * Ur.adjoint() - CMatrix::Identity(M, M)).norm() / std::sqrt(M);
            checks.push_back({"dft_unitarity", std::max(e1, e2) <= 1e-9, std::max(e1, e2), 1e-9});
            const CMatrix V = steering_matrix(config);
            const double e3 = (V * V.adjoint() / D - CMatrix::Identity(N, N)).norm() / std::sqrt(N);
            checks.push_back({"steering_unitarity", e3 <= 1e-9, e3, 1e-9});
        }
        {
            double worst = 0.0, peak = 0.0;
            for (int trial = 0; trial < 20; ++trial)
            {
                const DelayPhaseWeights w = random_weights(rng, N, 6.4e-9);
                const FrequencySpaceImage img = weights_pattern(w, config);
                for (int m = 0; m < M; ++m)
                {
                    const double p = img.values.row(m).squaredNorm() / D;
                    worst = std::max(worst, std::abs(p - N) / N);
                }
                peak = std::max(peak, img.values.cwiseAbs().maxCoeff());
            }
            checks.push_back({"power_conservation", worst <= 1e-6, worst, 1e-6});
            checks.push_back({"peak_bound", peak <= N * (1.0 + 1e-12), peak / N, 1.0});
        }
        {
            const DelayPhaseWeights w = random_weights(rng, N, 6.4e-9);
            const FrequencySpaceImage a = weights_pattern(w, config);
            const FrequencySpaceImage b = gain_pattern(encode_delta_weights(w, config), config);
            const double eps = two_pi * (config.bandwidth_hz / 2.0) * (config.sample_period() / 2.0);
            const double bound = N * eps;
            const double diff = (a.values - b.values).cwiseAbs().maxCoeff();
            checks.push_back({"tap_rounding_consistency", diff <= bound, diff, bound});
        }
        {
            const BeamPlan plan = BeamPlan::from_fractions({std::sin(-0.5), std::sin(0.2), std::sin(0.7)}, {0.3, 0.3, 0.4},
                                                           config.bandwidth_hz);
            const FrequencySpaceImage g = build_desired_image(plan, config);
            const CMatrix fast = fsda_transform(g, config).values;
            const CMatrix dense = fsda_transform_dense(g, config).values;
            const double e = (fast - dense).norm() / std::max(dense.norm(), 1e-300);
            checks.push_back({"fsda_fft_matches_dense", e <= 1e-9, e, 1e-9});
        }
        {
            std::uniform_int_distribution<int> tap(0, config.num_time_taps() - 1);
            std::uniform_real_distribution<double> ph(0.0, two_pi);
            DelayPhaseWeights w;
            for (int n = 0; n < N; ++n)
            {
                w.delays.push_back(tap(rng) * config.sample_period());
                w.phases.push_back(ph(rng));
            }
            const DelayPhaseWeights r = extract_delay_phase(encode_delta_weights(w, config), config);
            double e = 0.0;
            for (int n = 0; n < N; ++n)
                e = std::max({e, std::abs(r.delays[n] - w.delays[n]) / config.sample_period(),
                              sin_distance(r.phases[n] / pi, w.phases[n] / pi) * pi});
            checks.push_back({"extract_encode_identity", e <= 1e-9, e, 1e-9});

            const QuantizerSpec q;
            const DelayPhaseWeights once = quantize_weights(random_weights(rng, N, 5e-9), q);
            const DelayPhaseWeights twice = quantize_weights(once, q);
            double dq = 0.0;
            for (int n = 0; n < N; ++n)
                dq = std::max({dq, std::abs(once.delays[n] - twice.delays[n]), std::abs(once.phases[n] - twice.phases[n])});
            checks.push_back({"quantization_idempotent", dq == 0.0, dq, 0.0});
        }
        {
            double worst = 0.0;
            for (int i = 1; i <= 10; ++i)
            {
                const double s0 = i / 10.0;
                const BeamPlan plan = BeamPlan::equal_split({-s0, s0}, config.bandwidth_hz);
                const ClosedFormSolution sol = generalized_solution(plan, config.bandwidth_hz, N);
                const DelayPhaseWeights tb = two_beam_weights(s0, config.bandwidth_hz, N);
                std::vector<double> shifted, phases;
                for (int n = 0; n < N; ++n)
                {
                    shifted.push_back(sol.delays[n] + 3.0 / (4.0 * config.bandwidth_hz));
                    phases.push_back(wrap_phase(sol.phases[n]));
                }
                worst = std::max({worst, max_rel_diff(shifted, tb.delays), max_rel_diff(phases, tb.phases)});
            }
            checks.push_back({"generalized_matches_two_beam", worst <= 1e-12, worst, 1e-12});
        }
        {
            const double s0 = std::sin(20.0 * pi / 180.0);
            const BeamPlan plan = BeamPlan::equal_split({-s0, s0}, config.bandwidth_hz);
            const ClosedFormSolution sol = generalized_solution(plan, config.bandwidth_hz, N);
            double prev = INFINITY, last = 0.0;
            bool monotone = true;
            for (int order : {256, 1024, 4096})
            {
                std::vector<double> ph, dl;
                for (int n = 0; n < N; ++n)
                {
                    const LineFit fit = line_fit_oracle(LineFitProblem::from_plan(plan, config.bandwidth_hz, n, order));
                    ph.push_back(fit.phase);
                    dl.push_back(fit.delay);
                }
                last = std::max(max_rel_diff(ph, sol.phases), max_rel_diff(dl, sol.delays));
                monotone = monotone && last < prev;
                prev = last;
            }
            checks.push_back({"line_fit_convergence", monotone && last < 1e-3, last, 1e-3});
        }
        {
            const double s0 = std::sin(20.0 * pi / 180.0);
            const BeamPlan plan = BeamPlan::equal_split({-s0, s0}, config.bandwidth_hz);
            const DelayPhaseWeights w = two_beam_weights(s0, config.bandwidth_hz, N);
            // peaks must fall inside the main lobe (half-width 2/N) of the intended beam
            const double lobe_bins = std::max(1.0, (2.0 / N) / config.angle_step());
            const double frac = pointing_accuracy(weights_pattern(w, config), plan, config, lobe_bins).fraction();
            checks.push_back({"two_beam_pointing", frac >= 0.95, frac, 0.95});

            const FrequencySpaceImage ttd = weights_pattern(ttd_rainbow_weights(N, config.bandwidth_hz), config);
            int ok = 0;
            for (int m = 0; m < M; ++m)
                if (sin_distance(config.sin_angle(argmax_angle(ttd, m)), 2.0 * config.freq(m) / config.bandwidth_hz) <=
                    config.angle_step() + 1e-12)
                    ++ok;
            checks.push_back({"ttd_pointing_locus", ok == M, static_cast<double>(ok) / M, 1.0});
        }
        return checks;
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Delay-phased array beamforming laboratory"};
        app.require_subcommand(1);

        GridOptions g_weights, g_pattern, g_bench, g_emulate, g_validate;

        std::string plan_path, method = "fsda", arch = "dpa";
        std::vector<double> dirs_deg, fractions;
        bool unquantized = false;
        auto *weights = app.add_subcommand("weights", "Synthesize per-antenna delays and phases");
        add_grid_options(weights, g_weights);
        weights->add_option("--plan", plan_path, "Beam plan JSON file");
        weights->add_option("--directions", dirs_deg, "Beam directions in degrees (alternative to --plan)")->delimiter(',');
        weights->add_option("--fractions", fractions, "Bandwidth fractions per direction")->delimiter(',');
        weights->add_option("--method", method, "fsda, closedform or both")->check(CLI::IsMember({"fsda", "closedform", "both"}));
        weights->add_option("--arch", arch, "dpa, tdma, split or ttd")->check(CLI::IsMember({"dpa", "tdma", "split", "ttd"}));
        weights->add_flag("--unquantized", unquantized, "Skip FSDA quantization");

        std::string p_plan, p_weights, p_method = "fsda", p_arch = "dpa";
        std::vector<double> p_dirs, p_fractions;
        auto *pattern = app.add_subcommand("pattern", "Frequency-space gain pattern as CSV");
        add_grid_options(pattern, g_pattern);
        pattern->add_option("--plan", p_plan, "Beam plan JSON file");
        pattern->add_option("--directions", p_dirs, "Beam directions in degrees")->delimiter(',');
        pattern->add_option("--fractions", p_fractions, "Bandwidth fractions per direction")->delimiter(',');
        pattern->add_option("--weights", p_weights, "Weights CSV to evaluate instead of a plan");
        pattern->add_option("--method", p_method, "fsda or closedform")->check(CLI::IsMember({"fsda", "closedform"}));
        pattern->add_option("--arch", p_arch, "dpa, tdma, split, ttd or oracle")
            ->check(CLI::IsMember({"dpa", "tdma", "split", "ttd", "oracle"}));

        std::string kind;
        auto *bench = app.add_subcommand("benchmark", "Parameter sweeps as CSV");
        add_grid_options(bench, g_bench);
        bench->add_option("--kind", kind, "angle_sep, subcarrier_alloc, quantization, antennas, user_dirs, delay_range")
            ->required()
            ->check(CLI::IsMember({"angle_sep", "subcarrier_alloc", "quantization", "antennas", "user_dirs", "delay_range"}));

        std::string scenario_path, e_arch, traffic;
        bool all = false;
        int ttis = 0;
        auto *emulate = app.add_subcommand("emulate", "Multi-user TTI emulation");
        add_grid_options(emulate, g_emulate);
        emulate->add_option("--scenario", scenario_path, "Scenario JSON (default: ten-user preset)");
        emulate->add_option("--arch", e_arch, "dpa, tdma, split, ttd or oracle")
            ->check(CLI::IsMember({"dpa", "tdma", "split", "ttd", "oracle"}));
        emulate->add_option("--traffic", traffic, "fluid or frames")->check(CLI::IsMember({"fluid", "frames"}));
        emulate->add_option("--ttis", ttis, "Number of TTIs");
        emulate->add_flag("--all", all, "Run dpa, tdma, split and ttd and write a comparison table");

        bool flip_sign = false;
        auto *validate = app.add_subcommand("validate", "Run the numerical property checks");
        add_grid_options(validate, g_validate);
        validate->add_flag("--flip-delay-sign", flip_sign, "Evaluate gains with the opposite delay sign");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            out << app.help();
            return 0;
        }
        catch (const CLI::ParseError &e)
        {
            err << json{{"error", "invalid_arguments"}, {"message", e.what()}}.dump() << '\n';
            return e.get_exit_code() ? e.get_exit_code() : 2;
        }

        try
        {
            if (*weights)
            {
                const ArrayConfig c = g_weights.config();
                const BeamPlan plan = load_plan(plan_path, dirs_deg, fractions, c.bandwidth_hz);
                plan.validate(c.bandwidth_hz);
                const fs::path dir = output_dir(g_weights);
                std::vector<fs::path> files;
                auto fsda_w = [&] {
                    return unquantized ? synthesize(plan, c, std::nullopt) : synthesize(plan, c, g_weights.quantizer(c));
                };
                if (arch != "dpa")
                {
                    files.push_back(dir / "weights.csv");
                    auto f = open_out(files.back());
                    write_weights_csv(f, baseline_weights(parse_architecture(arch), plan, c));
                }
                else if (method == "both")
                {
                    const DelayPhaseWeights a = fsda_w(), b = closed_form_for(plan, c);
                    files = {dir / "weights_fsda.csv", dir / "weights_closedform.csv", dir / "weights_diff.csv"};
                    auto fa = open_out(files[0]);
                    write_weights_csv(fa, a);
                    auto fb = open_out(files[1]);
                    write_weights_csv(fb, b);
                    auto fd = open_out(files[2]);
                    fd << "antenna,delay_diff_ns,phase_diff_deg\n" << std::setprecision(15);
                    for (std::size_t n = 0; n < a.size(); ++n)
                    {
                        double dp = std::remainder(a.phases[n] - b.phases[n], two_pi);
                        fd << n << ',' << (a.delays[n] - b.delays[n]) * 1e9 << ',' << dp * 180.0 / pi << '\n';
                    }
                }
                else
                {
                    files.push_back(dir / "weights.csv");
                    auto f = open_out(files.back());
                    write_weights_csv(f, method == "fsda" ? fsda_w() : closed_form_for(plan, c));
                }
                out << files_json(files).dump() << '\n';
                return 0;
            }

            if (*pattern)
            {
                const ArrayConfig c = g_pattern.config();
                const fs::path dir = output_dir(g_pattern);
                FrequencySpaceImage img;
                if (!p_weights.empty())
                {
                    std::ifstream in(p_weights);
                    if (!in)
                        throw Error("io_error", "cannot read " + p_weights);
                    img = weights_pattern(read_weights_csv(in), c);
                }
                else
                {
                    const ArchitectureKind k = parse_architecture(p_arch);
                    const BeamPlan plan = k == ArchitectureKind::ttd_rainbow && p_plan.empty() && p_dirs.empty()
                                              ? BeamPlan{}
                                              : load_plan(p_plan, p_dirs, p_fractions, c.bandwidth_hz);
                    if (k == ArchitectureKind::oracle)
                        img = oracle_gain(plan, c);
                    else if (k == ArchitectureKind::dpa)
                        img = weights_pattern(p_method == "fsda" ? synthesize(plan, c, g_pattern.quantizer(c)) : closed_form_for(plan, c), c);
                    else
                        img = weights_pattern(baseline_weights(k, plan, c), c);
                }
                const fs::path file = dir / "pattern.csv";
                auto f = open_out(file);
                write_image_csv(f, img, c.num_antennas);
                out << files_json({file}).dump() << '\n';
                return 0;
            }

            if (*bench)
            {
                const ArrayConfig c = g_bench.config();
                const fs::path dir = output_dir(g_bench);
                const BenchmarkTable t = run_benchmark(kind, c);
                const fs::path file = dir / ("benchmark_" + kind + ".csv");
                auto f = open_out(file);
                write_table_csv(f, t);
                out << files_json({file}).dump() << '\n';
                return 0;
            }

            if (*emulate)
            {
                EmulationScenario base = scenario_path.empty() ? EmulationScenario::table1(ArchitectureKind::dpa, g_emulate.seed)
                                                               : scenario_from_json(read_file(scenario_path));
                if (*g_emulate.seed_opt && !scenario_path.empty())
                    base.rng_seed = g_emulate.seed;
                if (*g_emulate.antennas_opt)
                    base.num_antennas = g_emulate.antennas;
                if (*g_emulate.bandwidth_opt)
                    base.bandwidth_hz = g_emulate.bandwidth_hz;
                if (*g_emulate.freq_opt)
                    base.num_subcarriers = g_emulate.freq_bins;
                if (*g_emulate.angle_opt)
                    base.angle_bins = g_emulate.angle_bins;
                if (*g_emulate.phase_opt)
                    base.phase_bits = g_emulate.phase_bits;
                if (*g_emulate.delay_opt)
                    base.delay_step_s = g_emulate.delay_step_ns * 1e-9;
                if (!traffic.empty())
                    base.traffic = traffic == "fluid" ? TrafficModel::fluid : TrafficModel::frames;
                if (ttis > 0)
                    base.num_ttis = ttis;
                if (!e_arch.empty())
                    base.architecture = parse_architecture(e_arch);

                std::vector<ArchitectureKind> archs = {base.architecture};
                if (all)
                    archs = {ArchitectureKind::dpa, ArchitectureKind::phased_tdma, ArchitectureKind::split_antenna,
                             ArchitectureKind::ttd_rainbow};
                const fs::path dir = output_dir(g_emulate);
                std::vector<fs::path> files;
                std::vector<MetricsReport> reports;
                for (ArchitectureKind a : archs)
                {
                    EmulationScenario sc = base;
                    sc.architecture = a;
                    MetricsReport r = run_emulation(sc);
                    const std::string name = to_string(a);
                    files.push_back(dir / ("metrics_" + name + ".json"));
                    auto fj = open_out(files.back());
                    fj << metrics_to_json(r) << '\n';
                    files.push_back(dir / ("timeseries_" + name + ".csv"));
                    auto fc = open_out(files.back());
                    write_timeseries_csv(fc, r);
                    r.series.clear();
                    reports.push_back(std::move(r));
                }
                if (all)
                {
                    files.push_back(dir / "comparison.csv");
                    auto f = open_out(files.back());
                    f << "architecture,packet_loss_pct,latency_median_ms,latency_p99_ms,latency_worst_ms,throughput_per_user_mbps\n"
                      << std::setprecision(10);
                    for (const auto &r : reports)
                        f << r.architecture << ',' << r.aggregate.loss * 100.0 << ',' << r.aggregate.latency_median_ms << ','
                          << r.aggregate.latency_p99_ms << ',' << r.aggregate.latency_worst_ms << ','
                          << (r.users.empty() ? 0.0 : r.aggregate.throughput_bps / r.users.size() / 1e6) << '\n';
                }
                out << files_json(files).dump() << '\n';
                return 0;
            }

            if (*validate)
            {
                ArrayConfig c = g_validate.config();
                if (flip_sign)
                    c.delay_sign = DelaySign::negative;
                const std::vector<ValidationCheck> checks = run_validation(c);
                json arr = json::array();
                bool ok = true;
                for (const auto &ch : checks)
                {
                    arr.push_back({{"name", ch.name}, {"pass", ch.pass}, {"measured", ch.measured}, {"tolerance", ch.tolerance}});
                    ok = ok && ch.pass;
                }
                const json report{{"all_pass", ok}, {"checks", arr}};
                const fs::path file = output_dir(g_validate) / "validation.json";
                auto f = open_out(file);
                f << report.dump(2) << '\n';
                out << report.dump(2) << '\n';
                if (!ok)
                {
                    err << json{{"error", "validation_failed"}, {"message", "one or more checks failed"}}.dump() << '\n';
                    return 3;
                }
                return 0;
            }
        }
        catch (const Error &e)
        {
            err << json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
            return 1;
        }
        catch (const std::exception &e)
        {
            err << json{{"error", "internal_error"}, {"message", e.what()}}.dump() << '\n';
            return 1;
        }
        return 0;
    }
}
