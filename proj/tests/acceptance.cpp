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

// Acceptance report: one PASS/FAIL line per criterion.
//   acceptance                 exit status is the number of failing criteria
//   acceptance --report-only   always exit 0 (used by ctest)
//   acceptance --out FILE      also write the report to FILE

#include "dpalab/baselines.hpp"
#include "dpalab/benchmarks.hpp"
#include "dpalab/closedform.hpp"
#include "dpalab/metrics.hpp"
#include "dpalab/netsim.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dpalab;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    double deg2sin(double d) { return std::sin(d * pi / 180.0); }

    double rel(const std::vector<double> &a, const std::vector<double> &b)
    {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            num += (a[i] - b[i]) * (a[i] - b[i]);
            den += b[i] * b[i];
        }
        return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    }

    std::string fmt(double v, int prec = 4)
    {
        std::ostringstream ss;
        ss << std::setprecision(prec) << v;
        return ss.str();
    }

    // Two-beam closed form: delay bound and pointing over 50 directions.
    Outcome two_beam_closed_form()
    {
        ArrayConfig c;
        const double B = c.bandwidth_hz, bound = 1.5 / B;
        double max_delay = 0.0;
        bool in_range = true;
        PointingStats pooled;
        for (int k = 1; k <= 50; ++k)
        {
            const double s0 = k / 50.0;
            const DelayPhaseWeights w = two_beam_weights(s0, B, c.num_antennas);
            for (double t : w.delays)
            {
                in_range = in_range && t >= 0.0 && t < bound;
                max_delay = std::max(max_delay, t);
            }
            const BeamPlan plan = BeamPlan::equal_split({-s0, s0}, B);
            const PointingStats p = pointing_accuracy(weights_pattern(w, c), plan, c, 1.0);
            pooled.in_band_bins += p.in_band_bins;
            pooled.correct_bins += p.correct_bins;
        }
        return {in_range && pooled.fraction() >= 0.95,
                "max delay " + fmt(max_delay * 1e9) + " ns (bound < 3.75 ns); pointed " + fmt(pooled.fraction()) +
                    " of in-band bins (need >= 0.95)"};
    }

    // Generalized solution with two symmetric half-band beams vs the two-beam form.
    Outcome generalized_identity()
    {
        const double B = 400e6;
        const int N = 16;
        double worst = 0.0;
        for (int k = 1; k <= 50; ++k)
        {
            const double s0 = k / 50.0;
            const ClosedFormSolution sol = generalized_solution(BeamPlan::equal_split({-s0, s0}, B), B, N);
            const DelayPhaseWeights tb = two_beam_weights(s0, B, N);
            std::vector<double> shifted, phases;
            for (int n = 0; n < N; ++n)
            {
                shifted.push_back(sol.delays[n] + 0.75 / B);
                phases.push_back(wrap_phase(sol.phases[n]));
            }
            // map phases near 2*pi onto 0 before comparing
            for (int n = 0; n < N; ++n)
                if (std::abs(phases[n] - two_pi) < 1e-9)
                    phases[n] = 0.0;
            worst = std::max({worst, rel(shifted, tb.delays), rel(phases, tb.phases)});
        }
        return {worst <= 1e-12, "max relative difference " + fmt(worst) + " (need <= 1e-12)"};
    }

    // Least-squares line fit vs closed form as the sample count grows.
    Outcome line_fit_convergence()
    {
        const double B = 400e6;
        struct Case
        {
            std::string name;
            BeamPlan plan;
            int antennas;
        };
        const std::vector<Case> cases = {
            {"two-beam +/-20 deg", BeamPlan::equal_split({deg2sin(-20.0), deg2sin(20.0)}, B), 16},
            {"three-beam", BeamPlan::from_fractions({deg2sin(-30.0), deg2sin(10.0), deg2sin(40.0)}, {0.3, 0.3, 0.4}, B), 32},
        };
        bool ok = true;
        std::string detail;
        for (const auto &cs : cases)
        {
            const ClosedFormSolution sol = generalized_solution(cs.plan, B, cs.antennas);
            double prev = INFINITY, last = 0.0;
            bool monotone = true;
            std::string series;
            for (int M : {256, 1024, 4096})
            {
                std::vector<double> ph, dl;
                for (int n = 0; n < cs.antennas; ++n)
                {
                    const LineFit f = line_fit_oracle(LineFitProblem::from_plan(cs.plan, B, n, M));
                    ph.push_back(f.phase);
                    dl.push_back(f.delay);
                }
                last = std::max(rel(ph, sol.phases), rel(dl, sol.delays));
                monotone = monotone && last < prev;
                prev = last;
                series += (series.empty() ? "" : ", ") + fmt(last, 3);
            }
            ok = ok && monotone && last < 1e-3;
            detail += (detail.empty() ? "" : "; ") + cs.name + " errors [" + series + "]";
        }
        return {ok, detail + " (need decreasing and < 1e-3 at M=4096)"};
    }

    // FSDA vs closed-form patterns for three- and five-beam plans at N = 32.
    Outcome fsda_vs_closed_form()
    {
        ArrayConfig c;
        c.num_antennas = 32;
        const double B = c.bandwidth_hz;
        const std::vector<std::pair<std::string, BeamPlan>> plans = {
            {"3-beam", BeamPlan::from_fractions({deg2sin(-30.0), deg2sin(10.0), deg2sin(40.0)}, {0.3, 0.3, 0.4}, B)},
            {"5-beam", BeamPlan::from_fractions({deg2sin(-50.0), deg2sin(-10.0), deg2sin(15.0), deg2sin(30.0), deg2sin(55.0)},
                                                {0.15, 0.25, 0.2, 0.25, 0.15}, B)},
        };
        bool ok = true;
        std::string detail;
        for (const auto &[name, plan] : plans)
        {
            const FrequencySpaceImage desired = build_desired_image(plan, c);
            const FrequencySpaceImage fsda = weights_pattern(synthesize(plan, c, wide_range_quantizer(c)), c);
            const FrequencySpaceImage closed = weights_pattern(generalized_weights(plan, B, c.num_antennas), c);
            const double exact = argmax_agreement(fsda, closed, plan, c, 0);
            const double near = argmax_agreement(fsda, closed, plan, c, 1);
            const double r_fsda = in_out_ratio_db(fsda, desired), r_closed = in_out_ratio_db(closed, desired);
            ok = ok && exact >= 0.9 && r_fsda >= 6.0 && r_closed >= 6.0;
            detail += (detail.empty() ? "" : "; ") + name + " argmax match " + fmt(exact, 3) + " (within one bin " +
                      fmt(near, 3) + "), in/out fsda " + fmt(r_fsda, 3) + " dB closed " + fmt(r_closed, 3) + " dB";
        }
        return {ok, detail + " (need match >= 0.9, in/out >= 6 dB)"};
    }

    // Peak-gain loss of joint phase/delay quantization on a 16-antenna two-beam case.
    Outcome quantization()
    {
        ArrayConfig c;
        const BenchmarkTable t = benchmark_quantization(c);
        const std::size_t bits_col = t.column("bits"), loss_col = t.column("joint_loss_db");
        bool ok = true;
        double prev = INFINITY;
        std::string series;
        for (const auto &row : t.rows)
        {
            const double loss = row[loss_col];
            if (row[bits_col] >= 3)
                ok = ok && loss < 1.0;
            ok = ok && loss <= prev;
            prev = loss;
            series += (series.empty() ? "" : ", ") + fmt(loss, 3);
        }
        return {ok, "loss dB for 1..6 bits [" + series + "] (need non-increasing, < 1 dB from 3 bits)"};
    }

    // Mean SNR of DPA vs split array and Oracle over evenly spaced user directions.
    Outcome dpa_vs_split()
    {
        ArrayConfig c;
        const BenchmarkTable t = benchmark_user_directions(c, 25.0);
        const std::size_t users = t.column("users"), gap = t.column("dpa_minus_split_db"), loss = t.column("oracle_minus_dpa_db");
        double g4 = NAN, g8 = NAN, l8 = NAN;
        for (const auto &row : t.rows)
        {
            if (row[users] == 4)
                g4 = row[gap];
            if (row[users] == 8)
            {
                g8 = row[gap];
                l8 = row[loss];
            }
        }
        return {g4 >= 3.0 && g8 >= 6.0 && l8 <= 2.5, "DPA - split: 4 dirs " + fmt(g4, 3) + " dB (>= 3), 8 dirs " + fmt(g8, 3) +
                                                        " dB (>= 6); Oracle - DPA at 8 dirs " + fmt(l8, 3) + " dB (<= 2.5)"};
    }

    // Group-1 SNR vs its bandwidth share.
    Outcome subcarrier_allocation()
    {
        ArrayConfig c;
        const BenchmarkTable t = benchmark_subcarrier_allocation(c, 25.0);
        const std::size_t groups = t.column("groups"), frac = t.column("fraction"), snr = t.column("group1_snr_db");
        double worst2 = 0.0, worst16 = 0.0;
        for (const auto &row : t.rows)
        {
            const double dev = std::abs(row[snr] - 25.0);
            if (row[groups] == 2 && row[frac] >= 0.2 - 1e-12)
                worst2 = std::max(worst2, dev);
            if (row[groups] == 16 && row[frac] >= 0.04 - 1e-12)
                worst16 = std::max(worst16, dev);
        }
        return {worst2 <= 1.0 && worst16 <= 1.0, "max deviation from 25 dB: 2 groups at >= 20% " + fmt(worst2, 3) +
                                                     " dB, 16 groups at >= 4% " + fmt(worst16, 3) + " dB (need <= 1)"};
    }

    // Mean |G|^2 over the angle grid equals N for random unit-magnitude weights.
    Outcome power_conservation()
    {
        ArrayConfig c;
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial)
        {
            DelayPhaseWeights w;
            for (int n = 0; n < c.num_antennas; ++n)
            {
                w.delays.push_back(u(rng) * 20e-9);
                w.phases.push_back(u(rng) * two_pi);
            }
            const FrequencySpaceImage img = weights_pattern(w, c);
            for (int m = 0; m < c.num_freq_bins; ++m)
            {
                const double p = img.values.row(m).squaredNorm() / c.num_angle_bins;
                worst = std::max(worst, std::abs(p - c.num_antennas) / c.num_antennas);
            }
        }
        return {worst <= 1e-6, "max relative error " + fmt(worst) + " (need <= 1e-6)"};
    }

    // Ten-user emulation orderings.
    Outcome emulation()
    {
        const auto start = std::chrono::steady_clock::now();
        std::vector<MetricsReport> r;
        for (auto a : {ArchitectureKind::dpa, ArchitectureKind::phased_tdma, ArchitectureKind::split_antenna,
                       ArchitectureKind::ttd_rainbow})
            r.push_back(run_emulation(EmulationScenario::table1(a, 1)));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto &dpa = r[0].aggregate, &tdma = r[1].aggregate, &split = r[2].aggregate, &ttd = r[3].aggregate;
        const bool zero = dpa.generated > 0 && dpa.dropped == 0;
        const bool latency = dpa.latency_worst_ms < tdma.latency_worst_ms && dpa.latency_worst_ms < split.latency_worst_ms &&
                             dpa.latency_worst_ms < ttd.latency_worst_ms;
        const bool order = ttd.loss > split.loss && split.loss > tdma.loss && tdma.loss > dpa.loss;
        std::string detail = "loss % dpa " + fmt(100 * dpa.loss, 3) + ", tdma " + fmt(100 * tdma.loss, 3) + ", split " +
                             fmt(100 * split.loss, 3) + ", ttd " + fmt(100 * ttd.loss, 3) + "; worst latency ms dpa " +
                             fmt(dpa.latency_worst_ms, 3) + ", tdma " + fmt(tdma.latency_worst_ms, 3) + ", split " +
                             fmt(split.latency_worst_ms, 3) + ", ttd " + fmt(ttd.latency_worst_ms, 3) + "; " + fmt(secs, 3) +
                             " s (need dpa loss 0, dpa worst latency strictly lowest, ttd > split > tdma > dpa, < 60 s)";
        return {zero && latency && order && secs < 60.0, detail};
    }

    // Rainbow pointing locus against a brute-force argmax.
    Outcome ttd_locus()
    {
        ArrayConfig c;
        const FrequencySpaceImage img = weights_pattern(ttd_rainbow_weights(c.num_antennas, c.bandwidth_hz), c);
        int ok = 0;
        double worst = 0.0;
        for (int m = 0; m < c.num_freq_bins; ++m)
        {
            int best = 0;
            for (int d = 1; d < c.num_angle_bins; ++d)
                if (std::abs(img.values(m, d)) > std::abs(img.values(m, best)))
                    best = d;
            const double err = sin_distance(c.sin_angle(best), 2.0 * c.freq(m) / c.bandwidth_hz);
            worst = std::max(worst, err);
            if (err <= c.angle_step() + 1e-12)
                ++ok;
        }
        return {ok == c.num_freq_bins, fmt(ok) + "/" + fmt(c.num_freq_bins) + " bins within one angle bin, worst " +
                                           fmt(worst / c.angle_step(), 3) + " bins"};
    }
}

int main(int argc, char **argv)
{
    bool report_only = false;
    std::string out_path;
    for (int i = 1; i < argc; ++i)
    {
        if (std::strcmp(argv[i], "--report-only") == 0)
            report_only = true;
        else if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc)
            out_path = argv[++i];
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"two-beam closed form", two_beam_closed_form},
        {"generalized vs two-beam identity", generalized_identity},
        {"line-fit convergence", line_fit_convergence},
        {"fsda vs closed-form patterns", fsda_vs_closed_form},
        {"quantization loss", quantization},
        {"dpa vs split-antenna snr", dpa_vs_split},
        {"subcarrier-allocation convergence", subcarrier_allocation},
        {"power conservation", power_conservation},
        {"emulation orderings", emulation},
        {"ttd pointing locus", ttd_locus},
    };

    std::ostringstream report;
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        const std::string line = "criterion " + std::to_string(i + 1) + ": " + (o.pass ? "PASS" : "FAIL") + "  " +
                                 criteria[i].first + ": " + o.detail + "\n";
        report << line;
        std::cout << line << std::flush;
    }
    const std::string summary = std::to_string(criteria.size() - failures) + "/" + std::to_string(criteria.size()) + " criteria pass\n";
    report << summary;
    std::cout << summary;
    if (!out_path.empty())
    {
        std::ofstream f(out_path);
        f << report.str();
    }
    return report_only ? 0 : failures;
}
