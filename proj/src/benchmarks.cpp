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

#include "dpalab/benchmarks.hpp"

#include "dpalab/baselines.hpp"
#include "dpalab/closedform.hpp"
#include "dpalab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace dpalab
{
    namespace
    {
        double deg2sin(double deg) { return std::sin(deg * pi / 180.0); }

        double peak_gain_db(const DelayPhaseWeights &w, const BeamPlan &plan, const ArrayConfig &config)
        {
            std::vector<double> per_beam;
            for (const auto &beam : plan.beams)
            {
                const std::vector<cplx> g = gain_along(w, beam.sin_theta, config);
                double peak = 0.0;
                for (int m = 0; m < config.num_freq_bins; ++m)
                {
                    const double f = config.freq(m);
                    if (f >= beam.f_low_hz && f < beam.f_high_hz)
                        peak = std::max(peak, std::abs(g[m]));
                }
                per_beam.push_back(20.0 * std::log10(std::max(peak, 1e-15) / config.num_antennas));
            }
            return mean(per_beam);
        }

        double split_mean_snr_db(const BeamPlan &plan, const ArrayConfig &config, double ref)
        {
            std::vector<double> dirs;
            for (const auto &b : plan.beams)
                dirs.push_back(b.sin_theta);
            return mean(beam_snr_db(split_array_weights(dirs, config.num_antennas), plan, config, ref));
        }

        double oracle_mean_snr_db(const BeamPlan &plan, const ArrayConfig &config, double ref)
        {
            return mean(beam_snr_db(oracle_gain(plan, config), plan, config, ref));
        }
    }

    std::size_t BenchmarkTable::column(const std::string &name) const
    {
        auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end())
            throw Error("missing_column", "no column named " + name);
        return static_cast<std::size_t>(it - columns.begin());
    }

    QuantizerSpec wide_range_quantizer(const ArrayConfig &config)
    {
        return QuantizerSpec{6, 0.1e-9, config.time_window()};
    }

    std::vector<double> sector_directions(int count, double fov_deg)
    {
        std::vector<double> out;
        for (int i = 0; i < count; ++i)
            out.push_back(deg2sin(-fov_deg / 2.0 + fov_deg * (i + 0.5) / count));
        return out;
    }

    double dpa_mean_snr_db(const BeamPlan &plan, const ArrayConfig &config, double reference_snr_db)
    {
        const DelayPhaseWeights w = synthesize(plan, config, wide_range_quantizer(config));
        return mean(beam_snr_db(w, plan, config, reference_snr_db));
    }

    BenchmarkTable benchmark_angle_separation(const ArrayConfig &config, double ref)
    {
        BenchmarkTable t{{"separation_deg", "dpa_snr_db", "split_snr_db", "oracle_snr_db"}, {}};
        for (int sep = 0; sep <= 60; sep += 5)
        {
            const BeamPlan plan = BeamPlan::equal_split({deg2sin(-sep / 2.0), deg2sin(sep / 2.0)}, config.bandwidth_hz);
            t.rows.push_back({static_cast<double>(sep), dpa_mean_snr_db(plan, config, ref),
                              split_mean_snr_db(plan, config, ref), oracle_mean_snr_db(plan, config, ref)});
        }
        return t;
    }

    BenchmarkTable benchmark_subcarrier_allocation(const ArrayConfig &config, double ref)
    {
        BenchmarkTable t{{"groups", "fraction", "group1_snr_db", "others_mean_snr_db"}, {}};
        auto run = [&](const std::vector<double> &dirs, double p) {
            std::vector<double> fr(dirs.size(), (1.0 - p) / (dirs.size() - 1));
            fr[0] = p;
            const BeamPlan plan = BeamPlan::from_fractions(dirs, fr, config.bandwidth_hz);
            const DelayPhaseWeights w = synthesize(plan, config, wide_range_quantizer(config));
            const std::vector<double> snr = beam_snr_db(w, plan, config, ref);
            const std::vector<double> others(snr.begin() + 1, snr.end());
            t.rows.push_back({static_cast<double>(dirs.size()), p, snr[0], mean(others)});
        };
        const std::vector<double> two = {deg2sin(-15.0), deg2sin(15.0)};
        for (int pct = 5; pct <= 50; pct += 5)
            run(two, pct / 100.0);
        const std::vector<double> sixteen = sector_directions(16);
        for (int pct = 2; pct <= 20; pct += 2)
            run(sixteen, pct / 100.0);
        return t;
    }

    BenchmarkTable benchmark_quantization(const ArrayConfig &config)
    {
        BenchmarkTable t{{"bits", "peak_gain_db", "joint_loss_db", "phase_only_loss_db", "delay_only_loss_db", "mean_gain_loss_db"}, {}};
        const BeamPlan plan = BeamPlan::equal_split({deg2sin(-20.0), deg2sin(20.0)}, config.bandwidth_hz);
        const DelayPhaseWeights raw = synthesize(plan, config, std::nullopt);
        const double ref_peak = peak_gain_db(raw, plan, config);
        const double ref_mean = mean(beam_snr_db(raw, plan, config, 0.0));
        const double range = 6.4e-9;
        for (int bits = 1; bits <= 6; ++bits)
        {
            const DelayPhaseWeights joint = quantize_weights(raw, QuantizerSpec::from_bits(bits, bits, range));
            const DelayPhaseWeights phase_only = quantize_weights(raw, QuantizerSpec{bits, 1e-15, range});
            const DelayPhaseWeights delay_only = quantize_weights(raw, QuantizerSpec::from_bits(30, bits, range));
            const double pk = peak_gain_db(joint, plan, config);
            t.rows.push_back({static_cast<double>(bits), pk, ref_peak - pk, ref_peak - peak_gain_db(phase_only, plan, config),
                              ref_peak - peak_gain_db(delay_only, plan, config),
                              ref_mean - mean(beam_snr_db(joint, plan, config, 0.0))});
        }
        return t;
    }

    BenchmarkTable benchmark_antennas(const ArrayConfig &config, double ref)
    {
        BenchmarkTable t{{"antennas", "dpa_rel_gain_db", "split_rel_gain_db", "oracle_rel_gain_db"}, {}};
        const std::vector<double> dirs = sector_directions(4);
        for (int N : {4, 8, 16, 32, 64})
        {
            ArrayConfig c = config;
            c.num_antennas = N;
            c.num_angle_bins = std::max(config.num_angle_bins, N);
            const BeamPlan plan = BeamPlan::equal_split(dirs, c.bandwidth_hz);
            t.rows.push_back({static_cast<double>(N), dpa_mean_snr_db(plan, c, ref) - ref,
                              split_mean_snr_db(plan, c, ref) - ref, oracle_mean_snr_db(plan, c, ref) - ref});
        }
        return t;
    }

    BenchmarkTable benchmark_user_directions(const ArrayConfig &config, double ref)
    {
        BenchmarkTable t{{"users", "dpa_snr_db", "split_snr_db", "oracle_snr_db", "dpa_minus_split_db", "oracle_minus_dpa_db"}, {}};
        for (int S = 1; S <= 8; ++S)
        {
            const BeamPlan plan = BeamPlan::equal_split(sector_directions(S), config.bandwidth_hz);
            const double dpa = dpa_mean_snr_db(plan, config, ref);
            const double split = split_mean_snr_db(plan, config, ref);
            const double oracle = oracle_mean_snr_db(plan, config, ref);
            t.rows.push_back({static_cast<double>(S), dpa, split, oracle, dpa - split, oracle - dpa});
        }
        return t;
    }

    BenchmarkTable benchmark_delay_range(const ArrayConfig &config)
    {
        std::vector<BeamPlan> plans;
        for (int S = 1; S <= 8; ++S)
            plans.push_back(BeamPlan::equal_split(sector_directions(S), config.bandwidth_hz));
        const RangeReport rep = delay_range_analysis(plans, config.bandwidth_hz, {8, 16, 32, 64});
        BenchmarkTable t{{"beams", "antennas", "delay_range_ns", "ttd_range_ns"}, {}};
        for (const auto &e : rep.entries)
            t.rows.push_back({static_cast<double>(e.beams), static_cast<double>(e.antennas), e.delay_range * 1e9, e.ttd_range * 1e9});
        return t;
    }

    BenchmarkTable run_benchmark(const std::string &kind, const ArrayConfig &config)
    {
        config.validate();
        if (kind == "angle_sep")
            return benchmark_angle_separation(config);
        if (kind == "subcarrier_alloc")
            return benchmark_subcarrier_allocation(config);
        if (kind == "quantization")
            return benchmark_quantization(config);
        if (kind == "antennas")
            return benchmark_antennas(config);
        if (kind == "user_dirs")
            return benchmark_user_directions(config);
        if (kind == "delay_range")
            return benchmark_delay_range(config);
        throw Error("invalid_benchmark", "unknown benchmark kind: " + kind);
    }

    void write_table_csv(std::ostream &out, const BenchmarkTable &table)
    {
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            out << (i ? "," : "") << table.columns[i];
        out << '\n' << std::setprecision(10);
        for (const auto &row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << row[i];
            out << '\n';
        }
    }
}
