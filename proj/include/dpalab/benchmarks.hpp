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

#ifndef dpalab_benchmarks_H
#define dpalab_benchmarks_H

#include "dpalab/fsda.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dpalab
{
    struct BenchmarkTable
    {
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;

        // Column lookup by name; throws if absent.
        std::size_t column(const std::string &name) const;
    };

    // Phase quantizer with 6 bits and 0.1 ns delay steps over the whole time window.
    QuantizerSpec wide_range_quantizer(const ArrayConfig &config);

    // Centers of `count` equal angular sectors spanning [-fov/2, fov/2], as sin(theta), ascending.
    std::vector<double> sector_directions(int count, double fov_deg = 120.0);

    // Mean per-beam SNR (dB) of the FSDA-synthesized DPA response.
    double dpa_mean_snr_db(const BeamPlan &plan, const ArrayConfig &config, double reference_snr_db = 25.0);

    // Two users at +/- sep/2: DPA, split and oracle mean SNR.
    BenchmarkTable benchmark_angle_separation(const ArrayConfig &config, double reference_snr_db = 25.0);

    // Group 1 (lowest band) SNR as its share of subcarriers grows; 2 groups 30 deg apart and 16 sector groups.
    BenchmarkTable benchmark_subcarrier_allocation(const ArrayConfig &config, double reference_snr_db = 25.0);

    // Gain loss versus quantizer bits on a symmetric +/- 20 deg two-beam plan.
    BenchmarkTable benchmark_quantization(const ArrayConfig &config);

    // Gain relative to N for 4 sector directions, N in {4, 8, 16, 32, 64}.
    BenchmarkTable benchmark_antennas(const ArrayConfig &config, double reference_snr_db = 25.0);

    // SNR versus number of sector directions 1..8.
    BenchmarkTable benchmark_user_directions(const ArrayConfig &config, double reference_snr_db = 25.0);

    // Closed-form delay range for 1..8 sector beams, N in {8, 16, 32, 64}.
    BenchmarkTable benchmark_delay_range(const ArrayConfig &config);

    // kind: angle_sep, subcarrier_alloc, quantization, antennas, user_dirs, delay_range.
    BenchmarkTable run_benchmark(const std::string &kind, const ArrayConfig &config);

    void write_table_csv(std::ostream &out, const BenchmarkTable &table);
}

#endif
