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

#ifndef dpalab_baselines_H
#define dpalab_baselines_H

#include "dpalab/fsda.hpp"

#include <string>
#include <vector>

namespace dpalab
{
    enum class ArchitectureKind
    {
        phased_tdma,
        split_antenna,
        ttd_rainbow,
        dpa,
        oracle
    };

    struct Architecture
    {
        ArchitectureKind kind = ArchitectureKind::dpa;
        int splits = 1;
        BeamPlan plan;

        void validate(int num_antennas) const;
    };

    // "tdma", "split", "ttd", "dpa", "oracle"
    std::string to_string(ArchitectureKind kind);
    ArchitectureKind parse_architecture(const std::string &name);

    // Phi_n = n pi sin(theta0) mod 2 pi, tau_n = 0.
    DelayPhaseWeights phased_array_weights(double sin_theta0, int num_antennas);

    // Contiguous sub-arrays, larger ones first; each steered with the absolute-index progression.
    DelayPhaseWeights split_array_weights(const std::vector<double> &directions, int num_antennas);

    // Sub-array sizes used by split_array_weights.
    std::vector<int> split_sizes(int num_splits, int num_antennas);

    // tau_n = n / B, Phi_n = 0.
    DelayPhaseWeights ttd_rainbow_weights(int num_antennas, double bandwidth_hz);

    // Ideal per-bin beamformer: a full-array beam toward the owning beam's direction, zero for unowned bins.
    FrequencySpaceImage oracle_gain(const BeamPlan &plan, const ArrayConfig &config);
}

#endif
