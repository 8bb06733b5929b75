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

#include "dpalab/baselines.hpp"

#include <cmath>

namespace dpalab
{
    void Architecture::validate(int num_antennas) const
    {
        if (splits < 1 || splits > num_antennas)
            throw Error("invalid_architecture", "splits must lie in [1, N]");
    }

    std::string to_string(ArchitectureKind kind)
    {
        switch (kind)
        {
        case ArchitectureKind::phased_tdma:
            return "tdma";
        case ArchitectureKind::split_antenna:
            return "split";
        case ArchitectureKind::ttd_rainbow:
            return "ttd";
        case ArchitectureKind::dpa:
            return "dpa";
        case ArchitectureKind::oracle:
            return "oracle";
        }
        return "unknown";
    }

    ArchitectureKind parse_architecture(const std::string &name)
    {
        if (name == "tdma" || name == "phased")
            return ArchitectureKind::phased_tdma;
        if (name == "split")
            return ArchitectureKind::split_antenna;
        if (name == "ttd")
            return ArchitectureKind::ttd_rainbow;
        if (name == "dpa")
            return ArchitectureKind::dpa;
        if (name == "oracle")
            return ArchitectureKind::oracle;
        throw Error("invalid_architecture", "unknown architecture: " + name);
    }

    DelayPhaseWeights phased_array_weights(double sin_theta0, int num_antennas)
    {
        if (!(std::abs(sin_theta0) <= 1.0))
            throw Error("out_of_range", "|sin(theta)| must not exceed 1");
        DelayPhaseWeights w;
        w.delays.assign(num_antennas, 0.0);
        w.phases.resize(num_antennas);
        for (int n = 0; n < num_antennas; ++n)
            w.phases[n] = wrap_phase(n * pi * sin_theta0);
        return w;
    }

    std::vector<int> split_sizes(int num_splits, int num_antennas)
    {
        if (num_splits < 1 || num_splits > num_antennas)
            throw Error("invalid_architecture", "number of sub-arrays must lie in [1, N]");
        std::vector<int> sizes(num_splits, num_antennas / num_splits);
        for (int s = 0; s < num_antennas % num_splits; ++s)
            ++sizes[s];
        return sizes;
    }

    DelayPhaseWeights split_array_weights(const std::vector<double> &directions, int num_antennas)
    {
        const int S = static_cast<int>(directions.size());
        if (S > num_antennas)
            throw Error("invalid_architecture", "more directions than antennas");
        if (S == 0)
            throw Error("invalid_architecture", "at least one direction is required");
        const std::vector<int> sizes = split_sizes(S, num_antennas);
        DelayPhaseWeights w;
        w.delays.assign(num_antennas, 0.0);
        w.phases.resize(num_antennas);
        int n = 0;
        for (int s = 0; s < S; ++s)
        {
            if (!(std::abs(directions[s]) <= 1.0))
                throw Error("out_of_range", "|sin(theta)| must not exceed 1");
            for (int j = 0; j < sizes[s]; ++j, ++n)
                w.phases[n] = wrap_phase(n * pi * directions[s]);
        }
        return w;
    }

    DelayPhaseWeights ttd_rainbow_weights(int num_antennas, double bandwidth_hz)
    {
        DelayPhaseWeights w;
        w.delays.resize(num_antennas);
        w.phases.assign(num_antennas, 0.0);
        for (int n = 0; n < num_antennas; ++n)
            w.delays[n] = n / bandwidth_hz;
        return w;
    }

    FrequencySpaceImage oracle_gain(const BeamPlan &plan, const ArrayConfig &config)
    {
        config.validate();
        plan.validate(config.bandwidth_hz);
        FrequencySpaceImage img = FrequencySpaceImage::zeros(config);
        const int N = config.num_antennas;
        for (int m = 0; m < config.num_freq_bins; ++m)
        {
            const double f = config.freq(m);
            const BeamSpec *owner = nullptr;
            for (const auto &b : plan.beams)
                if (f >= b.f_low_hz && f < b.f_high_hz)
                {
                    if (owner)
                        throw Error("overlapping_bands", "frequency bin assigned to two beams");
                    owner = &b;
                }
            if (!owner)
                continue;
            for (int d = 0; d < config.num_angle_bins; ++d)
            {
                const double s = config.sin_angle(d);
                cplx acc(0.0, 0.0);
                for (int n = 0; n < N; ++n)
                    acc += std::polar(1.0, n * pi * (owner->sin_theta - s));
                img.values(m, d) = acc;
            }
        }
        return img;
    }
}
