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

#ifndef dpalab_fsda_H
#define dpalab_fsda_H

#include "dpalab/array_core.hpp"

#include <optional>
#include <vector>

namespace dpalab
{
    // One directional beam occupying a contiguous frequency band.
    struct BeamSpec
    {
        double sin_theta = 0.0;
        double f_low_hz = 0.0;
        double f_high_hz = 0.0;
        std::optional<double> width; // open stripe width in sin(theta); default 2 / N
    };

    struct BeamPlan
    {
        std::vector<BeamSpec> beams;

        // alpha_d = (f_high - f_low) / B, in plan order.
        std::vector<double> fractions(double bandwidth_hz) const;
        bool exhaustive(double bandwidth_hz, double tol = 1e-9) const;

        // Bounds, disjointness and |sin(theta)| <= 1.
        void validate(double bandwidth_hz) const;

        // Consecutive bands from -B/2 upward, one per direction.
        static BeamPlan from_fractions(const std::vector<double> &sin_thetas, const std::vector<double> &fractions,
                                       double bandwidth_hz);
        static BeamPlan equal_split(const std::vector<double> &sin_thetas, double bandwidth_hz);

        // Beams sorted by band lower edge.
        BeamPlan sorted_by_band() const;
    };

    struct QuantizerSpec
    {
        int phase_bits = 6;
        double delay_step = 0.1e-9;
        double delay_range = 6.4e-9;

        void validate() const;
        double phase_step() const;

        // delay_step = delay_range / 2^delay_bits.
        static QuantizerSpec from_bits(int phase_bits, int delay_bits, double delay_range = 6.4e-9);
    };

    // 1 inside each beam's band x stripe, 0 elsewhere.
    FrequencySpaceImage build_desired_image(const BeamPlan &plan, const ArrayConfig &config);

    // W = U^+ G V^+ through FFTs: an inverse DFT over angle, then a zero-padded DFT over frequency.
    TimeAntennaWeights fsda_transform(const FrequencySpaceImage &desired, const ArrayConfig &config);

    // Same operator with explicit matrices; reference path for the FFT route.
    TimeAntennaWeights fsda_transform_dense(const FrequencySpaceImage &desired, const ArrayConfig &config);

    // Per column: strongest tap (smallest index on ties) -> delay k Ts, phase arg wrapped to [0, 2 pi).
    DelayPhaseWeights extract_delay_phase(const TimeAntennaWeights &weights, const ArrayConfig &config);

    // Maps circular delays at or beyond half the window to negative values, then removes the minimum.
    DelayPhaseWeights fold_delays(const DelayPhaseWeights &weights, double time_window);

    DelayPhaseWeights quantize_weights(const DelayPhaseWeights &weights, const QuantizerSpec &q);

    // desired image -> transform -> extraction -> fold -> optional quantization.
    DelayPhaseWeights synthesize(const BeamPlan &plan, const ArrayConfig &config,
                                 const std::optional<QuantizerSpec> &q = QuantizerSpec{});
}

#endif
