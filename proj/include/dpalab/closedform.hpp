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

#ifndef dpalab_closedform_H
#define dpalab_closedform_H

#include "dpalab/fsda.hpp"

#include <iosfwd>
#include <vector>

namespace dpalab
{
    // Rounds half away from zero.
    double round_half_away(double x);

    // Symmetric two-beam response: beam at -theta0 on the lower half band, +theta0 on the upper.
    DelayPhaseWeights two_beam_weights(double sin_theta0, double bandwidth_hz, int num_antennas);

    // Closed-form values before phase wrapping and delay offset removal.
    struct ClosedFormSolution
    {
        std::vector<double> phases;
        std::vector<double> delays;
    };

    // Per-beam 2 pi offsets k_d for antenna n (beams in band order, k_1 = 0).
    std::vector<int> beam_offsets(const BeamPlan &sorted_plan, int antenna);

    ClosedFormSolution generalized_solution(const BeamPlan &plan, double bandwidth_hz, int num_antennas);
    DelayPhaseWeights generalized_weights(const BeamPlan &plan, double bandwidth_hz, int num_antennas);

    ClosedFormSolution corollary_solution(double sin_theta1, double sin_theta2, double alpha, double bandwidth_hz,
                                          int num_antennas);
    DelayPhaseWeights corollary_two_beam(double sin_theta1, double sin_theta2, double alpha, double bandwidth_hz,
                                         int num_antennas);

    // Step-function phase samples at f = m * df, m = -M/2 .. M/2 (M + 1 points, df = B / (M + 1)).
    struct LineFitProblem
    {
        int antenna = 0;
        double bandwidth_hz = 0.0;
        std::vector<double> samples;

        int order() const { return static_cast<int>(samples.size()) - 1; } // M
        double freq_step() const { return bandwidth_hz / samples.size(); }

        // Samples phi_d + 2 pi k_d over each beam's band; offsets default to beam_offsets().
        static LineFitProblem from_plan(const BeamPlan &plan, double bandwidth_hz, int antenna, int order,
                                        const std::vector<int> &offsets = {});
    };

    struct LineFit
    {
        double phase = 0.0; // intercept
        double delay = 0.0; // slope / (2 pi df)
        double residual = 0.0; // sum of squared errors
    };

    LineFit line_fit_oracle(const LineFitProblem &problem);

    struct RangeEntry
    {
        int beams = 0;
        int antennas = 0;
        double delay_range = 0.0;
        double ttd_range = 0.0;
    };

    struct RangeReport
    {
        std::vector<RangeEntry> entries;
        double resolution_required = 0.0;
    };

    // Delay spread of generalized_weights per plan and antenna count, next to the TTD spread (N - 1) / (2B).
    RangeReport delay_range_analysis(const std::vector<BeamPlan> &plans, double bandwidth_hz,
                                     const std::vector<int> &antenna_counts, double beam_width_sin = 0.2);

    void write_range_csv(std::ostream &out, const RangeReport &report);
}

#endif
