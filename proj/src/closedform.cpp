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

#include "dpalab/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace dpalab
{
    double round_half_away(double x)
    {
        return x < 0.0 ? -std::floor(-x + 0.5) : std::floor(x + 0.5);
    }

    DelayPhaseWeights two_beam_weights(double sin_theta0, double bandwidth_hz, int num_antennas)
    {
        if (!(sin_theta0 >= 0.0 && sin_theta0 <= 1.0))
            throw Error("out_of_range", "two-beam direction must satisfy 0 <= sin(theta0) <= 1");
        if (num_antennas < 1 || !(bandwidth_hz > 0.0))
            throw Error("invalid_config", "antenna count and bandwidth must be positive");
        DelayPhaseWeights w;
        w.delays.resize(num_antennas);
        w.phases.resize(num_antennas);
        for (int n = 0; n < num_antennas; ++n)
        {
            const double ns = n * sin_theta0;
            // delay in units of 1/B, kept in [0, 1.5)
            double t = std::fmod(1.5 * ns + 0.75, 1.5);
            if (t >= 1.5)
                t = 0.0;
            w.delays[n] = t / bandwidth_hz;
            const double r = std::fmod(round_half_away(ns), 2.0);
            w.phases[n] = (r == 0.0) ? 0.0 : pi;
        }
        return w;
    }

    std::vector<int> beam_offsets(const BeamPlan &sorted_plan, int antenna)
    {
        std::vector<int> k(sorted_plan.beams.size(), 0);
        for (std::size_t d = 1; d < k.size(); ++d)
        {
            const double step = antenna * (sorted_plan.beams[d - 1].sin_theta - sorted_plan.beams[d].sin_theta) / 2.0;
            k[d] = k[d - 1] + static_cast<int>(round_half_away(step));
        }
        return k;
    }

    ClosedFormSolution generalized_solution(const BeamPlan &plan, double bandwidth_hz, int num_antennas)
    {
        plan.validate(bandwidth_hz);
        if (plan.beams.empty() || !plan.exhaustive(bandwidth_hz))
            throw Error("invalid_plan", "beam fractions must sum to 1");
        const BeamPlan sorted = plan.sorted_by_band();
        const std::vector<double> alpha = sorted.fractions(bandwidth_hz);

        ClosedFormSolution sol;
        sol.phases.assign(num_antennas, 0.0);
        sol.delays.assign(num_antennas, 0.0);
        for (int n = 0; n < num_antennas; ++n)
        {
            const std::vector<int> k = beam_offsets(sorted, n);
            double cum = 0.0;
            for (std::size_t d = 0; d < alpha.size(); ++d)
            {
                cum += alpha[d];
                const double target = n * pi * sorted.beams[d].sin_theta + two_pi * k[d];
                sol.phases[n] += alpha[d] * target;
                sol.delays[n] += 3.0 / (pi * bandwidth_hz) * target * alpha[d] * (2.0 * cum - alpha[d] - 1.0);
            }
        }
        return sol;
    }

    namespace
    {
        DelayPhaseWeights finalize(const ClosedFormSolution &sol)
        {
            DelayPhaseWeights w;
            w.phases.resize(sol.phases.size());
            for (std::size_t n = 0; n < sol.phases.size(); ++n)
                w.phases[n] = wrap_phase(sol.phases[n]);
            w.delays = sol.delays;
            if (!w.delays.empty())
            {
                const double lo = *std::min_element(w.delays.begin(), w.delays.end());
                for (double &t : w.delays)
                    t -= lo;
            }
            return w;
        }
    }

    DelayPhaseWeights generalized_weights(const BeamPlan &plan, double bandwidth_hz, int num_antennas)
    {
        return finalize(generalized_solution(plan, bandwidth_hz, num_antennas));
    }

    ClosedFormSolution corollary_solution(double sin_theta1, double sin_theta2, double alpha, double bandwidth_hz,
                                          int num_antennas)
    {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw Error("out_of_range", "fraction must lie strictly between 0 and 1");
        ClosedFormSolution sol;
        sol.phases.resize(num_antennas);
        sol.delays.resize(num_antennas);
        for (int n = 0; n < num_antennas; ++n)
        {
            const double phi1 = n * pi * sin_theta1, phi2 = n * pi * sin_theta2;
            const double k2 = round_half_away(n * (sin_theta1 - sin_theta2) / 2.0);
            sol.phases[n] = alpha * phi1 + (1.0 - alpha) * (phi2 + two_pi * k2);
            sol.delays[n] = 3.0 / (pi * bandwidth_hz) * (-phi1 + phi2 + two_pi * k2) * alpha * (1.0 - alpha);
        }
        return sol;
    }

    DelayPhaseWeights corollary_two_beam(double sin_theta1, double sin_theta2, double alpha, double bandwidth_hz,
                                         int num_antennas)
    {
        return finalize(corollary_solution(sin_theta1, sin_theta2, alpha, bandwidth_hz, num_antennas));
    }

    LineFitProblem LineFitProblem::from_plan(const BeamPlan &plan, double bandwidth_hz, int antenna, int order,
                                             const std::vector<int> &offsets)
    {
        if (order < 2 || order % 2 != 0)
            throw Error("invalid_problem", "line-fit order M must be even and at least 2");
        plan.validate(bandwidth_hz);
        const BeamPlan sorted = plan.sorted_by_band();
        const std::vector<int> k = offsets.empty() ? beam_offsets(sorted, antenna) : offsets;
        if (k.size() != sorted.beams.size())
            throw Error("shape_mismatch", "one offset per beam is required");

        LineFitProblem p;
        p.antenna = antenna;
        p.bandwidth_hz = bandwidth_hz;
        p.samples.resize(order + 1);
        const double df = bandwidth_hz / (order + 1);
        for (int i = 0; i <= order; ++i)
        {
            const double f = (i - order / 2) * df;
            std::size_t d = 0;
            while (d + 1 < sorted.beams.size() && f >= sorted.beams[d].f_high_hz)
                ++d;
            p.samples[i] = antenna * pi * sorted.beams[d].sin_theta + two_pi * k[d];
        }
        return p;
    }

    LineFit line_fit_oracle(const LineFitProblem &problem)
    {
        const int M = problem.order();
        if (M < 2)
            throw Error("degenerate_problem", "line fit needs at least three frequency samples");
        if (M % 2 != 0)
            throw Error("invalid_problem", "line-fit order M must be even");
        // A = [1, m] over m = -M/2..M/2, so A^T A = diag(M + 1, M (M + 1) (M + 2) / 12).
        double sum_b = 0.0, sum_mb = 0.0;
        for (int i = 0; i <= M; ++i)
        {
            const double m = i - M / 2;
            sum_b += problem.samples[i];
            sum_mb += m * problem.samples[i];
        }
        const double Md = M;
        const double x0 = sum_b / (Md + 1.0);
        const double x1 = sum_mb * 12.0 / (Md * (Md + 1.0) * (Md + 2.0));

        LineFit fit;
        fit.phase = x0;
        fit.delay = x1 / (two_pi * problem.freq_step());
        for (int i = 0; i <= M; ++i)
        {
            const double e = problem.samples[i] - (x0 + x1 * (i - M / 2));
            fit.residual += e * e;
        }
        return fit;
    }

    RangeReport delay_range_analysis(const std::vector<BeamPlan> &plans, double bandwidth_hz,
                                     const std::vector<int> &antenna_counts, double beam_width_sin)
    {
        RangeReport report;
        report.resolution_required = beam_width_sin / (2.0 * bandwidth_hz);
        for (const auto &plan : plans)
            for (int N : antenna_counts)
            {
                const DelayPhaseWeights w = generalized_weights(plan, bandwidth_hz, N);
                const auto [lo, hi] = std::minmax_element(w.delays.begin(), w.delays.end());
                RangeEntry e;
                e.beams = static_cast<int>(plan.beams.size());
                e.antennas = N;
                e.delay_range = *hi - *lo;
                e.ttd_range = (N - 1) / (2.0 * bandwidth_hz);
                report.entries.push_back(e);
            }
        return report;
    }

    void write_range_csv(std::ostream &out, const RangeReport &report)
    {
        out << "beams,antennas,delay_range_ns,ttd_range_ns\n" << std::setprecision(10);
        for (const auto &e : report.entries)
            out << e.beams << ',' << e.antennas << ',' << e.delay_range * 1e9 << ',' << e.ttd_range * 1e9 << '\n';
    }
}
