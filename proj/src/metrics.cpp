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

#include "dpalab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dpalab
{
    int argmax_angle(const FrequencySpaceImage &image, int m)
    {
        int best = 0;
        double best_mag = -1.0;
        for (Eigen::Index d = 0; d < image.values.cols(); ++d)
        {
            const double mag = std::abs(image.values(m, d));
            if (mag > best_mag)
            {
                best_mag = mag;
                best = static_cast<int>(d);
            }
        }
        return best;
    }

    int owning_beam(const BeamPlan &plan, double f)
    {
        for (std::size_t i = 0; i < plan.beams.size(); ++i)
            if (f >= plan.beams[i].f_low_hz && f < plan.beams[i].f_high_hz)
                return static_cast<int>(i);
        return -1;
    }

    PointingStats pointing_accuracy(const FrequencySpaceImage &image, const BeamPlan &plan, const ArrayConfig &config,
                                    double tolerance_bins)
    {
        image.check_shape(config);
        PointingStats st;
        const double tol = tolerance_bins * config.angle_step() + 1e-12;
        for (int m = 0; m < config.num_freq_bins; ++m)
        {
            const int b = owning_beam(plan, config.freq(m));
            if (b < 0)
                continue;
            ++st.in_band_bins;
            const double s = config.sin_angle(argmax_angle(image, m));
            if (sin_distance(s, plan.beams[b].sin_theta) <= tol)
                ++st.correct_bins;
        }
        return st;
    }

    double argmax_agreement(const FrequencySpaceImage &a, const FrequencySpaceImage &b, const BeamPlan &plan,
                            const ArrayConfig &config, int tolerance_bins)
    {
        a.check_shape(config);
        b.check_shape(config);
        int total = 0, same = 0;
        const int D = config.num_angle_bins;
        for (int m = 0; m < config.num_freq_bins; ++m)
        {
            if (owning_beam(plan, config.freq(m)) < 0)
                continue;
            ++total;
            int diff = std::abs(argmax_angle(a, m) - argmax_angle(b, m));
            diff = std::min(diff, D - diff);
            if (diff <= tolerance_bins)
                ++same;
        }
        return total ? static_cast<double>(same) / total : 0.0;
    }

    double in_out_ratio_db(const FrequencySpaceImage &image, const FrequencySpaceImage &desired)
    {
        double in = 0.0, out = 0.0;
        long n_in = 0, n_out = 0;
        for (Eigen::Index m = 0; m < image.values.rows(); ++m)
            for (Eigen::Index d = 0; d < image.values.cols(); ++d)
            {
                const double p = std::norm(image.values(m, d));
                if (std::abs(desired.values(m, d)) > 0.5)
                {
                    in += p;
                    ++n_in;
                }
                else
                {
                    out += p;
                    ++n_out;
                }
            }
        if (n_in == 0 || n_out == 0 || out <= 0.0)
            return INFINITY;
        return 10.0 * std::log10((in / n_in) / (out / n_out));
    }

    std::vector<double> beam_snr_db(const DelayPhaseWeights &weights, const BeamPlan &plan, const ArrayConfig &config,
                                    double reference_snr_db)
    {
        std::vector<double> out;
        const double N = config.num_antennas;
        for (const auto &beam : plan.beams)
        {
            const std::vector<cplx> g = gain_along(weights, beam.sin_theta, config);
            double acc = 0.0;
            int count = 0;
            for (int m = 0; m < config.num_freq_bins; ++m)
            {
                const double f = config.freq(m);
                if (f >= beam.f_low_hz && f < beam.f_high_hz)
                {
                    acc += std::norm(g[m]) / (N * N);
                    ++count;
                }
            }
            out.push_back(count ? 10.0 * std::log10(std::max(acc / count, 1e-30)) + reference_snr_db : -INFINITY);
        }
        return out;
    }

    std::vector<double> beam_snr_db(const FrequencySpaceImage &image, const BeamPlan &plan, const ArrayConfig &config,
                                    double reference_snr_db)
    {
        image.check_shape(config);
        std::vector<double> out;
        const double N = config.num_antennas;
        for (const auto &beam : plan.beams)
        {
            int best = 0;
            for (int d = 1; d < config.num_angle_bins; ++d)
                if (sin_distance(config.sin_angle(d), beam.sin_theta) < sin_distance(config.sin_angle(best), beam.sin_theta))
                    best = d;
            double acc = 0.0;
            int count = 0;
            for (int m = 0; m < config.num_freq_bins; ++m)
            {
                const double f = config.freq(m);
                if (f >= beam.f_low_hz && f < beam.f_high_hz)
                {
                    acc += std::norm(image.values(m, best)) / (N * N);
                    ++count;
                }
            }
            out.push_back(count ? 10.0 * std::log10(std::max(acc / count, 1e-30)) + reference_snr_db : -INFINITY);
        }
        return out;
    }

    double mean(const std::vector<double> &v)
    {
        return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    }
}
