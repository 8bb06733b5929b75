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

#include "dpalab/fsda.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>

namespace dpalab
{
    std::vector<double> BeamPlan::fractions(double bandwidth_hz) const
    {
        std::vector<double> out;
        out.reserve(beams.size());
        for (const auto &b : beams)
            out.push_back((b.f_high_hz - b.f_low_hz) / bandwidth_hz);
        return out;
    }

    bool BeamPlan::exhaustive(double bandwidth_hz, double tol) const
    {
        double sum = 0.0;
        for (double a : fractions(bandwidth_hz))
            sum += a;
        return std::abs(sum - 1.0) <= tol;
    }

    void BeamPlan::validate(double bandwidth_hz) const
    {
        const double half = bandwidth_hz / 2.0;
        const double tol = 1e-9 * bandwidth_hz;
        for (const auto &b : beams)
        {
            if (!(std::abs(b.sin_theta) <= 1.0))
                throw Error("out_of_range", "beam direction must satisfy |sin(theta)| <= 1");
            if (!(b.f_low_hz < b.f_high_hz))
                throw Error("invalid_plan", "beam band must satisfy f_low < f_high");
            if (b.f_low_hz < -half - tol || b.f_high_hz > half + tol)
                throw Error("out_of_range", "beam band must lie within [-B/2, B/2]");
            if (b.width && !(*b.width > 0.0))
                throw Error("invalid_plan", "beam width must be positive");
        }
        BeamPlan s = sorted_by_band();
        for (std::size_t i = 1; i < s.beams.size(); ++i)
            if (s.beams[i].f_low_hz < s.beams[i - 1].f_high_hz - tol)
                throw Error("overlapping_bands", "beam bands overlap");
    }

    BeamPlan BeamPlan::from_fractions(const std::vector<double> &sin_thetas, const std::vector<double> &fractions,
                                      double bandwidth_hz)
    {
        if (sin_thetas.size() != fractions.size())
            throw Error("shape_mismatch", "directions and fractions differ in length");
        BeamPlan plan;
        double edge = -bandwidth_hz / 2.0;
        for (std::size_t i = 0; i < sin_thetas.size(); ++i)
        {
            const double hi = (i + 1 == sin_thetas.size() && std::abs(edge + fractions[i] * bandwidth_hz - bandwidth_hz / 2.0) < 1e-6 * bandwidth_hz)
                                  ? bandwidth_hz / 2.0
                                  : edge + fractions[i] * bandwidth_hz;
            plan.beams.push_back({sin_thetas[i], edge, hi, std::nullopt});
            edge = hi;
        }
        return plan;
    }

    BeamPlan BeamPlan::equal_split(const std::vector<double> &sin_thetas, double bandwidth_hz)
    {
        std::vector<double> fr(sin_thetas.size(), sin_thetas.empty() ? 0.0 : 1.0 / sin_thetas.size());
        return from_fractions(sin_thetas, fr, bandwidth_hz);
    }

    BeamPlan BeamPlan::sorted_by_band() const
    {
        BeamPlan s = *this;
        std::stable_sort(s.beams.begin(), s.beams.end(),
                         [](const BeamSpec &a, const BeamSpec &b) { return a.f_low_hz < b.f_low_hz; });
        return s;
    }

    void QuantizerSpec::validate() const
    {
        if (phase_bits < 1 || phase_bits > 30)
            throw Error("invalid_quantizer", "phase_bits must be in [1, 30]");
        if (!(delay_step > 0.0))
            throw Error("invalid_quantizer", "delay_step must be positive");
        if (!(delay_range >= delay_step))
            throw Error("invalid_quantizer", "delay_range must be at least one step");
    }

    double QuantizerSpec::phase_step() const { return two_pi / std::ldexp(1.0, phase_bits); }

    QuantizerSpec QuantizerSpec::from_bits(int phase_bits, int delay_bits, double delay_range)
    {
        if (delay_bits < 1 || delay_bits > 30)
            throw Error("invalid_quantizer", "delay bits must be in [1, 30]");
        QuantizerSpec q{phase_bits, delay_range / std::ldexp(1.0, delay_bits), delay_range};
        q.validate();
        return q;
    }

    FrequencySpaceImage build_desired_image(const BeamPlan &plan, const ArrayConfig &config)
    {
        config.validate();
        plan.validate(config.bandwidth_hz);
        FrequencySpaceImage img = FrequencySpaceImage::zeros(config);
        const double default_width = 2.0 / config.num_antennas;
        for (const auto &b : plan.beams)
        {
            // open interval: at most width / angle_step bins per stripe
            const double half = b.width.value_or(default_width) / 2.0 - 1e-12;
            for (int m = 0; m < config.num_freq_bins; ++m)
            {
                const double f = config.freq(m);
                if (f < b.f_low_hz || f >= b.f_high_hz)
                    continue;
                for (int d = 0; d < config.num_angle_bins; ++d)
                    if (sin_distance(config.sin_angle(d), b.sin_theta) < half)
                        img.values(m, d) = 1.0;
            }
        }
        return img;
    }

    TimeAntennaWeights fsda_transform(const FrequencySpaceImage &desired, const ArrayConfig &config)
    {
        config.validate();
        desired.check_shape(config);
        const int M = config.num_freq_bins, D = config.num_angle_bins, N = config.num_antennas;
        const int K = config.num_time_taps();

        // Angle stage: (G V^H)(m, n) = (-1)^n sum_d G(m, d) exp(+j 2 pi n d / D).
        CMatrix rows = desired.values.transpose(); // D x M, one contiguous column per frequency bin
        detail::fft_batch(rows.data(), D, M, detail::FftDirection::backward);

        // Frequency stage: W(k, n) = sum_m Y(m, n) exp(-j sign 2 pi (m - M/2) k / K).
        const bool positive = config.delay_sign == DelaySign::positive;
        CMatrix taps = CMatrix::Zero(K, N);
        for (int n = 0; n < N; ++n)
        {
            const double alt = (n % 2 == 0) ? 1.0 : -1.0;
            for (int m = 0; m < M; ++m)
            {
                long long idx = static_cast<long long>(m - M / 2) % K;
                if (idx < 0)
                    idx += K;
                taps(idx, n) = alt * rows(n, m);
            }
        }
        detail::fft_batch(taps.data(), K, N, positive ? detail::FftDirection::forward : detail::FftDirection::backward);

        TimeAntennaWeights out;
        out.values = taps / (static_cast<double>(K) * D);
        return out;
    }

    TimeAntennaWeights fsda_transform_dense(const FrequencySpaceImage &desired, const ArrayConfig &config)
    {
        config.validate();
        desired.check_shape(config);
        const double K = config.num_time_taps(), D = config.num_angle_bins;
        // Pseudo-inverses of the raw transforms: U_raw^+ = U_raw^H / K, V^+ = V^H / D.
        const CMatrix U = dft_matrix(config) * std::sqrt(K);
        const CMatrix V = steering_matrix(config);
        TimeAntennaWeights out;
        out.values = (U.adjoint() * desired.values * V.adjoint()) / (K * D);
        return out;
    }

    DelayPhaseWeights extract_delay_phase(const TimeAntennaWeights &weights, const ArrayConfig &config)
    {
        config.validate();
        const int K = config.num_time_taps(), N = config.num_antennas;
        if (weights.values.rows() != K || weights.values.cols() != N)
            throw Error("shape_mismatch", "time-antenna weights must be K x N");
        DelayPhaseWeights w;
        w.delays.resize(N);
        w.phases.resize(N);
        for (int n = 0; n < N; ++n)
        {
            int best = -1;
            double best_mag = 0.0;
            for (int k = 0; k < K; ++k)
            {
                const double mag = std::abs(weights.values(k, n));
                if (mag > best_mag)
                {
                    best_mag = mag;
                    best = k;
                }
            }
            if (best < 0)
                throw Error("empty_column", "time-antenna weights have an all-zero column");
            w.delays[n] = best * config.sample_period();
            w.phases[n] = wrap_phase(std::arg(weights.values(best, n)));
        }
        return w;
    }

    DelayPhaseWeights fold_delays(const DelayPhaseWeights &weights, double time_window)
    {
        DelayPhaseWeights out = weights;
        if (out.delays.empty())
            return out;
        for (double &t : out.delays)
            if (t >= time_window / 2.0)
                t -= time_window;
        const double lo = *std::min_element(out.delays.begin(), out.delays.end());
        for (double &t : out.delays)
            t -= lo;
        return out;
    }

    DelayPhaseWeights quantize_weights(const DelayPhaseWeights &weights, const QuantizerSpec &q)
    {
        q.validate();
        if (weights.delays.size() != weights.phases.size())
            throw Error("shape_mismatch", "delays and phases differ in length");
        DelayPhaseWeights out = weights;
        out.quantized = true;
        if (out.delays.empty())
            return out;

        const double lo = *std::min_element(out.delays.begin(), out.delays.end());
        const double levels = std::floor(q.delay_range / q.delay_step + 1e-9);
        const double steps = std::ldexp(1.0, q.phase_bits);
        for (std::size_t n = 0; n < out.delays.size(); ++n)
        {
            const double t = out.delays[n] - lo;
            if (!(t < q.delay_range))
                throw Error("delay_out_of_range", "delay exceeds the quantizer range after offset removal");
            const double level = std::min(std::round(t / q.delay_step), levels - 1.0);
            out.delays[n] = level * q.delay_step;

            double p = std::round(wrap_phase(out.phases[n]) / q.phase_step());
            if (p >= steps)
                p -= steps;
            out.phases[n] = p * q.phase_step();
        }
        return out;
    }

    DelayPhaseWeights synthesize(const BeamPlan &plan, const ArrayConfig &config, const std::optional<QuantizerSpec> &q)
    {
        const FrequencySpaceImage desired = build_desired_image(plan, config);
        const TimeAntennaWeights w = fsda_transform(desired, config);
        DelayPhaseWeights dp = fold_delays(extract_delay_phase(w, config), config.time_window());
        if (q)
            dp = quantize_weights(dp, *q);
        return dp;
    }
}
