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

#include "dpalab/array_core.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace dpalab
{
    Error::Error(std::string code, const std::string &message)
        : std::runtime_error(message), code_(std::move(code))
    {
    }

    void ArrayConfig::validate() const
    {
        if (num_antennas < 2)
            throw Error("invalid_config", "num_antennas must be at least 2");
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw Error("invalid_config", "bandwidth must be positive");
        if (num_freq_bins < 2)
            throw Error("invalid_config", "num_freq_bins must be at least 2");
        if (num_angle_bins < num_antennas)
            throw Error("invalid_config", "num_angle_bins must be at least num_antennas");
        if (time_oversampling < 1)
            throw Error("invalid_config", "time_oversampling must be at least 1");
    }

    std::vector<double> ArrayConfig::freq_axis() const
    {
        std::vector<double> axis(num_freq_bins);
        for (int m = 0; m < num_freq_bins; ++m)
            axis[m] = freq(m);
        return axis;
    }

    std::vector<double> ArrayConfig::angle_axis() const
    {
        std::vector<double> axis(num_angle_bins);
        for (int d = 0; d < num_angle_bins; ++d)
            axis[d] = sin_angle(d);
        return axis;
    }

    void DelayPhaseWeights::validate() const
    {
        if (delays.size() != phases.size())
            throw Error("shape_mismatch", "delays and phases differ in length");
        for (std::size_t n = 0; n < delays.size(); ++n)
        {
            if (!std::isfinite(delays[n]) || delays[n] < 0.0)
                throw Error("invalid_weights", "delays must be finite and non-negative");
            if (!std::isfinite(phases[n]))
                throw Error("invalid_weights", "phases must be finite");
        }
    }

    FrequencySpaceImage FrequencySpaceImage::zeros(const ArrayConfig &config)
    {
        FrequencySpaceImage img;
        img.values = CMatrix::Zero(config.num_freq_bins, config.num_angle_bins);
        img.freq_axis = config.freq_axis();
        img.angle_axis = config.angle_axis();
        return img;
    }

    void FrequencySpaceImage::check_shape(const ArrayConfig &config) const
    {
        if (values.rows() != config.num_freq_bins || values.cols() != config.num_angle_bins)
            throw Error("shape_mismatch", "image shape does not match the array configuration");
    }

    double wrap_phase(double phase)
    {
        double r = std::fmod(phase, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi)
            r = 0.0;
        return r;
    }

    double sin_distance(double a, double b)
    {
        double d = std::fmod(std::abs(a - b), 2.0);
        return d > 1.0 ? 2.0 - d : d;
    }

    CMatrix steering_matrix(const ArrayConfig &config)
    {
        config.validate();
        const int N = config.num_antennas, D = config.num_angle_bins;
        CMatrix V(N, D);
        for (int d = 0; d < D; ++d)
        {
            const double s = config.sin_angle(d);
            for (int n = 0; n < N; ++n)
                V(n, d) = std::polar(1.0, -n * pi * s);
        }
        return V;
    }

    namespace
    {
        // exp(j sign 2 pi f_m k Ts) with the phase reduced in exact integer arithmetic:
        // f_m k Ts = (m - M/2) k / K cycles.
        CMatrix raw_dft(const ArrayConfig &config)
        {
            const int M = config.num_freq_bins, K = config.num_time_taps();
            const double sign = static_cast<double>(config.delay_sign);
            CMatrix U(M, K);
            for (int m = 0; m < M; ++m)
            {
                const long long fm = m - M / 2;
                for (int k = 0; k < K; ++k)
                {
                    long long r = (fm * k) % K;
                    if (r < 0)
                        r += K;
                    U(m, k) = std::polar(1.0, sign * two_pi * static_cast<double>(r) / K);
                }
            }
            return U;
        }
    }

    CMatrix dft_matrix(const ArrayConfig &config)
    {
        config.validate();
        return raw_dft(config) / std::sqrt(static_cast<double>(config.num_time_taps()));
    }

    FrequencySpaceImage gain_pattern(const TimeAntennaWeights &weights, const ArrayConfig &config)
    {
        config.validate();
        if (weights.values.rows() != config.num_time_taps() || weights.values.cols() != config.num_antennas)
            throw Error("shape_mismatch", "time-antenna weights must be K x N");
        FrequencySpaceImage img = FrequencySpaceImage::zeros(config);
        img.values = raw_dft(config) * weights.values * steering_matrix(config);
        return img;
    }

    namespace
    {
        void check_weights(const DelayPhaseWeights &w, const ArrayConfig &config)
        {
            if (w.delays.size() != w.phases.size() || static_cast<int>(w.size()) != config.num_antennas)
                throw Error("shape_mismatch", "weights length must equal num_antennas");
        }

        // A(m, n) = exp(j(Phi_n + sign 2 pi f_m tau_n)), M x N.
        CMatrix antenna_response(const DelayPhaseWeights &w, const ArrayConfig &config)
        {
            const int M = config.num_freq_bins, N = config.num_antennas;
            const double sign = static_cast<double>(config.delay_sign);
            CMatrix A(M, N);
            for (int n = 0; n < N; ++n)
                for (int m = 0; m < M; ++m)
                    A(m, n) = std::polar(1.0, w.phases[n] + sign * two_pi * config.freq(m) * w.delays[n]);
            return A;
        }
    }

    cplx gain_at(const DelayPhaseWeights &weights, double f, double sin_theta, const ArrayConfig &config)
    {
        check_weights(weights, config);
        if (!(std::abs(sin_theta) <= 1.0))
            throw Error("out_of_range", "|sin(theta)| must not exceed 1");
        if (!(std::abs(f) <= config.bandwidth_hz / 2.0))
            throw Error("out_of_range", "frequency must lie within [-B/2, B/2]");
        const double sign = static_cast<double>(config.delay_sign);
        cplx acc(0.0, 0.0);
        for (int n = 0; n < config.num_antennas; ++n)
            acc += std::polar(1.0, weights.phases[n] + sign * two_pi * f * weights.delays[n] - n * pi * sin_theta);
        return acc;
    }

    FrequencySpaceImage weights_pattern(const DelayPhaseWeights &weights, const ArrayConfig &config)
    {
        config.validate();
        check_weights(weights, config);
        FrequencySpaceImage img = FrequencySpaceImage::zeros(config);
        img.values = antenna_response(weights, config) * steering_matrix(config);
        return img;
    }

    std::vector<cplx> gain_along(const DelayPhaseWeights &weights, double sin_theta, const ArrayConfig &config)
    {
        config.validate();
        check_weights(weights, config);
        const int N = config.num_antennas;
        Eigen::VectorXcd v(N);
        for (int n = 0; n < N; ++n)
            v(n) = std::polar(1.0, -n * pi * sin_theta);
        Eigen::VectorXcd g = antenna_response(weights, config) * v;
        return std::vector<cplx>(g.data(), g.data() + g.size());
    }

    int delay_to_tap(double delay, double sample_period)
    {
        // nearest tap; ties (within rounding noise) go to the smaller index
        const double x = delay / sample_period;
        const double lower = std::floor(x);
        return static_cast<int>(x - lower > 0.5 + 1e-9 ? lower + 1.0 : lower);
    }

    TimeAntennaWeights encode_delta_weights(const DelayPhaseWeights &weights, const ArrayConfig &config)
    {
        config.validate();
        check_weights(weights, config);
        const int K = config.num_time_taps(), N = config.num_antennas;
        TimeAntennaWeights out;
        out.values = CMatrix::Zero(K, N);
        for (int n = 0; n < N; ++n)
        {
            if (weights.delays[n] < 0.0)
                throw Error("invalid_weights", "delays must be non-negative");
            const int k = delay_to_tap(weights.delays[n], config.sample_period());
            if (!(weights.delays[n] < config.time_window()) || k >= K)
                throw Error("delay_out_of_window", "delay exceeds the time window K * Ts");
            out.values(k, n) = std::polar(1.0, weights.phases[n]);
        }
        return out;
    }

    RMatrix snr_image(const FrequencySpaceImage &gain, int num_antennas, double link_budget_db)
    {
        const double floor = 1e-15 * num_antennas;
        RMatrix out(gain.values.rows(), gain.values.cols());
        for (Eigen::Index m = 0; m < out.rows(); ++m)
            for (Eigen::Index d = 0; d < out.cols(); ++d)
                out(m, d) = 20.0 * std::log10(std::max(std::abs(gain.values(m, d)), floor) / num_antennas) + link_budget_db;
        return out;
    }

    void write_image_csv(std::ostream &out, const FrequencySpaceImage &image, int num_antennas)
    {
        const RMatrix db = snr_image(image, num_antennas, 0.0);
        out << std::setprecision(12) << "freq_hz";
        for (double s : image.angle_axis)
            out << ',' << s;
        out << '\n';
        for (Eigen::Index m = 0; m < db.rows(); ++m)
        {
            out << image.freq_axis[m];
            for (Eigen::Index d = 0; d < db.cols(); ++d)
                out << ',' << db(m, d);
            out << '\n';
        }
    }

    namespace
    {
        std::vector<double> split_numbers(const std::string &line, std::size_t skip)
        {
            std::vector<double> vals;
            std::stringstream ss(line);
            std::string cell;
            std::size_t idx = 0;
            while (std::getline(ss, cell, ','))
            {
                if (idx++ < skip)
                    continue;
                try
                {
                    vals.push_back(std::stod(cell));
                }
                catch (const std::exception &)
                {
                    throw Error("parse_error", "non-numeric CSV cell: " + cell);
                }
            }
            return vals;
        }
    }

    FrequencySpaceImage read_image_csv(std::istream &in, int num_antennas)
    {
        std::string line;
        if (!std::getline(in, line) || line.rfind("freq_hz", 0) != 0)
            throw Error("parse_error", "missing image CSV header");
        FrequencySpaceImage img;
        img.angle_axis = split_numbers(line, 1);
        std::vector<std::vector<double>> rows;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            auto vals = split_numbers(line, 0);
            if (vals.size() != img.angle_axis.size() + 1)
                throw Error("parse_error", "image CSV row has the wrong number of cells");
            img.freq_axis.push_back(vals[0]);
            rows.emplace_back(vals.begin() + 1, vals.end());
        }
        img.values = CMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(img.angle_axis.size()));
        for (std::size_t m = 0; m < rows.size(); ++m)
            for (std::size_t d = 0; d < rows[m].size(); ++d)
                img.values(m, d) = num_antennas * std::pow(10.0, rows[m][d] / 20.0);
        return img;
    }
}
