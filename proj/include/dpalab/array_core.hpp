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

#ifndef dpalab_array_core_H
#define dpalab_array_core_H

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpalab
{
    using cplx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using RMatrix = Eigen::MatrixXd;

    inline constexpr double pi = 3.14159265358979323846;
    inline constexpr double two_pi = 2.0 * pi;

    // Error with a stable machine-readable code (e.g. "shape_mismatch").
    class Error : public std::runtime_error
    {
    public:
        Error(std::string code, const std::string &message);
        const std::string &code() const noexcept { return code_; }

    private:
        std::string code_;
    };

    // Sign of the delay term in the per-antenna exponent Phi_n + sign * 2*pi*f*tau_n.
    enum class DelaySign
    {
        positive = 1,
        negative = -1
    };

    // Uniform linear array with half-wavelength spacing and its discretization grids.
    //
    // Frequency bin m (0-based) sits at f = (m - M/2) * B / M, covering [-B/2, B/2).
    // Angle bin d sits at sin(theta) = -1 + 2d / D, covering [-1, 1).
    // Time taps are spaced by Ts = 1 / (L * B) with K = L * M taps, so K * Ts = M / B.
    struct ArrayConfig
    {
        int num_antennas = 16;       // N
        double bandwidth_hz = 400e6; // B
        int num_freq_bins = 256;     // M
        int num_angle_bins = 64;     // D
        int time_oversampling = 16;  // L
        DelaySign delay_sign = DelaySign::positive;

        void validate() const;

        int num_time_taps() const { return time_oversampling * num_freq_bins; }
        double sample_period() const { return 1.0 / (time_oversampling * bandwidth_hz); }
        double time_window() const { return num_time_taps() * sample_period(); }
        double freq_step() const { return bandwidth_hz / num_freq_bins; }
        double angle_step() const { return 2.0 / num_angle_bins; }
        double freq(int m) const { return (m - num_freq_bins / 2) * freq_step(); }
        double sin_angle(int d) const { return -1.0 + d * angle_step(); }
        std::vector<double> freq_axis() const;
        std::vector<double> angle_axis() const;
    };

    // One delay and one phase per antenna.
    struct DelayPhaseWeights
    {
        std::vector<double> delays; // seconds, >= 0
        std::vector<double> phases; // radians, [0, 2*pi)
        bool quantized = false;

        std::size_t size() const { return delays.size(); }
        void validate() const;
    };

    // Gain over (frequency bin x angle bin).
    struct FrequencySpaceImage
    {
        CMatrix values; // M x D
        std::vector<double> freq_axis;
        std::vector<double> angle_axis;

        static FrequencySpaceImage zeros(const ArrayConfig &config);
        void check_shape(const ArrayConfig &config) const;
    };

    // Per-antenna weight profile over discrete time, K x N.
    struct TimeAntennaWeights
    {
        CMatrix values;
    };

    double wrap_phase(double phase);

    // Distance between two sin(theta) values on the period-2 spatial-frequency circle.
    double sin_distance(double a, double b);

    // V(n, d) = exp(-j n pi sin(theta_d)), N x D, unit-magnitude entries.
    CMatrix steering_matrix(const ArrayConfig &config);

    // U(m, k) = exp(j sign 2 pi f_m k Ts) / sqrt(K), M x K, orthonormal rows (U U^H = I);
    // for K = M also U^H U = I.
    CMatrix dft_matrix(const ArrayConfig &config);

    // G = sqrt(K) U W V, i.e. raw unnormalized sums with peak gain N.
    FrequencySpaceImage gain_pattern(const TimeAntennaWeights &weights, const ArrayConfig &config);

    // Sum_n exp(j(Phi_n + sign 2 pi f tau_n)) exp(-j n pi s).
    cplx gain_at(const DelayPhaseWeights &weights, double f, double sin_theta, const ArrayConfig &config);

    // Continuous-delay gain evaluated on the configured grids.
    FrequencySpaceImage weights_pattern(const DelayPhaseWeights &weights, const ArrayConfig &config);

    // Gain along one direction for every frequency bin.
    std::vector<cplx> gain_along(const DelayPhaseWeights &weights, double sin_theta, const ArrayConfig &config);

    // Nearest tap, ties toward the smaller index.
    int delay_to_tap(double delay, double sample_period);

    TimeAntennaWeights encode_delta_weights(const DelayPhaseWeights &weights, const ArrayConfig &config);

    // SNR in dB: 20 log10(|G| / N) + link_budget_db.
    RMatrix snr_image(const FrequencySpaceImage &gain, int num_antennas, double link_budget_db);

    // Header row "freq_hz,<sin values...>", then one row per frequency bin with |G| in dB re N.
    void write_image_csv(std::ostream &out, const FrequencySpaceImage &image, int num_antennas);

    // Inverse of write_image_csv; values hold real magnitudes.
    FrequencySpaceImage read_image_csv(std::istream &in, int num_antennas);
}

#endif
