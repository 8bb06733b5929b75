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

#include "doctest.h"

#include "dpalab/array_core.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace dpalab;

namespace
{
    // Direct double sum, independent of the matrix path.
    cplx brute_gain(const DelayPhaseWeights &w, double f, double s, int sign = 1)
    {
        cplx g = 0.0;
        for (std::size_t n = 0; n < w.size(); ++n)
            g += std::polar(1.0, w.phases[n] + sign * two_pi * f * w.delays[n] - static_cast<double>(n) * pi * s);
        return g;
    }

    DelayPhaseWeights random_weights(std::mt19937_64 &rng, int N, double max_delay)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        DelayPhaseWeights w;
        for (int n = 0; n < N; ++n)
        {
            w.delays.push_back(u(rng) * max_delay);
            w.phases.push_back(u(rng) * two_pi);
        }
        return w;
    }
}

TEST_CASE("config validation rejects degenerate grids")
{
    ArrayConfig c;
    CHECK_NOTHROW(c.validate());
    c.num_antennas = 1;
    CHECK_THROWS_AS(c.validate(), Error);
    c = ArrayConfig{};
    c.num_angle_bins = 8;
    CHECK_THROWS_AS(c.validate(), Error);
    c = ArrayConfig{};
    c.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("grid axes are centred and uniform in sin")
{
    ArrayConfig c;
    CHECK(c.freq(0) == doctest::Approx(-200e6));
    CHECK(c.freq(c.num_freq_bins / 2) == 0.0);
    CHECK(c.sin_angle(0) == -1.0);
    CHECK(c.sin_angle(32) == doctest::Approx(0.0));
    CHECK(c.freq_axis().size() == 256);
    CHECK(c.angle_axis().size() == 64);
}

TEST_CASE("steering matrix entries")
{
    ArrayConfig c;
    c.num_antennas = 4;
    c.num_angle_bins = 8;
    const CMatrix V = steering_matrix(c);
    REQUIRE(V.rows() == 4);
    REQUIRE(V.cols() == 8);
    for (int d = 0; d < 8; ++d)
        CHECK(std::abs(V(0, d) - cplx(1.0)) < 1e-15);
    const int broadside = 4;  // sin = 0
    const int half = 6;       // sin = 0.5
    CHECK(std::abs(V(1, broadside) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(V(2, half) - cplx(-1.0)) < 1e-12);
    CHECK((V.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK((V * V.adjoint() / 8.0 - CMatrix::Identity(4, 4)).norm() < 1e-9);
}

TEST_CASE("dft matrix is unitary on a square grid and row-orthonormal when oversampled")
{
    ArrayConfig c;
    c.num_freq_bins = 64;
    c.time_oversampling = 1;
    const CMatrix U = dft_matrix(c);
    CHECK((U.adjoint() * U - CMatrix::Identity(64, 64)).norm() < 1e-9);
    const int dc = 32;
    for (int k = 1; k < U.cols(); ++k)
        CHECK(std::abs(U(dc, k) - U(dc, 0)) < 1e-15);

    c.time_oversampling = 4;
    const CMatrix Uo = dft_matrix(c);
    CHECK(Uo.cols() == 256);
    CHECK((Uo * Uo.adjoint() - CMatrix::Identity(64, 64)).norm() < 1e-9);

    // shift theorem: the column of tap k0 advances in phase by 2*pi*df*k0*Ts per bin
    const int k0 = 5;
    const double slope = two_pi * c.freq_step() * k0 * c.sample_period();
    for (int m = 1; m < 64; ++m)
    {
        const double step = std::arg(Uo(m, k0) / Uo(m - 1, k0));
        CHECK(std::abs(std::remainder(step - slope, two_pi)) < 1e-9);
    }
}

TEST_CASE("gain_at matches a direct sum and the two-beam examples")
{
    ArrayConfig c;
    DelayPhaseWeights zero{std::vector<double>(16, 0.0), std::vector<double>(16, 0.0), false};
    CHECK(std::abs(gain_at(zero, 0.0, 0.0, c) - cplx(16.0)) < 1e-12);

    const double s0 = 0.3;
    DelayPhaseWeights phased{std::vector<double>(16, 0.0), {}, false};
    for (int n = 0; n < 16; ++n)
        phased.phases.push_back(wrap_phase(n * pi * s0));
    for (double f : {-200e6, -50e6, 0.0, 123e6, 200e6})
        CHECK(std::abs(gain_at(phased, f, s0, c)) == doctest::Approx(16.0));

    std::mt19937_64 rng(11);
    const DelayPhaseWeights w = random_weights(rng, 16, 5e-9);
    for (double f : {-180e6, 3e6, 170e6})
        for (double s : {-0.7, 0.0, 0.45})
            CHECK(std::abs(gain_at(w, f, s, c) - brute_gain(w, f, s)) < 1e-9);

    c.delay_sign = DelaySign::negative;
    CHECK(std::abs(gain_at(w, 1e8, 0.2, c) - brute_gain(w, 1e8, 0.2, -1)) < 1e-9);

    CHECK_THROWS_AS(gain_at(w, 0.0, 1.5, c), Error);
    CHECK_THROWS_AS(gain_at(w, 3e8, 0.0, c), Error);
}

TEST_CASE("gain_along and weights_pattern agree with gain_at")
{
    ArrayConfig c;
    std::mt19937_64 rng(12);
    const DelayPhaseWeights w = random_weights(rng, 16, 5e-9);
    const FrequencySpaceImage img = weights_pattern(w, c);
    const auto col = gain_along(w, c.sin_angle(40), c);
    for (int m = 0; m < c.num_freq_bins; m += 17)
    {
        CHECK(std::abs(img.values(m, 40) - gain_at(w, c.freq(m), c.sin_angle(40), c)) < 1e-9);
        CHECK(std::abs(col[m] - img.values(m, 40)) < 1e-9);
    }
}

TEST_CASE("delay-to-tap encoding")
{
    ArrayConfig c;
    const double Ts = c.sample_period();
    CHECK(delay_to_tap(0.0, Ts) == 0);
    CHECK(delay_to_tap(Ts, Ts) == 1);
    CHECK(delay_to_tap(1.4 * Ts, Ts) == 1);
    CHECK(delay_to_tap(1.5 * Ts, Ts) == 1);  // ties go to the smaller tap
    CHECK(delay_to_tap(1.6 * Ts, Ts) == 2);

    DelayPhaseWeights zero{std::vector<double>(16, 0.0), std::vector<double>(16, 0.0), false};
    const TimeAntennaWeights t = encode_delta_weights(zero, c);
    CHECK(t.values.rows() == c.num_time_taps());
    CHECK(t.values.row(0).cwiseAbs().sum() == doctest::Approx(16.0));
    CHECK(t.values.cwiseAbs().sum() == doctest::Approx(16.0));

    DelayPhaseWeights far = zero;
    far.delays[3] = c.time_window();
    CHECK_THROWS_AS(encode_delta_weights(far, c), Error);
}

TEST_CASE("single isotropic element gives a flat unit image")
{
    ArrayConfig c;
    TimeAntennaWeights t{CMatrix::Zero(c.num_time_taps(), c.num_antennas)};
    t.values(0, 0) = 1.0;
    const FrequencySpaceImage img = gain_pattern(t, c);
    CHECK((img.values.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);

    TimeAntennaWeights bad{CMatrix::Zero(3, c.num_antennas)};
    CHECK_THROWS_AS(gain_pattern(bad, c), Error);
}

TEST_CASE("power conservation and peak bound over random weights")
{
    ArrayConfig c;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial)
    {
        const DelayPhaseWeights w = random_weights(rng, 16, 6e-9);
        const FrequencySpaceImage img = weights_pattern(w, c);
        for (int m = 0; m < c.num_freq_bins; ++m)
            CHECK(img.values.row(m).squaredNorm() / c.num_angle_bins == doctest::Approx(16.0).epsilon(1e-6));
        CHECK(img.values.cwiseAbs().maxCoeff() <= 16.0 * (1.0 + 1e-12));
    }
}

TEST_CASE("tap rounding error stays within the phase bound")
{
    ArrayConfig c;
    std::mt19937_64 rng(4);
    const double eps = two_pi * (c.bandwidth_hz / 2.0) * (c.sample_period() / 2.0);
    for (int trial = 0; trial < 5; ++trial)
    {
        const DelayPhaseWeights w = random_weights(rng, 16, 6.4e-9);
        const FrequencySpaceImage a = weights_pattern(w, c);
        const FrequencySpaceImage b = gain_pattern(encode_delta_weights(w, c), c);
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 16.0 * eps);
    }
}

TEST_CASE("snr image calibration")
{
    ArrayConfig c;
    c.num_freq_bins = 4;
    c.num_angle_bins = 16;
    FrequencySpaceImage g = FrequencySpaceImage::zeros(c);
    g.values(0, 0) = 16.0;
    g.values(1, 0) = 8.0;
    const RMatrix snr = snr_image(g, 16, 25.0);
    CHECK(snr(0, 0) == doctest::Approx(25.0));
    CHECK(snr(1, 0) == doctest::Approx(25.0 - 20.0 * std::log10(2.0)));
    CHECK(std::isfinite(snr(2, 3)));
}

TEST_CASE("image csv round trip")
{
    ArrayConfig c;
    c.num_freq_bins = 8;
    c.num_angle_bins = 16;
    std::mt19937_64 rng(5);
    const FrequencySpaceImage img = weights_pattern(random_weights(rng, 16, 3e-9), c);
    std::stringstream ss;
    write_image_csv(ss, img, 16);
    const std::string text = ss.str();
    CHECK(text.rfind("freq_hz,", 0) == 0);
    const FrequencySpaceImage back = read_image_csv(ss, 16);
    REQUIRE(back.values.rows() == 8);
    REQUIRE(back.values.cols() == 16);
    for (int m = 0; m < 8; ++m)
        for (int d = 0; d < 16; ++d)
            CHECK(std::abs(back.values(m, d)) == doctest::Approx(std::abs(img.values(m, d))).epsilon(1e-6));

    std::stringstream junk("nonsense\n1,2\n");
    CHECK_THROWS_AS(read_image_csv(junk, 16), Error);
}

TEST_CASE("phase wrap and circular sin distance")
{
    CHECK(wrap_phase(-0.5 * pi) == doctest::Approx(1.5 * pi));
    CHECK(wrap_phase(two_pi) == doctest::Approx(0.0));
    CHECK(sin_distance(0.95, -0.95) == doctest::Approx(0.1));
    CHECK(sin_distance(0.2, 0.5) == doctest::Approx(0.3));
}
