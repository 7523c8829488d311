// SPDX-License-Identifier: Apache-2.0
//
// ivr - dual-axis interferometric radar velocimetry toolkit
// Copyright (C) 2026 The ivr Authors
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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "ivr/geometry.hpp"
#include "ivr/scene.hpp"
#include "ivr/velocity.hpp"

using namespace ivr;

namespace {

const ArrayGeometry kArray = make_square_array(7.26, 41.8e9);

EstimatorParams interpolating() {
    EstimatorParams p;
    p.interpolate = true;
    return p;
}

Reconstruction run(double phi_v, double beta, const EstimatorParams& params = {}) {
    const auto tr = make_boresight_pass(0.50131, phi_v, beta, 0.755, 2.0, 0.0, 4.0);
    const auto rec = synthesize({{{tr, {1.0, 0.0}}}}, kArray, ideal_radar_config(), {0.0, 4.0});
    return reconstruct(rec, kArray, ideal_radar_config(), params, make_prior(tr));
}

double angle_diff(double a, double b) { return std::remainder(a - b, 360.0); }

}  // namespace

TEST_CASE("interferometric frequency examples") {
    CHECK(interferometric_frequency(0.66399, 7.26, 0.0) == doctest::Approx(4.8206).epsilon(1e-4));
    CHECK(std::abs(interferometric_frequency(0.66399, 7.26, kPi / 2)) < 1e-12);
    CHECK(interferometric_frequency(0.0, 7.26, 0.3) == 0.0);
}

TEST_CASE("tangential inversion examples") {
    CHECK(tangential_from_frequency(4.8206, 0.755, 7.26) * 1e3 == doctest::Approx(501.3).epsilon(1e-4));
    const double d45 = std::sqrt(2.0) * 7.26;
    CHECK(tangential_from_frequency(std::sqrt(2.0) * 4.8206, 0.755, d45) ==
          doctest::Approx(tangential_from_frequency(4.8206, 0.755, 7.26)).epsilon(1e-12));
    CHECK(tangential_from_frequency(0.0, 0.755, 7.26) == 0.0);
}

TEST_CASE("projection-corrected inversion") {
    const double v = tangential_from_frequency(4.8206 * std::cos(deg2rad(30.0)), 0.755, 7.26, -30.0, 0.0);
    CHECK(v * 1e3 == doctest::Approx(501.3).epsilon(1e-4));
    try {
        tangential_from_frequency(1.0, 0.755, 7.26, 90.0, 0.0);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::non_invertible_projection);
    }
}

TEST_CASE("forward components examples") {
    const auto z = forward_components(0.0, 0.3, 0.0, 0.0);
    CHECK(z.v_alpha_x == doctest::Approx(0.3));
    CHECK(z.v_alpha_y == doctest::Approx(0.0));
    const auto s = forward_components(0.0, 0.4, 0.0, 60.0);
    CHECK(s.v_alpha_x == doctest::Approx(0.2));
    CHECK(std::abs(s.v_alpha_y) < 1e-15);
    const auto n = forward_components(0.0, 0.0, 37.0, 20.0);
    CHECK(n.v_alpha_x == 0.0);
    CHECK(n.v_alpha_y == 0.0);
}

TEST_CASE("forward then inverse at the zenith") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double s = 0.01 + std::abs(u(rng));
        const double phi = 179.0 * u(rng);
        const auto c = forward_components(0.0, s, phi, 0.0);
        CHECK(std::abs(angle_diff(heading_azimuth(c.v_alpha_x, c.v_alpha_y), phi)) < 1e-12);
        CHECK(std::abs(tangential_magnitude(c.v_alpha_x, c.v_alpha_y) - s) < 1e-12);
    }
}

TEST_CASE("radial velocity") {
    const double lambda = 7.1721e-3;
    CHECK(radial_velocity(139.8, lambda) * 1e3 == doctest::Approx(501.3).epsilon(2e-4));
    CHECK(radial_velocity(0.0, lambda) == 0.0);
    CHECK(radial_velocity(-50.0, lambda) < 0.0);
}

TEST_CASE("heading azimuth") {
    CHECK(heading_azimuth(1, 1) == doctest::Approx(45.0));
    CHECK(heading_azimuth(0.4, 0) == 0.0);
    CHECK(heading_azimuth(0.5 * std::cos(deg2rad(-30.0)), 0.5 * std::sin(deg2rad(-30.0))) == doctest::Approx(-30.0));
    CHECK(heading_azimuth(-1, 0) == 180.0);
    try {
        heading_azimuth(0, 0);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::undefined_heading);
    }
}

TEST_CASE("tangential magnitude") {
    CHECK(tangential_magnitude(3, 4) == 5.0);
    CHECK(tangential_magnitude(0, 0) == 0.0);
    for (double phi = -180.0; phi < 180.0; phi += 7.5)
        CHECK(tangential_magnitude(0.5 * std::cos(deg2rad(phi)), 0.5 * std::sin(deg2rad(phi))) ==
              doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("attack angle") {
    CHECK(attack_angle(0.0, 0.5) == 0.0);
    CHECK(attack_angle(-0.5, 0.5) == doctest::Approx(45.0));
    CHECK(attack_angle(-0.3223, 0.3840) == doctest::Approx(40.0).epsilon(2e-4));
    CHECK(attack_angle(-0.2, 0.0) == 90.0);
    try {
        attack_angle(0.0, 0.0);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::undefined_attack_angle);
    }
}

TEST_CASE("assembled speed identity") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        VelocityComponents c;
        c.v_alpha_x = u(rng);
        c.v_alpha_y = u(rng);
        c.v_R = u(rng);
        c.range_used = 0.755;
        const auto e = assemble(c);
        CHECK(std::abs(e.speed * e.speed - (e.v_theta * e.v_theta + e.v_R * e.v_R)) <= 1e-9 * e.speed * e.speed);
        CHECK(e.beta_deg >= -90.0);
        CHECK(e.beta_deg <= 90.0);
    }
}

TEST_CASE("small-angle inversion error stays below 10 percent") {
    double worst = 0.0;
    for (int i = -2000; i <= 2000; ++i) {
        const double a = deg2rad(20.0 * i / 2000.0);
        const double f = interferometric_frequency(1.0, 7.26, a);
        const double approx = tangential_from_frequency(f, 1.0, 7.26);
        const double exact = f / (7.26 * std::cos(a));
        worst = std::max(worst, std::abs(approx - exact) / exact);
    }
    CHECK(worst < 0.10);
}

TEST_CASE("nominal pass end to end") {
    // A Hann window keeps the Doppler chirp across the frame from biasing the
    // peak; the boxcar frame lands on a Fresnel ripple about 4 Hz low.
    EstimatorParams hann = interpolating();
    hann.spectrogram.window = WindowKind::hann;
    const auto r = run(0.0, 0.0, hann);
    CHECK(std::abs(r.estimate.speed - 0.50131) <= 0.01 * 0.50131);
    CHECK(std::abs(r.estimate.phi_v_deg) <= 1.0);
    CHECK(std::abs(r.estimate.beta_deg) <= 1.0);
    CHECK(std::isfinite(r.components.v_alpha_x));
    CHECK(r.components.range_used > 0.0);

    const auto b = run(0.0, 0.0);
    CHECK(std::abs(b.estimate.speed - 0.50131) <= 0.01 * 0.50131);
    CHECK(std::abs(b.estimate.phi_v_deg) <= 1.0);
    CHECK(std::abs(b.estimate.beta_deg) <= 2.0);
}

TEST_CASE("diagonal pass has equal axis components") {
    const auto r = run(-45.0, 0.0);
    CHECK(std::abs(r.components.v_alpha_x + r.components.v_alpha_y) <=
          0.02 * std::abs(r.components.v_alpha_x));
    CHECK(std::abs(r.estimate.phi_v_deg + 45.0) <= 1.0);
}

TEST_CASE("descending pass") {
    const auto r = run(0.0, 40.0);
    CHECK(std::abs(r.estimate.beta_deg - 40.0) <= 2.0);
}

TEST_CASE("diagonal baseline agrees with the composed component") {
    for (double phi : {0.0, -30.0, -45.0}) {
        const auto r = run(phi, 0.0, interpolating());
        const double R = r.calibration.range;
        const double v_diag = tangential_from_frequency(r.f_diagonal, R, std::sqrt(2.0) * 7.26);
        const auto bd = baseline(kArray, BaselineId::diagonal);
        const double along = r.components.v_alpha_x * bd.direction.x + r.components.v_alpha_y * bd.direction.y;
        CHECK(std::abs(v_diag - along) <= 0.02 * std::abs(along));
    }
}

TEST_CASE("rotation equivariance of the heading") {
    const double base = run(-10.0, 0.0, interpolating()).estimate.phi_v_deg;
    for (double d : {-20.0, -35.0, 25.0}) {
        const double rotated = run(-10.0 + d, 0.0, interpolating()).estimate.phi_v_deg;
        CHECK(std::abs(angle_diff(rotated - base, d)) <= 1.0);
    }
}

TEST_CASE("prior from a trajectory") {
    const auto tr = make_boresight_pass(0.5, 20.0, 10.0, 0.8, 1.5, 0.0, 4.0);
    const auto p = make_prior(tr);
    CHECK(p.t_ref == doctest::Approx(1.5));
    CHECK(p.p_ref.z == doctest::Approx(0.8));
    CHECK(norm(p.velocity) == doctest::Approx(0.5));
}
