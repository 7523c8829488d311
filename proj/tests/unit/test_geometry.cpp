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

#include <random>

#include "ivr/geometry.hpp"

using namespace ivr;

namespace {
const double c0 = 299792458.0;
}

TEST_CASE("square array wavelength and side length") {
    const auto g = make_square_array(7.26, 41.8e9);
    const double lambda = c0 / 41.8e9;
    CHECK(g.wavelength == doctest::Approx(lambda).epsilon(1e-15));
    CHECK(g.wavelength * 1e3 == doctest::Approx(7.1721).epsilon(1e-5));
    CHECK(g.side_length == doctest::Approx(7.26 * lambda).epsilon(1e-15));
    CHECK(baseline(g, BaselineId::x_axis).length * 1e3 == doctest::Approx(52.07).epsilon(1e-4));

    const auto unit = make_square_array(1.0, c0);
    CHECK(unit.side_length == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("square array elements lie on a square in z = 0") {
    const auto g = make_square_array(7.26, 41.8e9);
    const double h = 0.5 * g.side_length;
    CHECK(g.tx == Vec3{-h, -h, 0.0});
    CHECK(g.rx[0] == Vec3{h, h, 0.0});
    CHECK(g.rx[1] == Vec3{-h, h, 0.0});
    CHECK(g.rx[2] == Vec3{h, -h, 0.0});
}

TEST_CASE("baseline lengths and axis angles") {
    const auto g = make_square_array(7.26, 41.8e9);
    const auto bx = baseline(g, BaselineId::x_axis);
    const auto by = baseline(g, BaselineId::y_axis);
    const auto bd = baseline(g, BaselineId::diagonal);
    CHECK(bx.length_wavelengths == doctest::Approx(7.26).epsilon(1e-12));
    CHECK(by.length_wavelengths == doctest::Approx(7.26).epsilon(1e-12));
    CHECK(bd.length_wavelengths == doctest::Approx(10.267).epsilon(5e-5));
    CHECK(bd.length_wavelengths == doctest::Approx(std::sqrt(2.0) * 7.26).epsilon(1e-12));
    CHECK(bx.phi_deg == doctest::Approx(0.0));
    CHECK(by.phi_deg == doctest::Approx(90.0));
    CHECK(bd.phi_deg == doctest::Approx(-45.0));
    CHECK(bd.rx_a == 1);
    CHECK(bd.rx_b == 2);
}

TEST_CASE("baseline antisymmetry") {
    const auto g = make_square_array(7.26, 41.8e9);
    const auto ab = baseline(g, 1, 2);
    const auto ba = baseline(g, 2, 1);
    CHECK(ab.direction == -ba.direction);
    CHECK(ab.length == ba.length);
    CHECK(ab.phi_deg == doctest::Approx(ba.phi_deg));
}

TEST_CASE("baseline invariants") {
    const auto g = make_square_array(7.26, 41.8e9);
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            if (a == b) continue;
            const auto bl = baseline(g, a, b);
            CHECK(std::abs(norm(bl.direction) - 1.0) < 1e-12);
            CHECK(std::abs(bl.length_wavelengths * g.wavelength - bl.length) <= 1e-12 * bl.length);
            CHECK(bl.phi_deg >= -90.0);
            CHECK(bl.phi_deg <= 90.0);
        }
    }
    const double d12 = baseline(g, 0, 1).length;
    const double d23 = baseline(g, 1, 2).length;
    CHECK(std::abs(d23 - std::sqrt(2.0) * d12) <= 1e-12 * d23);
}

TEST_CASE("baseline argument errors") {
    const auto g = make_square_array(7.26, 41.8e9);
    CHECK_THROWS_AS(baseline(g, 1, 1), Error);
    CHECK_THROWS_AS(baseline(g, 0, 3), Error);
    try {
        baseline(g, 2, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("make_square_array rejects non-positive inputs") {
    CHECK_THROWS_AS(make_square_array(0.0, 41.8e9), Error);
    CHECK_THROWS_AS(make_square_array(-1.0, 41.8e9), Error);
    CHECK_THROWS_AS(make_square_array(7.26, 0.0), Error);
}

TEST_CASE("make_array validates element placement") {
    const Vec3 tx{0, 0, 0};
    CHECK_THROWS_AS(make_array(41.8e9, tx, {Vec3{1, 0, 0}, Vec3{0, 1, 0.1}, Vec3{1, 1, 0}}, 1.0), Error);
    CHECK_THROWS_AS(make_array(41.8e9, tx, {Vec3{1, 0, 0}, Vec3{1, 0, 0}, Vec3{1, 1, 0}}, 1.0), Error);
    const auto g = make_array(41.8e9, tx, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 1, 0}}, 1.0);
    CHECK(g.rx[2] == Vec3{1, 1, 0});
}

TEST_CASE("projected angle examples") {
    const auto g = make_square_array(7.26, 41.8e9);
    const auto bx = baseline(g, BaselineId::x_axis);
    for (auto id : {BaselineId::x_axis, BaselineId::y_axis, BaselineId::diagonal})
        CHECK(projected_angle({0, 0, 0.755}, baseline(g, id)) == doctest::Approx(0.0));
    const double z = 0.755;
    CHECK(projected_angle({z * std::tan(deg2rad(20.0)), 0, z}, bx) == doctest::Approx(deg2rad(20.0)).epsilon(1e-12));
    CHECK(projected_angle({0, 0.3, z}, bx) == doctest::Approx(0.0));
    CHECK_THROWS_AS(projected_angle({0, 0, 0}, bx), Error);
}

TEST_CASE("projected angle is invariant under a common rotation about z") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto g = make_square_array(7.26, 41.8e9);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 target{u(rng), u(rng), 0.2 + std::abs(u(rng))};
        const double rot = kPi * u(rng);
        std::array<Vec3, 3> rx{rotate_z(g.rx[0], rot), rotate_z(g.rx[1], rot), rotate_z(g.rx[2], rot)};
        const auto rg = make_array(g.carrier_frequency, rotate_z(g.tx, rot), rx, g.side_length);
        for (auto id : {BaselineId::x_axis, BaselineId::y_axis, BaselineId::diagonal}) {
            const double a0 = projected_angle(target, baseline(g, id));
            const double a1 = projected_angle(rotate_z(target, rot), baseline(rg, id));
            CHECK(std::abs(a0 - a1) < 1e-12);
        }
    }
}

TEST_CASE("rx3 mount rotation perturbs only the y baseline") {
    const auto g = make_square_array(7.26, 41.8e9);
    const auto r = with_rx3_mount_rotation(g, 10.0);
    CHECK(r.rx[0] == g.rx[0]);
    CHECK(r.rx[1] == g.rx[1]);
    CHECK(!(r.rx[2] == g.rx[2]));
    CHECK(baseline(r, BaselineId::x_axis).phi_deg == doctest::Approx(0.0));
    CHECK(baseline(r, BaselineId::y_axis).phi_deg != doctest::Approx(90.0));
    CHECK(with_rx3_mount_rotation(g, 0.0).rx[2] == g.rx[2]);
}
