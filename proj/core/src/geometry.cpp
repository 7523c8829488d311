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

#include "ivr/geometry.hpp"

#include <iostream>

namespace ivr {

namespace {

constexpr double kMinRecommendedBaselineWavelengths = 5.0;

double fold_axis_angle(double deg) {
    if (deg > 90.0) return deg - 180.0;
    if (deg < -90.0) return deg + 180.0;
    return deg;
}

}  // namespace

ArrayGeometry make_square_array(double side_length_wavelengths, double carrier_frequency) {
    if (!(side_length_wavelengths > 0.0) || !std::isfinite(side_length_wavelengths))
        throw Error(ErrorKind::invalid_argument, "side length must be positive");
    if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency))
        throw Error(ErrorKind::invalid_argument, "carrier frequency must be positive");
    if (side_length_wavelengths < kMinRecommendedBaselineWavelengths) {
        std::clog << "ivr: warning: baseline of " << side_length_wavelengths
                  << " wavelengths is short; the correlator phase will cycle only a few times per pass\n";
    }

    const double wavelength = kSpeedOfLight / carrier_frequency;
    const double h = 0.5 * side_length_wavelengths * wavelength;

    ArrayGeometry g;
    g.carrier_frequency = carrier_frequency;
    g.wavelength = wavelength;
    g.side_length = 2.0 * h;
    g.tx = {-h, -h, 0.0};
    g.rx = {Vec3{h, h, 0.0}, Vec3{-h, h, 0.0}, Vec3{h, -h, 0.0}};
    return g;
}

ArrayGeometry make_array(double carrier_frequency, const Vec3& tx, const std::array<Vec3, 3>& rx,
                         double nominal_side_length) {
    if (!(carrier_frequency > 0.0)) throw Error(ErrorKind::invalid_argument, "carrier frequency must be positive");
    if (!(nominal_side_length > 0.0)) throw Error(ErrorKind::invalid_argument, "side length must be positive");
    std::array<Vec3, 4> all{tx, rx[0], rx[1], rx[2]};
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!is_finite(all[i])) throw Error(ErrorKind::invalid_argument, "element position is not finite");
        if (all[i].z != 0.0) throw Error(ErrorKind::invalid_argument, "array elements must lie in the z = 0 plane");
        for (std::size_t j = 0; j < i; ++j) {
            if (norm(all[i] - all[j]) == 0.0) throw Error(ErrorKind::invalid_argument, "coincident array elements");
        }
    }
    ArrayGeometry g;
    g.carrier_frequency = carrier_frequency;
    g.wavelength = kSpeedOfLight / carrier_frequency;
    g.tx = tx;
    g.rx = rx;
    g.side_length = nominal_side_length;
    return g;
}

ArrayGeometry with_rx3_mount_rotation(const ArrayGeometry& geom, double rotation_deg) {
    const Vec3 pivot = 0.5 * (geom.tx + geom.rx[2]);
    const double a = deg2rad(rotation_deg);
    auto turn = [&](const Vec3& p) { return pivot + rotate_z(p - pivot, a); };
    return make_array(geom.carrier_frequency, turn(geom.tx), {geom.rx[0], geom.rx[1], turn(geom.rx[2])},
                      geom.side_length);
}

Baseline baseline(const ArrayGeometry& geom, std::size_t rx_a, std::size_t rx_b) {
    if (rx_a >= kNumReceivers || rx_b >= kNumReceivers)
        throw Error(ErrorKind::invalid_argument, "receiver index out of range");
    if (rx_a == rx_b) throw Error(ErrorKind::invalid_argument, "a baseline needs two distinct receivers");

    const Vec3 d = geom.rx[rx_b] - geom.rx[rx_a];
    Baseline bl;
    bl.rx_a = rx_a;
    bl.rx_b = rx_b;
    bl.length = norm(d);
    bl.direction = d / bl.length;
    bl.length_wavelengths = bl.length * geom.carrier_frequency / kSpeedOfLight;
    bl.phi_deg = fold_axis_angle(rad2deg(std::atan2(bl.direction.y, bl.direction.x)));
    return bl;
}

Baseline baseline(const ArrayGeometry& geom, BaselineId id) {
    switch (id) {
        case BaselineId::x_axis: return baseline(geom, 1, 0);
        case BaselineId::y_axis: return baseline(geom, 2, 0);
        case BaselineId::diagonal: return baseline(geom, 1, 2);
    }
    throw Error(ErrorKind::invalid_argument, "unknown baseline id");
}

double projected_angle(const Vec3& target, const Baseline& bl) {
    if (!(norm(target) > 0.0)) throw Error(ErrorKind::invalid_argument, "target at the array origin");
    return std::atan2(dot(target, bl.direction), target.z);
}

}  // namespace ivr
