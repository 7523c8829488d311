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

#pragma once

#include <array>
#include <cstddef>

#include "ivr/types.hpp"

namespace ivr {

// Planar 2x2 aperture: one transmitter and three receivers in the z = 0
// plane, boresight along +z. Receiver index 0..2 corresponds to Rx1..Rx3
// and to the channel order of a BasebandRecording.
//
// Square layout (side L, centred on the origin):
//
//        Rx2 (-L/2,+L/2) ---- Rx1 (+L/2,+L/2)
//             |                    |
//        Tx  (-L/2,-L/2) ---- Rx3 (+L/2,-L/2)
//
// Rx2->Rx1 is the x baseline (Phi = 0), Rx3->Rx1 the y baseline (Phi = 90 deg)
// and Rx2->Rx3 the diagonal (Phi = -45 deg, D = sqrt(2) L).
struct ArrayGeometry {
    double carrier_frequency = 0.0;  // Hz
    double wavelength = 0.0;         // m
    Vec3 tx;
    std::array<Vec3, 3> rx;
    double side_length = 0.0;  // m, nominal
};

inline constexpr std::size_t kNumReceivers = 3;

ArrayGeometry make_square_array(double side_length_wavelengths, double carrier_frequency);

// Arbitrary planar layout; validates z = 0 and distinct element positions.
ArrayGeometry make_array(double carrier_frequency, const Vec3& tx, const std::array<Vec3, 3>& rx,
                         double nominal_side_length);

// Rotates the Tx and Rx3 elements about the midpoint of the Tx-Rx3 edge,
// modelling a twisted mount for those two horns.
ArrayGeometry with_rx3_mount_rotation(const ArrayGeometry& geom, double rotation_deg);

struct Baseline {
    std::size_t rx_a = 0;
    std::size_t rx_b = 0;
    Vec3 direction;          // unit vector from rx_a to rx_b
    double phi_deg = 0.0;    // axis angle, ccw from +x, folded to [-90, 90]
    double length = 0.0;     // m
    double length_wavelengths = 0.0;
};

Baseline baseline(const ArrayGeometry& geom, std::size_t rx_a, std::size_t rx_b);

enum class BaselineId { x_axis, y_axis, diagonal };

Baseline baseline(const ArrayGeometry& geom, BaselineId id);

// Angle between +z and the projection of `target` (relative to the array
// centre) onto span{B, z}. Positive toward the baseline direction.
double projected_angle(const Vec3& target, const Baseline& bl);

}  // namespace ivr
