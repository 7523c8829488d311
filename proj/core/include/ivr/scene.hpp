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
#include <optional>
#include <vector>

#include "ivr/geometry.hpp"
#include "ivr/types.hpp"

namespace ivr {

// Constant-velocity track; `p0` is the position at t = 0 (not at t_start).
struct LinearTrajectory {
    Vec3 p0;
    Vec3 velocity;
    double t_start = 0.0;
    double t_end = 0.0;
};

// Validating constructor.
LinearTrajectory make_trajectory(const Vec3& p0, const Vec3& velocity, double t_start, double t_end);

// Track that crosses the array boresight at height `zenith_range` at time
// `t_zenith`, heading `phi_v_deg` (ccw from +x) and descending toward the
// array plane at `beta_deg`.
LinearTrajectory make_boresight_pass(double speed, double phi_v_deg, double beta_deg, double zenith_range,
                                     double t_zenith, double t_start, double t_end);

Vec3 position_at(const LinearTrajectory& traj, double t);
double range_at(const LinearTrajectory& traj, double t);
// d|p|/dt; positive when receding.
double range_rate_at(const LinearTrajectory& traj, double t);

// Time at which the track crosses the +z axis, if it does inside its span.
std::optional<double> boresight_crossing(const LinearTrajectory& traj);

struct PointTarget {
    LinearTrajectory trajectory;
    cplx reflectivity{1.0, 0.0};
};

struct Scene {
    std::vector<PointTarget> targets;
};

struct TruthRecord {
    double phi_v_deg = 0.0;
    double beta_deg = 0.0;
    double speed = 0.0;
    double v_theta = 0.0;  // horizontal (array-plane) speed
    double v_R = 0.0;      // range rate on boresight, +receding
    double t_closest = 0.0;
    double range_closest = 0.0;
    std::optional<double> t_boresight;
    std::array<double, 3> alpha_closest{};  // rad, indexed by BaselineId
};

TruthRecord ground_truth(const LinearTrajectory& traj, const ArrayGeometry& geom);

}  // namespace ivr
