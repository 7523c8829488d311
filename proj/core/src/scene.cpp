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

#include "ivr/scene.hpp"

#include <algorithm>

namespace ivr {

LinearTrajectory make_trajectory(const Vec3& p0, const Vec3& velocity, double t_start, double t_end) {
    if (!is_finite(p0) || !is_finite(velocity)) throw Error(ErrorKind::invalid_argument, "trajectory is not finite");
    if (!(t_end > t_start)) throw Error(ErrorKind::invalid_argument, "trajectory span must satisfy t_end > t_start");
    return {p0, velocity, t_start, t_end};
}

LinearTrajectory make_boresight_pass(double speed, double phi_v_deg, double beta_deg, double zenith_range,
                                     double t_zenith, double t_start, double t_end) {
    if (!(zenith_range > 0.0)) throw Error(ErrorKind::invalid_argument, "zenith range must be positive");
    if (!(speed >= 0.0)) throw Error(ErrorKind::invalid_argument, "speed must be non-negative");
    const double phi = deg2rad(phi_v_deg);
    const double beta = deg2rad(beta_deg);
    const Vec3 v{speed * std::cos(beta) * std::cos(phi), speed * std::cos(beta) * std::sin(phi),
                 -speed * std::sin(beta)};
    const Vec3 at_zenith{0.0, 0.0, zenith_range};
    return make_trajectory(at_zenith - t_zenith * v, v, t_start, t_end);
}

Vec3 position_at(const LinearTrajectory& traj, double t) {
    if (t < traj.t_start || t > traj.t_end) throw Error(ErrorKind::out_of_range, "time outside trajectory span");
    return traj.p0 + t * traj.velocity;
}

double range_at(const LinearTrajectory& traj, double t) { return norm(position_at(traj, t)); }

double range_rate_at(const LinearTrajectory& traj, double t) {
    const Vec3 p = position_at(traj, t);
    const double r = norm(p);
    if (!(r > 0.0)) throw Error(ErrorKind::invalid_argument, "target at the array origin");
    return dot(p, traj.velocity) / r;
}

std::optional<double> boresight_crossing(const LinearTrajectory& traj) {
    const double vxy2 = traj.velocity.x * traj.velocity.x + traj.velocity.y * traj.velocity.y;
    if (vxy2 == 0.0) {
        if (traj.p0.x == 0.0 && traj.p0.y == 0.0) return traj.t_start;
        return std::nullopt;
    }
    const double t = -(traj.p0.x * traj.velocity.x + traj.p0.y * traj.velocity.y) / vxy2;
    if (t < traj.t_start || t > traj.t_end) return std::nullopt;
    const Vec3 p = traj.p0 + t * traj.velocity;
    const double scale = std::max(norm(traj.p0), 1.0);
    if (std::hypot(p.x, p.y) > 1e-9 * scale || !(p.z > 0.0)) return std::nullopt;
    return t;
}

TruthRecord ground_truth(const LinearTrajectory& traj, const ArrayGeometry& geom) {
    const Vec3& v = traj.velocity;
    const double speed = norm(v);
    if (!(speed > 0.0)) throw Error(ErrorKind::undefined_heading, "static trajectory has no heading");

    TruthRecord tr;
    tr.speed = speed;
    tr.v_theta = std::hypot(v.x, v.y);
    tr.v_R = v.z;
    tr.phi_v_deg = tr.v_theta > 0.0 ? rad2deg(std::atan2(v.y, v.x)) : 0.0;
    if (tr.phi_v_deg <= -180.0) tr.phi_v_deg += 360.0;
    tr.beta_deg = rad2deg(std::atan2(-v.z, tr.v_theta));

    const double t_unclamped = -dot(traj.p0, v) / (speed * speed);
    tr.t_closest = std::clamp(t_unclamped, traj.t_start, traj.t_end);
    const Vec3 pc = position_at(traj, tr.t_closest);
    tr.range_closest = norm(pc);
    tr.t_boresight = boresight_crossing(traj);
    if (tr.range_closest > 0.0) {
        for (auto id : {BaselineId::x_axis, BaselineId::y_axis, BaselineId::diagonal})
            tr.alpha_closest[static_cast<std::size_t>(id)] = projected_angle(pc, baseline(geom, id));
    }
    return tr;
}

}  // namespace ivr
