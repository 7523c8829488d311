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

#include "ivr/types.hpp"

namespace ivr {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::out_of_range: return "out-of-range";
        case ErrorKind::aliasing: return "aliasing";
        case ErrorKind::detection_failure: return "detection-failure";
        case ErrorKind::non_invertible_projection: return "non-invertible-projection";
        case ErrorKind::undefined_heading: return "undefined-heading";
        case ErrorKind::undefined_attack_angle: return "undefined-attack-angle";
        case ErrorKind::degenerate_envelope: return "degenerate-envelope";
        case ErrorKind::degenerate_pattern: return "degenerate-pattern";
        case ErrorKind::numeric: return "numeric";
        case ErrorKind::io: return "io";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    if (!(n > 0.0)) throw Error(ErrorKind::invalid_argument, "cannot normalize a zero-length vector");
    return a / n;
}

Vec3 rotate_z(const Vec3& a, double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    return {c * a.x - s * a.y, s * a.x + c * a.y, a.z};
}

}  // namespace ivr
