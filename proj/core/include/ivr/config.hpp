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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "ivr/experiment.hpp"
#include "ivr/geometry.hpp"
#include "ivr/scene.hpp"
#include "ivr/synthesis.hpp"
#include "ivr/velocity.hpp"

namespace ivr {

// INI schema. Every key is optional; unknown sections or keys are errors.
//
// [array]      f0_hz, side_length_wavelengths, rx3_rotation_deg
// [radar]      sample_rate, hpbw_deg, mode (complex|real), highpass_cutoff_hz,
//              propagation_loss (true|false), snr_db (number or "none"), seed
// [scene]      t_start, t_end, then per target N (1-based):
//              targetN.p0 = x y z            targetN.velocity = vx vy vz
//              or targetN.speed, targetN.phi_v_deg, targetN.beta_deg,
//                 targetN.zenith_range, targetN.t_zenith
//              targetN.reflectivity = re [im]
// [estimator]  window_s, overlap, nfft, window (boxcar|hann), interpolate,
//              closest_approach (doppler_peak|envelope_peak),
//              correlation (analytic|raw), doppler_exclusion_hz, prior_target
// [experiment] kind, angles_deg (space separated), passes_per_direction,
//              speed, range_start, range_end, pass_duration, threads
//
// Without targets the scene holds the nominal broadside pass: 501.31 mm/s
// along +x, 755 mm range, crossing at the middle of [t_start, t_end].
struct ProjectConfig {
    double carrier_frequency = 41.8e9;
    double side_length_wavelengths = 7.26;
    double rx3_rotation_deg = 0.0;
    RadarConfig radar;
    Scene scene;
    TimeSpan span{0.0, 4.0};
    EstimatorParams estimator;
    std::size_t prior_target = 0;  // 0-based index of the target the estimator follows
    ExperimentConfig experiment;
};

ProjectConfig default_project_config();

ProjectConfig parse_config(std::istream& is);
ProjectConfig load_config(const std::filesystem::path& path);

// Nominal array used by the estimator.
ArrayGeometry nominal_array(const ProjectConfig& cfg);
// Array used for synthesis (includes the configured mount misalignment).
ArrayGeometry simulated_array(const ProjectConfig& cfg);

}  // namespace ivr
