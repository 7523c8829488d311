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

#include <optional>

#include "ivr/dsp.hpp"
#include "ivr/geometry.hpp"
#include "ivr/scene.hpp"
#include "ivr/synthesis.hpp"

namespace ivr {

// f = omega * D_lambda * cos(alpha).
double interferometric_frequency(double omega, double d_lambda, double alpha);

// Small-angle inversion v = f R / D_lambda for a single baseline.
double tangential_from_frequency(double f_omega, double range, double d_lambda);

// Same, divided by the projection factor cos(phi_v - Phi) of a baseline at
// axis angle Phi. Throws non_invertible_projection when the factor is below 1e-6.
double tangential_from_frequency(double f_omega, double range, double d_lambda, double phi_v_deg, double baseline_phi_deg);

struct AxisComponents {
    double v_alpha_x = 0.0;
    double v_alpha_y = 0.0;
};

// Per-axis components of a velocity given in spherical (v_phi, v_theta) at the
// target position (phi, theta). At theta = 0 the decomposition is singular in
// phi and the Cartesian tangential components are returned instead:
// v_theta (cos phi, sin phi) + v_phi (-sin phi, cos phi).
AxisComponents forward_components(double v_phi, double v_theta, double phi_deg, double theta_deg);

// v_R = f_d lambda / 2, positive when receding.
double radial_velocity(double f_doppler, double wavelength);

// atan2(v_alpha_y, v_alpha_x) in degrees, in (-180, 180].
double heading_azimuth(double v_alpha_x, double v_alpha_y);

double tangential_magnitude(double v_alpha_x, double v_alpha_y);

// atan(-v_R / v_theta) in degrees; +-90 when v_theta = 0.
double attack_angle(double v_R, double v_theta);

struct VelocityComponents {
    double v_alpha_x = 0.0;
    double v_alpha_y = 0.0;
    double v_R = 0.0;
    double range_used = 0.0;  // m
    BaselineId x_source = BaselineId::x_axis;
    BaselineId y_source = BaselineId::y_axis;
};

struct Velocity3DEstimate {
    double phi_v_deg = 0.0;
    double v_theta = 0.0;
    double beta_deg = 0.0;
    double speed = 0.0;
    double v_R = 0.0;
    std::optional<double> std_phi_v_deg;
    std::optional<double> std_v_theta;
    std::optional<double> std_beta_deg;
    std::optional<double> std_speed;
};

// phi_v, v_theta, beta and speed = sqrt(v_theta^2 + v_R^2).
Velocity3DEstimate assemble(const VelocityComponents& c);

struct EstimatorParams {
    SpectrogramParams spectrogram;
    bool interpolate = false;
    ClosestApproachMethod closest_approach = ClosestApproachMethod::doppler_peak;
    CorrelationPath correlation = CorrelationPath::analytic;
    // Bins with |f| below this are ignored when locating the Doppler peak.
    // Negative selects the radar's high-pass cutoff.
    double doppler_exclusion_hz = -1.0;
};

// The a-priori knowledge of the pass used for calibration: nominal velocity
// and the point and time at which the track crosses broadside.
struct PassPrior {
    Vec3 velocity;
    Vec3 p_ref;
    double t_ref = 0.0;
};

// Prior built from a trajectory; the reference is its boresight crossing, or
// closest approach when it never crosses.
PassPrior make_prior(const LinearTrajectory& traj);

struct Reconstruction {
    Velocity3DEstimate estimate;
    VelocityComponents components;  // array-frame components
    double t_peak = 0.0;
    double f_doppler = 0.0;          // Hz, signed
    double f_x = 0.0;                // Hz, Rx2->Rx1 baseline, signed
    double f_y = 0.0;                // Hz, Rx3->Rx1 baseline, signed
    double f_diagonal = 0.0;         // Hz, Rx2->Rx3 baseline, signed
    Calibration calibration;
    Vec3 look;                       // unit vector to the calibrated position
};

Reconstruction reconstruct(const BasebandRecording& rec, const ArrayGeometry& geom, const RadarConfig& cfg,
                           const EstimatorParams& params, const PassPrior& prior);

}  // namespace ivr
