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

#include "ivr/velocity.hpp"

#include <array>

namespace ivr {

namespace {

double sign_or_one(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Unit component of `axis` perpendicular to the look direction `u`.
Vec3 perpendicular_axis(const Vec3& axis, const Vec3& u) { return normalized(axis - dot(axis, u) * u); }

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

// Solves [r0; r1; r2] v = rhs by Cramer's rule.
Vec3 solve_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2, const Vec3& rhs) {
    const Vec3 c0{r0.x, r1.x, r2.x};
    const Vec3 c1{r0.y, r1.y, r2.y};
    const Vec3 c2{r0.z, r1.z, r2.z};
    const double d = det3(c0, c1, c2);
    if (std::abs(d) < 1e-9) throw Error(ErrorKind::non_invertible_projection, "look direction lies in the array plane");
    return {det3(rhs, c1, c2) / d, det3(c0, rhs, c2) / d, det3(c0, c1, rhs) / d};
}

}  // namespace

double interferometric_frequency(double omega, double d_lambda, double alpha) {
    return omega * d_lambda * std::cos(alpha);
}

double tangential_from_frequency(double f_omega, double range, double d_lambda) {
    if (!(range > 0.0)) throw Error(ErrorKind::invalid_argument, "range must be positive");
    if (!(d_lambda > 0.0)) throw Error(ErrorKind::invalid_argument, "baseline length must be positive");
    return f_omega * range / d_lambda;
}

double tangential_from_frequency(double f_omega, double range, double d_lambda, double phi_v_deg,
                                 double baseline_phi_deg) {
    const double v = tangential_from_frequency(f_omega, range, d_lambda);
    const double proj = std::cos(deg2rad(phi_v_deg - baseline_phi_deg));
    if (std::abs(proj) < 1e-6)
        throw Error(ErrorKind::non_invertible_projection, "heading is perpendicular to the baseline");
    return v / proj;
}

AxisComponents forward_components(double v_phi, double v_theta, double phi_deg, double theta_deg) {
    const double phi = deg2rad(phi_deg);
    const double c = std::cos(phi), s = std::sin(phi);
    if (theta_deg == 0.0) return {v_theta * c - v_phi * s, v_theta * s + v_phi * c};
    const double ct = std::cos(deg2rad(theta_deg));
    return {v_phi * c + v_theta * c * ct, v_phi * s + v_theta * s * ct};
}

double radial_velocity(double f_doppler, double wavelength) {
    if (!(wavelength > 0.0)) throw Error(ErrorKind::invalid_argument, "wavelength must be positive");
    return 0.5 * f_doppler * wavelength;
}

double heading_azimuth(double v_alpha_x, double v_alpha_y) {
    if (v_alpha_x == 0.0 && v_alpha_y == 0.0) throw Error(ErrorKind::undefined_heading, "no tangential motion");
    double deg = rad2deg(std::atan2(v_alpha_y, v_alpha_x));
    if (deg <= -180.0) deg += 360.0;
    return deg;
}

double tangential_magnitude(double v_alpha_x, double v_alpha_y) { return std::hypot(v_alpha_x, v_alpha_y); }

double attack_angle(double v_R, double v_theta) {
    if (v_R == 0.0 && v_theta == 0.0) throw Error(ErrorKind::undefined_attack_angle, "no motion");
    if (v_theta == 0.0) return v_R < 0.0 ? 90.0 : -90.0;
    return rad2deg(std::atan(-v_R / v_theta));
}

Velocity3DEstimate assemble(const VelocityComponents& c) {
    Velocity3DEstimate e;
    e.v_theta = tangential_magnitude(c.v_alpha_x, c.v_alpha_y);
    e.phi_v_deg = e.v_theta > 0.0 ? heading_azimuth(c.v_alpha_x, c.v_alpha_y) : 0.0;
    e.v_R = c.v_R;
    e.beta_deg = attack_angle(c.v_R, e.v_theta);
    e.speed = std::sqrt(e.v_theta * e.v_theta + c.v_R * c.v_R);
    return e;
}

PassPrior make_prior(const LinearTrajectory& traj) {
    PassPrior p;
    p.velocity = traj.velocity;
    if (auto tb = boresight_crossing(traj)) {
        p.t_ref = *tb;
    } else {
        const double v2 = dot(traj.velocity, traj.velocity);
        p.t_ref = v2 > 0.0 ? std::clamp(-dot(traj.p0, traj.velocity) / v2, traj.t_start, traj.t_end) : traj.t_start;
    }
    p.p_ref = traj.p0 + p.t_ref * traj.velocity;
    return p;
}

Reconstruction reconstruct(const BasebandRecording& rec, const ArrayGeometry& geom, const RadarConfig& cfg,
                           const EstimatorParams& params, const PassPrior& prior) {
    validate(rec);
    const double speed = norm(prior.velocity);
    if (!(speed > 0.0)) throw Error(ErrorKind::undefined_heading, "prior velocity is zero");
    const double exclusion = params.doppler_exclusion_hz < 0.0 ? cfg.highpass_cutoff : params.doppler_exclusion_hz;
    const bool real_mode = rec.mode == BasebandMode::real;

    Reconstruction out;
    const Spectrogram doppler = channel_spectrogram(rec, 0, params.spectrogram);
    out.t_peak = params.closest_approach == ClosestApproachMethod::doppler_peak
                     ? global_peak(doppler, exclusion).t
                     : estimate_closest_approach(rec, params.closest_approach, params.spectrogram, exclusion);
    const SpectralPeak dpk = peak_frequency(doppler, out.t_peak, params.interpolate, exclusion);

    // Calibrated measurement position from the a-priori track.
    const Vec3 dir = prior.velocity / speed;
    CalibrationReference ref;
    ref.t_ref = prior.t_ref;
    ref.range_ref = norm(prior.p_ref);
    ref.beta_deg = rad2deg(std::atan2(-dir.z, std::hypot(dir.x, dir.y)));
    out.calibration = dc_null_calibration(speed, +1, out.t_peak, ref);
    const Vec3 p = prior.p_ref + (speed * (out.t_peak - prior.t_ref)) * dir;
    out.look = normalized(p);
    const double range = out.calibration.range;

    // Real channels lose the Doppler sign; the analytic correlation inherits it.
    const double s_d = sign_or_one(dot(prior.velocity, out.look));
    out.f_doppler = real_mode ? s_d * std::abs(dpk.f) : dpk.f;

    const std::array<BaselineId, 3> ids{BaselineId::x_axis, BaselineId::y_axis, BaselineId::diagonal};
    std::array<double, 3> freq{};
    std::array<Vec3, 3> axes{};
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const Baseline bl = baseline(geom, ids[i]);
        axes[i] = perpendicular_axis(bl.direction, out.look);
        const auto corr = correlate_channels(rec, bl.rx_a, bl.rx_b, params.correlation);
        const Spectrogram cs = spectrogram(std::span<const cplx>(corr), rec.sample_rate, rec.t0, params.spectrogram);
        double f = peak_frequency(cs, out.t_peak, params.interpolate).f;
        if (real_mode) {
            if (params.correlation == CorrelationPath::analytic)
                f *= s_d;
            else
                f = std::abs(f) * sign_or_one(dot(prior.velocity, axes[i]));
        }
        freq[i] = f;
    }
    out.f_x = freq[0];
    out.f_y = freq[1];
    out.f_diagonal = freq[2];

    const double v_r = radial_velocity(out.f_doppler, geom.wavelength);
    const double v_ax = tangential_from_frequency(out.f_x, range, baseline(geom, BaselineId::x_axis).length_wavelengths);
    const double v_ay = tangential_from_frequency(out.f_y, range, baseline(geom, BaselineId::y_axis).length_wavelengths);
    const Vec3 v = solve_rows(out.look, axes[0], axes[1], {v_r, v_ax, v_ay});

    out.components.v_alpha_x = v.x;
    out.components.v_alpha_y = v.y;
    out.components.v_R = v.z;
    out.components.range_used = range;
    out.estimate = assemble(out.components);
    return out;
}

}  // namespace ivr
