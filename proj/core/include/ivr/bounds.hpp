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

#include <cstddef>
#include <span>
#include <vector>

namespace ivr {

// Rayleigh resolution 1/T of a length-T observation.
double doppler_resolution(double window_len);

// 2.355 omega / (pi theta_bw).
double interferometric_resolution(double omega, double theta_bw_rad);

// Gaussian correlation spectrum centred on f_omega:
// sqrt(2 pi sigma^2 / omega^2) exp(-2 pi^2 sigma^2 (f - f_omega)^2 / omega^2).
double correlation_spectrum(double f, double sigma, double omega, double f_omega);

// Full width of correlation_spectrum() between its half-maximum points,
// found numerically by bracketing and bisection.
double correlation_spectrum_half_power_width(double sigma, double omega);

// Moments of the squared two-way power pattern |A(theta)|^2 over
// [-pi/2, pi/2] (radians): energy, first and second moment.
struct PatternMoments {
    double mu = 0.0;
    double zeta_sq = 0.0;
    double energy = 0.0;
};

PatternMoments pattern_moments(double hpbw_deg);

// Moments of |s(t)|^2 of a sampled envelope, t measured from the first sample.
struct TimeMoments {
    double mu = 0.0;
    double zeta_sq = 0.0;
    double energy = 0.0;
};

TimeMoments time_moments(std::span<const double> envelope, double sample_rate);

// Peak per-sample SNR (complex noise) to the noise-normalised signal density
// 2|eta|^2/N0 used by the bounds, in 1/s.
double snr_density(double snr_db, double sample_rate);

struct CrlbValue {
    double variance = 0.0;  // Hz^2
    double std_velocity = 0.0;  // m/s
};

CrlbValue doppler_crlb(double snr_density, const TimeMoments& tm, double f0);
CrlbValue angular_crlb(double snr_density, const PatternMoments& pm, double range, double d_lambda);

struct CrlbReport {
    double snr_db = 0.0;
    double sample_rate = 0.0;
    double range = 0.0;
    double d_lambda = 0.0;
    double f0 = 0.0;
    double var_f_d = 0.0;
    double std_v_R = 0.0;
    double var_f_omega = 0.0;
    double std_v_alpha = 0.0;
};

CrlbReport crlb_report(double snr_db, double sample_rate, double hpbw_deg, double range, double d_lambda, double f0,
                       const TimeMoments& tm);

struct BasebandRecording;

// |channel| scaled to unit peak (analytic magnitude for real recordings).
std::vector<double> normalized_envelope(const BasebandRecording& rec, std::size_t ch);

}  // namespace ivr
