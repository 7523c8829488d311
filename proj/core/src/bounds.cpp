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

#include "ivr/bounds.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ivr/dsp.hpp"
#include "ivr/synthesis.hpp"
#include "ivr/types.hpp"

namespace ivr {

namespace {

constexpr double kTwoPiSq = 4.0 * kPi * kPi;

template <typename F>
double integrate(F f, double a, double b) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12, &err);
    if (!std::isfinite(v) || err > 1e-8 * std::max(1.0, std::abs(v)))
        throw Error(ErrorKind::numeric, "pattern moment integral did not converge");
    return v;
}

}  // namespace

double doppler_resolution(double window_len) {
    if (!(window_len > 0.0)) throw Error(ErrorKind::invalid_argument, "window length must be positive");
    return 1.0 / window_len;
}

double interferometric_resolution(double omega, double theta_bw_rad) {
    if (!(omega >= 0.0)) throw Error(ErrorKind::invalid_argument, "omega must be non-negative");
    if (!(theta_bw_rad > 0.0)) throw Error(ErrorKind::invalid_argument, "beamwidth must be positive");
    return 2.355 * omega / (kPi * theta_bw_rad);
}

double correlation_spectrum(double f, double sigma, double omega, double f_omega) {
    if (!(omega > 0.0) || !(sigma > 0.0)) throw Error(ErrorKind::invalid_argument, "sigma and omega must be positive");
    const double r = sigma * sigma / (omega * omega);
    const double d = f - f_omega;
    return std::sqrt(2.0 * kPi * r) * std::exp(-2.0 * kPi * kPi * r * d * d);
}

double correlation_spectrum_half_power_width(double sigma, double omega) {
    const double peak = correlation_spectrum(0.0, sigma, omega, 0.0);
    auto g = [&](double d) { return correlation_spectrum(d, sigma, omega, 0.0) - 0.5 * peak; };
    double lo = 0.0;
    double hi = omega / sigma;
    while (g(hi) > 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo + hi;
}

PatternMoments pattern_moments(double hpbw_deg) {
    if (!(hpbw_deg > 0.0)) throw Error(ErrorKind::degenerate_pattern, "beamwidth must be positive");
    const double sigma = beam_sigma_rad(hpbw_deg);
    // Two-way power pattern A = exp(-theta^2 / 2 sigma^2); weight |A|^2.
    auto w = [sigma](double th) { return std::exp(-th * th / (sigma * sigma)); };
    const double a = -0.5 * kPi, b = 0.5 * kPi;
    PatternMoments m;
    m.energy = integrate(w, a, b);
    m.mu = integrate([&](double th) { return th * w(th); }, a, b);
    m.zeta_sq = integrate([&](double th) { return th * th * w(th); }, a, b);
    if (!(m.energy > 0.0) || !(m.zeta_sq > 0.0)) throw Error(ErrorKind::degenerate_pattern, "pattern has no energy");
    return m;
}

TimeMoments time_moments(std::span<const double> envelope, double sample_rate) {
    if (envelope.size() < 2) throw Error(ErrorKind::degenerate_envelope, "envelope needs at least two samples");
    if (!(sample_rate > 0.0)) throw Error(ErrorKind::invalid_argument, "sample rate must be positive");
    const double dt = 1.0 / sample_rate;
    TimeMoments m;
    // Trapezoid rule on |s|^2, t^1 and t^2 weights.
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        const double w = (i == 0 || i + 1 == envelope.size()) ? 0.5 * dt : dt;
        const double t = static_cast<double>(i) * dt;
        const double p = envelope[i] * envelope[i];
        if (!std::isfinite(p)) throw Error(ErrorKind::numeric, "non-finite envelope sample");
        m.energy += w * p;
        m.mu += w * t * p;
        m.zeta_sq += w * t * t * p;
    }
    if (!(m.energy > 0.0)) throw Error(ErrorKind::degenerate_envelope, "envelope has no energy");
    return m;
}

double snr_density(double snr_db, double sample_rate) {
    if (!(sample_rate > 0.0)) throw Error(ErrorKind::invalid_argument, "sample rate must be positive");
    return 2.0 * std::pow(10.0, snr_db / 10.0) * sample_rate;
}

CrlbValue doppler_crlb(double snr_dens, const TimeMoments& tm, double f0) {
    if (!(snr_dens > 0.0)) throw Error(ErrorKind::invalid_argument, "snr must be positive");
    if (!(f0 > 0.0)) throw Error(ErrorKind::invalid_argument, "carrier frequency must be positive");
    const double spread = tm.zeta_sq - tm.mu * tm.mu / tm.energy;
    if (!(tm.energy > 0.0) || !(spread > 0.0)) throw Error(ErrorKind::degenerate_envelope, "envelope has no time spread");
    CrlbValue v;
    v.variance = 1.0 / (kTwoPiSq * snr_dens * spread);
    v.std_velocity = kSpeedOfLight / (2.0 * f0) * std::sqrt(v.variance);
    return v;
}

CrlbValue angular_crlb(double snr_dens, const PatternMoments& pm, double range, double d_lambda) {
    if (!(snr_dens > 0.0)) throw Error(ErrorKind::invalid_argument, "snr must be positive");
    if (!(range > 0.0) || !(d_lambda > 0.0)) throw Error(ErrorKind::invalid_argument, "range and baseline must be positive");
    const double spread = pm.zeta_sq - pm.mu * pm.mu / pm.energy;
    if (!(pm.energy > 0.0) || !(spread > 0.0)) throw Error(ErrorKind::degenerate_pattern, "pattern has no angular spread");
    CrlbValue v;
    v.variance = 1.0 / (kTwoPiSq * snr_dens * spread);
    v.std_velocity = range / d_lambda * std::sqrt(v.variance);
    return v;
}

CrlbReport crlb_report(double snr_db, double sample_rate, double hpbw_deg, double range, double d_lambda, double f0,
                       const TimeMoments& tm) {
    CrlbReport r;
    r.snr_db = snr_db;
    r.sample_rate = sample_rate;
    r.range = range;
    r.d_lambda = d_lambda;
    r.f0 = f0;
    const double dens = snr_density(snr_db, sample_rate);
    const auto d = doppler_crlb(dens, tm, f0);
    const auto a = angular_crlb(dens, pattern_moments(hpbw_deg), range, d_lambda);
    r.var_f_d = d.variance;
    r.std_v_R = d.std_velocity;
    r.var_f_omega = a.variance;
    r.std_v_alpha = a.std_velocity;
    return r;
}

std::vector<double> normalized_envelope(const BasebandRecording& rec, std::size_t ch) {
    if (ch >= kNumReceivers) throw Error(ErrorKind::invalid_argument, "channel index out of range");
    const auto& x = rec.channels[ch];
    std::vector<double> env(x.size());
    if (rec.mode == BasebandMode::complex_iq) {
        for (std::size_t i = 0; i < x.size(); ++i) env[i] = std::abs(x[i]);
    } else {
        std::vector<double> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i].real();
        const auto z = analytic_signal(r);
        for (std::size_t i = 0; i < x.size(); ++i) env[i] = std::abs(z[i]);
    }
    double peak = 0.0;
    for (double v : env) peak = std::max(peak, v);
    if (!(peak > 0.0)) throw Error(ErrorKind::degenerate_envelope, "channel is identically zero");
    for (double& v : env) v /= peak;
    return env;
}

}  // namespace ivr
