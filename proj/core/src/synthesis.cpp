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

#include "ivr/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

#include "ivr/random.hpp"

namespace ivr {

namespace {

// theta_BW ~= 2.355 sigma for a Gaussian beam.
constexpr double kHpbwToSigma = 2.355;

class Fnv1a {
public:
    void add(double v) { add(std::bit_cast<std::uint64_t>(v)); }
    void add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h_ ^= (v >> (8 * i)) & 0xffu;
            h_ *= 0x100000001B3ull;
        }
    }
    void add(const Vec3& v) {
        add(v.x);
        add(v.y);
        add(v.z);
    }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xCBF29CE484222325ull;
};

double off_boresight(const Vec3& from, const Vec3& p) {
    const Vec3 d = p - from;
    return std::atan2(std::hypot(d.x, d.y), d.z);
}

}  // namespace

const char* to_string(BasebandMode mode) { return mode == BasebandMode::complex_iq ? "complex" : "real"; }

BasebandMode parse_baseband_mode(const std::string& s) {
    if (s == "complex" || s == "complex_iq") return BasebandMode::complex_iq;
    if (s == "real") return BasebandMode::real;
    throw Error(ErrorKind::invalid_argument, "unknown baseband mode '" + s + "' (expected complex|real)");
}

RadarConfig ideal_radar_config() {
    RadarConfig cfg;
    cfg.mode = BasebandMode::complex_iq;
    cfg.highpass_cutoff = 0.0;
    cfg.snr_db.reset();
    return cfg;
}

void validate(const RadarConfig& cfg) {
    if (!(cfg.sample_rate > 0.0) || !std::isfinite(cfg.sample_rate))
        throw Error(ErrorKind::invalid_argument, "sample rate must be positive");
    if (!(cfg.hpbw_deg > 0.0 && cfg.hpbw_deg < 180.0))
        throw Error(ErrorKind::invalid_argument, "hpbw must lie in (0, 180) degrees");
    if (!(cfg.highpass_cutoff >= 0.0 && cfg.highpass_cutoff < 0.5 * cfg.sample_rate))
        throw Error(ErrorKind::invalid_argument, "high-pass cutoff must lie in [0, fs/2)");
    if (cfg.snr_db && !std::isfinite(*cfg.snr_db)) throw Error(ErrorKind::invalid_argument, "snr must be finite");
}

void validate(const BasebandRecording& rec) {
    if (!(rec.sample_rate > 0.0)) throw Error(ErrorKind::invalid_argument, "recording sample rate must be positive");
    for (const auto& ch : rec.channels) {
        if (ch.size() != rec.channels[0].size())
            throw Error(ErrorKind::invalid_argument, "recording channels differ in length");
        for (const cplx& s : ch) {
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                throw Error(ErrorKind::invalid_argument, "recording holds non-finite samples");
            if (rec.mode == BasebandMode::real && s.imag() != 0.0)
                throw Error(ErrorKind::invalid_argument, "real-mode recording has imaginary content");
        }
    }
}

double round_trip_delay(const Vec3& tx, const Vec3& rx, const Vec3& p) {
    const double a = norm(p - tx);
    const double b = norm(p - rx);
    if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::invalid_argument, "scatterer coincides with an antenna");
    return (a + b) / kSpeedOfLight;
}

double beam_sigma_rad(double hpbw_deg) {
    if (!(hpbw_deg > 0.0)) throw Error(ErrorKind::invalid_argument, "hpbw must be positive");
    return deg2rad(hpbw_deg) / kHpbwToSigma;
}

double beam_amplitude(double theta_off_boresight, double hpbw_deg) {
    const double sigma = beam_sigma_rad(hpbw_deg);
    return std::exp(-theta_off_boresight * theta_off_boresight / (4.0 * sigma * sigma));
}

void highpass_first_order(std::span<cplx> samples, double cutoff_hz, double sample_rate) {
    if (cutoff_hz <= 0.0 || samples.empty()) return;
    const double k = std::tan(kPi * cutoff_hz / sample_rate);
    const double b0 = 1.0 / (1.0 + k);
    const double a1 = (1.0 - k) / (1.0 + k);
    cplx x_prev = samples[0];
    cplx y_prev{0.0, 0.0};
    for (cplx& s : samples) {
        const cplx y = b0 * (s - x_prev) + a1 * y_prev;
        x_prev = s;
        y_prev = y;
        s = y;
    }
}

std::uint64_t config_hash(const Scene& scene, const ArrayGeometry& geom, const RadarConfig& cfg,
                          const TimeSpan& span) {
    Fnv1a h;
    h.add(geom.carrier_frequency);
    h.add(geom.tx);
    for (const auto& r : geom.rx) h.add(r);
    h.add(cfg.sample_rate);
    h.add(cfg.hpbw_deg);
    h.add(static_cast<std::uint64_t>(cfg.mode));
    h.add(cfg.highpass_cutoff);
    h.add(static_cast<std::uint64_t>(cfg.propagation_loss));
    h.add(cfg.snr_db.value_or(std::numeric_limits<double>::infinity()));
    h.add(cfg.rng_seed);
    h.add(span.t0);
    h.add(span.t1);
    for (const auto& t : scene.targets) {
        h.add(t.trajectory.p0);
        h.add(t.trajectory.velocity);
        h.add(t.trajectory.t_start);
        h.add(t.trajectory.t_end);
        h.add(t.reflectivity.real());
        h.add(t.reflectivity.imag());
    }
    return h.value();
}

BasebandRecording synthesize(const Scene& scene, const ArrayGeometry& geom, const RadarConfig& cfg,
                             const TimeSpan& span) {
    validate(cfg);
    if (!(span.t1 > span.t0)) throw Error(ErrorKind::invalid_argument, "empty synthesis span");
    const double fs = cfg.sample_rate;
    const auto n = static_cast<std::size_t>(std::floor((span.t1 - span.t0) * fs + 1e-9)) + 1;
    if (n < 2) throw Error(ErrorKind::invalid_argument, "synthesis span yields fewer than two samples");
    const double t_last = span.t0 + static_cast<double>(n - 1) / fs;
    for (const auto& target : scene.targets) {
        if (span.t0 < target.trajectory.t_start || t_last > target.trajectory.t_end)
            throw Error(ErrorKind::out_of_range, "synthesis span exceeds a target's trajectory span");
    }

    BasebandRecording rec;
    rec.sample_rate = fs;
    rec.t0 = span.t0;
    rec.mode = cfg.mode;
    rec.provenance = {config_hash(scene, geom, cfg, span), cfg.rng_seed};

    const double lambda = geom.wavelength;
    const double two_pi_over_lambda = 2.0 * kPi / lambda;

    for (std::size_t ch = 0; ch < kNumReceivers; ++ch) {
        auto& out = rec.channels[ch];
        out.assign(n, cplx{0.0, 0.0});
        const Vec3& rx = geom.rx[ch];
        for (const auto& target : scene.targets) {
            const LinearTrajectory& tr = target.trajectory;
            for (std::size_t k = 0; k < n; ++k) {
                const double t = span.t0 + static_cast<double>(k) / fs;
                const Vec3 p = tr.p0 + t * tr.velocity;
                const Vec3 d_tx = p - geom.tx;
                const Vec3 d_rx = p - rx;
                const double r_tx = norm(d_tx);
                const double r_rx = norm(d_rx);
                if (!(r_tx > 0.0) || !(r_rx > 0.0))
                    throw Error(ErrorKind::invalid_argument, "scatterer coincides with an antenna");

                // Instantaneous baseband frequency f0 * d(tau)/dt.
                const double f_inst = (dot(tr.velocity, d_tx) / r_tx + dot(tr.velocity, d_rx) / r_rx) / lambda;
                if (std::abs(f_inst) > 0.5 * fs) {
                    std::ostringstream msg;
                    msg << "channel " << ch + 1 << " reaches " << f_inst << " Hz at t=" << t
                        << " s, beyond Nyquist " << 0.5 * fs << " Hz";
                    throw Error(ErrorKind::aliasing, msg.str());
                }

                double amp = beam_amplitude(off_boresight(geom.tx, p), cfg.hpbw_deg) *
                             beam_amplitude(off_boresight(rx, p), cfg.hpbw_deg);
                if (cfg.propagation_loss) amp /= r_tx * r_rx;
                out[k] += target.reflectivity * std::polar(amp, two_pi_over_lambda * (r_tx + r_rx));
            }
        }
        highpass_first_order(out, cfg.highpass_cutoff, fs);
    }

    if (cfg.mode == BasebandMode::real) {
        for (auto& chan : rec.channels)
            for (cplx& s : chan) s = {s.real(), 0.0};
    }

    if (cfg.snr_db) {
        const double snr = std::pow(10.0, *cfg.snr_db / 10.0);
        for (std::size_t ch = 0; ch < kNumReceivers; ++ch) {
            auto& chan = rec.channels[ch];
            double peak = 0.0;
            for (const cplx& s : chan) peak = std::max(peak, std::abs(s));
            const double noise_var = peak * peak / snr;
            std::mt19937_64 gen(derive_seed(cfg.rng_seed, {static_cast<std::uint64_t>(ch)}));
            if (cfg.mode == BasebandMode::complex_iq) {
                std::normal_distribution<double> dist(0.0, std::sqrt(0.5 * noise_var));
                for (cplx& s : chan) {
                    const double re = dist(gen);
                    const double im = dist(gen);
                    s += cplx{re, im};
                }
            } else {
                std::normal_distribution<double> dist(0.0, std::sqrt(noise_var));
                for (cplx& s : chan) s = {s.real() + dist(gen), 0.0};
            }
        }
    }
    return rec;
}

}  // namespace ivr
