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

#include "ivr/dsp.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "fft.hpp"
#include "ivr/numfmt.hpp"

namespace ivr {

namespace {

std::vector<double> make_window(WindowKind kind, std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (kind == WindowKind::hann && n > 1) {
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return w;
}

// Shared framing for real and complex input; `one_sided` selects the output
// half. `get` reads sample i as complex.
template <typename Get>
Spectrogram stft(std::size_t n, Get get, bool one_sided, double fs, double t0, const SpectrogramParams& p) {
    if (!(fs > 0.0)) throw Error(ErrorKind::invalid_argument, "sample rate must be positive");
    if (!(p.overlap >= 0.0 && p.overlap <= 0.95)) throw Error(ErrorKind::invalid_argument, "overlap must lie in [0, 0.95]");
    const auto nw = static_cast<std::size_t>(std::llround(p.window_len * fs));
    if (nw < 8) throw Error(ErrorKind::invalid_argument, "window shorter than 8 samples");
    if (p.nfft < nw) throw Error(ErrorKind::invalid_argument, "nfft smaller than the window");
    if (n < nw) throw Error(ErrorKind::invalid_argument, "series shorter than one window");
    const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(nw) * (1.0 - p.overlap))));
    const std::size_t nframes = (n - nw) / hop + 1;
    const std::size_t nfft = p.nfft;

    Spectrogram s;
    s.sample_rate = fs;
    s.window_len = p.window_len;
    s.overlap = p.overlap;
    s.window_samples = nw;
    s.hop = hop;
    s.nfft = nfft;
    s.window = p.window;
    s.one_sided = one_sided;

    const std::size_t nbins = one_sided ? nfft / 2 + 1 : nfft;
    s.freqs.resize(nbins);
    const double df = fs / static_cast<double>(nfft);
    if (one_sided) {
        for (std::size_t k = 0; k < nbins; ++k) s.freqs[k] = df * static_cast<double>(k);
    } else {
        // Ascending from -floor(nfft/2).
        const auto half = static_cast<std::ptrdiff_t>(nfft / 2);
        for (std::size_t k = 0; k < nbins; ++k) s.freqs[k] = df * static_cast<double>(static_cast<std::ptrdiff_t>(k) - half);
    }
    s.frame_times.resize(nframes);
    s.psd.assign(nframes * nbins, 0.0);

    const auto w = make_window(p.window, nw);
    std::vector<cplx> buf(nfft), spec(nfft);
    const double inv_n = 1.0 / static_cast<double>(nfft);
    for (std::size_t f = 0; f < nframes; ++f) {
        const std::size_t start = f * hop;
        s.frame_times[f] = t0 + (static_cast<double>(start) + 0.5 * static_cast<double>(nw - 1)) / fs;
        std::fill(buf.begin(), buf.end(), cplx{});
        for (std::size_t i = 0; i < nw; ++i) buf[i] = w[i] * get(start + i);
        detail::fft(buf, spec);
        double* row = s.psd.data() + f * nbins;
        if (one_sided) {
            for (std::size_t k = 0; k < nbins; ++k) {
                double v = std::norm(spec[k]) * inv_n;
                const bool edge = k == 0 || (nfft % 2 == 0 && k == nfft / 2);
                row[k] = edge ? v : 2.0 * v;
            }
        } else {
            const std::size_t half = nfft / 2;
            for (std::size_t k = 0; k < nbins; ++k) row[k] = std::norm(spec[(k + nfft - half) % nfft]) * inv_n;
        }
    }
    return s;
}

bool in_band(double f, double min_abs_freq) { return std::abs(f) >= min_abs_freq; }

std::size_t best_bin(std::span<const double> row, const std::vector<double>& freqs, double min_abs_freq) {
    std::size_t best = freqs.size();
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (!in_band(freqs[k], min_abs_freq)) continue;
        if (best == freqs.size() || row[k] > row[best] ||
            (row[k] == row[best] && std::abs(freqs[k]) < std::abs(freqs[best])))
            best = k;
    }
    return best;
}

void refine(const Spectrogram& spec, SpectralPeak& pk) {
    const auto row = spec.frame(pk.frame);
    if (pk.bin == 0 || pk.bin + 1 >= row.size()) return;
    const double l = row[pk.bin - 1], c = row[pk.bin], r = row[pk.bin + 1];
    if (!(l > 0.0 && c > 0.0 && r > 0.0)) return;
    const double a = std::log(l), b = std::log(c), g = std::log(r);
    const double den = a - 2.0 * b + g;
    if (!(den < 0.0)) return;
    const double delta = std::clamp(0.5 * (a - g) / den, -0.5, 0.5);
    const double df = spec.sample_rate / static_cast<double>(spec.nfft);
    pk.f = spec.freqs[pk.bin] + delta * df;
    pk.psd_peak = std::exp(b - 0.25 * (a - g) * delta);
    pk.interpolated = true;
}

template <typename T>
void put(std::ostream& os, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    unsigned char b[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw Error(ErrorKind::io, "truncated spectrogram dump");
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

const char* to_string(WindowKind kind) { return kind == WindowKind::hann ? "hann" : "boxcar"; }

WindowKind parse_window_kind(const std::string& s) {
    if (s == "boxcar" || s == "rect") return WindowKind::boxcar;
    if (s == "hann") return WindowKind::hann;
    throw Error(ErrorKind::invalid_argument, "unknown window '" + s + "' (expected boxcar|hann)");
}

const char* to_string(ClosestApproachMethod m) {
    return m == ClosestApproachMethod::doppler_peak ? "doppler_peak" : "envelope_peak";
}

ClosestApproachMethod parse_closest_approach_method(const std::string& s) {
    if (s == "doppler_peak") return ClosestApproachMethod::doppler_peak;
    if (s == "envelope_peak") return ClosestApproachMethod::envelope_peak;
    throw Error(ErrorKind::invalid_argument, "unknown closest-approach method '" + s + "'");
}

std::size_t Spectrogram::nearest_frame(double t) const {
    if (frame_times.empty()) throw Error(ErrorKind::invalid_argument, "empty spectrogram");
    const double step = frame_step();
    const double x = (t - frame_times.front()) / step;
    const auto last = static_cast<double>(frame_times.size() - 1);
    return static_cast<std::size_t>(std::llround(std::clamp(x, 0.0, last)));
}

Spectrogram spectrogram(std::span<const cplx> series, double sample_rate, double t0, const SpectrogramParams& p) {
    return stft(series.size(), [&](std::size_t i) { return series[i]; }, false, sample_rate, t0, p);
}

Spectrogram spectrogram(std::span<const double> series, double sample_rate, double t0, const SpectrogramParams& p) {
    return stft(series.size(), [&](std::size_t i) { return cplx{series[i], 0.0}; }, true, sample_rate, t0, p);
}

Spectrogram channel_spectrogram(const BasebandRecording& rec, std::size_t ch, const SpectrogramParams& p) {
    if (ch >= kNumReceivers) throw Error(ErrorKind::invalid_argument, "channel index out of range");
    const auto& x = rec.channels[ch];
    if (rec.mode == BasebandMode::complex_iq) return spectrogram(std::span<const cplx>(x), rec.sample_rate, rec.t0, p);
    return stft(x.size(), [&](std::size_t i) { return cplx{x[i].real(), 0.0}; }, true, rec.sample_rate, rec.t0, p);
}

std::vector<cplx> analytic_signal(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<cplx> buf(n), spec(n);
    if (n == 0) return buf;
    for (std::size_t i = 0; i < n; ++i) buf[i] = {x[i], 0.0};
    detail::fft(buf, spec);
    // Keep DC (and Nyquist for even n), double positive frequencies, zero the rest.
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (k < (n + 1) / 2)
            spec[k] *= 2.0;
        else if (!(n % 2 == 0 && k == half))
            spec[k] = 0.0;
    }
    detail::fft(spec, buf, true);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : buf) v *= inv;
    return buf;
}

std::vector<cplx> correlate_channels(const BasebandRecording& rec, std::size_t a, std::size_t b,
                                     CorrelationPath path) {
    if (a >= kNumReceivers || b >= kNumReceivers) throw Error(ErrorKind::invalid_argument, "channel index out of range");
    const std::size_t n = rec.size();
    std::vector<cplx> out(n);
    if (rec.mode == BasebandMode::complex_iq) {
        for (std::size_t i = 0; i < n; ++i) out[i] = rec.channels[a][i] * std::conj(rec.channels[b][i]);
        return out;
    }
    if (path == CorrelationPath::raw) {
        for (std::size_t i = 0; i < n; ++i) out[i] = {rec.channels[a][i].real() * rec.channels[b][i].real(), 0.0};
        return out;
    }
    auto real_part = [&](std::size_t ch) {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = rec.channels[ch][i].real();
        return r;
    };
    const auto za = analytic_signal(real_part(a));
    const auto zb = a == b ? za : analytic_signal(real_part(b));
    for (std::size_t i = 0; i < n; ++i) out[i] = za[i] * std::conj(zb[i]);
    if (a == b)
        for (auto& v : out) v = {v.real(), 0.0};
    return out;
}

SpectralPeak peak_frequency(const Spectrogram& spec, double t, bool interpolate, double min_abs_freq) {
    if (spec.n_frames() == 0 || spec.n_freqs() == 0) throw Error(ErrorKind::invalid_argument, "empty spectrogram frame");
    const double half_step = 0.5 * spec.frame_step();
    if (t < spec.frame_times.front() - half_step || t > spec.frame_times.back() + half_step)
        throw Error(ErrorKind::out_of_range, "time outside spectrogram frame range");
    SpectralPeak pk;
    pk.frame = spec.nearest_frame(t);
    pk.t = spec.frame_times[pk.frame];
    pk.bin = best_bin(spec.frame(pk.frame), spec.freqs, min_abs_freq);
    if (pk.bin == spec.n_freqs()) throw Error(ErrorKind::detection_failure, "no bins left after exclusion");
    pk.f = spec.freqs[pk.bin];
    pk.psd_peak = spec.at(pk.frame, pk.bin);
    if (interpolate) refine(spec, pk);
    return pk;
}

SpectralPeak global_peak(const Spectrogram& spec, double min_abs_freq, double detection_ratio) {
    SpectralPeak pk;
    bool found = false;
    std::vector<double> inband;
    inband.reserve(spec.psd.size());
    for (std::size_t f = 0; f < spec.n_frames(); ++f) {
        const auto row = spec.frame(f);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!in_band(spec.freqs[k], min_abs_freq)) continue;
            inband.push_back(row[k]);
            if (!found || row[k] > pk.psd_peak ||
                (row[k] == pk.psd_peak && f == pk.frame && std::abs(spec.freqs[k]) < std::abs(pk.f))) {
                pk.frame = f;
                pk.bin = k;
                pk.psd_peak = row[k];
                pk.f = spec.freqs[k];
                found = true;
            }
        }
    }
    if (!found) throw Error(ErrorKind::detection_failure, "no bins left after exclusion");
    auto mid = inband.begin() + static_cast<std::ptrdiff_t>(inband.size() / 2);
    std::nth_element(inband.begin(), mid, inband.end());
    const double median = *mid;
    if (!(pk.psd_peak > 0.0) || !(pk.psd_peak > detection_ratio * median))
        throw Error(ErrorKind::detection_failure, "no spectral peak above the noise floor");
    pk.t = spec.frame_times[pk.frame];
    return pk;
}

double estimate_closest_approach(const BasebandRecording& rec, ClosestApproachMethod method,
                                 const SpectrogramParams& p, double exclusion_hz) {
    if (method == ClosestApproachMethod::doppler_peak) {
        const auto spec = channel_spectrogram(rec, 0, p);
        return global_peak(spec, exclusion_hz).t;
    }
    const std::size_t n = rec.size();
    std::vector<double> mag(n);
    if (rec.mode == BasebandMode::complex_iq) {
        for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(rec.channels[0][i]);
    } else {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = rec.channels[0][i].real();
        const auto z = analytic_signal(r);
        for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(z[i]);
    }
    const auto w = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(p.window_len * rec.sample_rate)), 1, n);
    double acc = 0.0;
    for (std::size_t i = 0; i < w; ++i) acc += mag[i];
    double best = acc;
    std::size_t best_start = 0;
    for (std::size_t s = 1; s + w <= n; ++s) {
        acc += mag[s + w - 1] - mag[s - 1];
        if (acc > best) {
            best = acc;
            best_start = s;
        }
    }
    if (!(best > 0.0)) throw Error(ErrorKind::detection_failure, "channel 1 envelope is identically zero");
    return rec.time_at(best_start) + 0.5 * static_cast<double>(w - 1) / rec.sample_rate;
}

Calibration dc_null_calibration(double assumed_speed, int assumed_direction, double t_peak,
                                const CalibrationReference& ref) {
    if (!(ref.range_ref > 0.0)) throw Error(ErrorKind::invalid_argument, "reference range must be positive");
    const double beta = deg2rad(ref.beta_deg);
    const double s = assumed_speed * (t_peak - ref.t_ref);
    const double along = (assumed_direction < 0 ? -1.0 : 1.0) * s * std::cos(beta);
    const double height = ref.range_ref - s * std::sin(beta);
    return {std::hypot(along, height), std::atan2(along, height)};
}

void write_spectrogram_csv(std::ostream& os, const Spectrogram& spec) {
    os << "t,f,psd\n";
    for (std::size_t i = 0; i < spec.n_frames(); ++i) {
        const std::string t = fmt_double(spec.frame_times[i]);
        for (std::size_t k = 0; k < spec.n_freqs(); ++k)
            os << t << ',' << fmt_double(spec.freqs[k]) << ',' << fmt_double(spec.at(i, k)) << '\n';
    }
    if (!os) throw Error(ErrorKind::io, "failed writing spectrogram");
}

void write_spectrogram_binary(std::ostream& os, const Spectrogram& spec) {
    os.write("IVRS", 4);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(spec.n_frames()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(spec.n_freqs()));
    for (double v : spec.frame_times) put(os, v);
    for (double v : spec.freqs) put(os, v);
    for (double v : spec.psd) put(os, v);
    if (!os) throw Error(ErrorKind::io, "failed writing spectrogram");
}

Spectrogram read_spectrogram_binary(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "IVRS", 4) != 0) throw Error(ErrorKind::io, "bad spectrogram magic");
    Spectrogram s;
    const auto nf = get<std::uint32_t>(is);
    const auto nb = get<std::uint32_t>(is);
    s.frame_times.resize(nf);
    s.freqs.resize(nb);
    s.psd.resize(static_cast<std::size_t>(nf) * nb);
    for (auto& v : s.frame_times) v = get<double>(is);
    for (auto& v : s.freqs) v = get<double>(is);
    for (auto& v : s.psd) v = get<double>(is);
    return s;
}

}  // namespace ivr
