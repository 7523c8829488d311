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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "ivr/synthesis.hpp"
#include "ivr/types.hpp"

namespace ivr {

enum class WindowKind { boxcar, hann };

const char* to_string(WindowKind kind);
WindowKind parse_window_kind(const std::string& s);

struct SpectrogramParams {
    double window_len = 0.25;  // s
    double overlap = 0.6;
    std::size_t nfft = 16384;
    WindowKind window = WindowKind::boxcar;
};

// PSD convention: |X_k|^2 / nfft of the windowed, zero-padded frame. A
// two-sided frame therefore sums to the windowed-sample energy; one-sided
// frames double every bin except DC and Nyquist so the same holds.
struct Spectrogram {
    std::vector<double> frame_times;  // s, centre of each frame
    std::vector<double> freqs;        // Hz, ascending
    std::vector<double> psd;          // row-major [frame][freq]
    double sample_rate = 0.0;
    double window_len = 0.0;
    double overlap = 0.0;
    std::size_t window_samples = 0;
    std::size_t hop = 0;
    std::size_t nfft = 0;
    WindowKind window = WindowKind::boxcar;
    bool one_sided = false;

    std::size_t n_frames() const { return frame_times.size(); }
    std::size_t n_freqs() const { return freqs.size(); }
    double at(std::size_t frame, std::size_t bin) const { return psd[frame * freqs.size() + bin]; }
    std::span<const double> frame(std::size_t i) const { return {psd.data() + i * freqs.size(), freqs.size()}; }
    double frame_step() const { return static_cast<double>(hop) / sample_rate; }
    std::size_t nearest_frame(double t) const;
};

// Complex input gives a two-sided spectrogram (fft-shifted, ascending from
// -fs/2); real input gives the one-sided half [0, fs/2].
Spectrogram spectrogram(std::span<const cplx> series, double sample_rate, double t0, const SpectrogramParams& p);
Spectrogram spectrogram(std::span<const double> series, double sample_rate, double t0, const SpectrogramParams& p);

// Recording channel, one-sided for real-mode recordings.
Spectrogram channel_spectrogram(const BasebandRecording& rec, std::size_t ch, const SpectrogramParams& p);

// FFT-based analytic signal x + j H{x}.
std::vector<cplx> analytic_signal(std::span<const double> x);

enum class CorrelationPath {
    analytic,  // real channels are analytic-extended before conjugate multiplication
    raw,       // real x real product, spectrum folded about 0 Hz
};

// r_a * conj(r_b). Complex recordings ignore `path`.
std::vector<cplx> correlate_channels(const BasebandRecording& rec, std::size_t a, std::size_t b,
                                     CorrelationPath path = CorrelationPath::analytic);

struct SpectralPeak {
    double t = 0.0;
    double f = 0.0;
    double psd_peak = 0.0;
    bool interpolated = false;
    std::size_t frame = 0;
    std::size_t bin = 0;
};

// Max-PSD bin of the frame nearest `t`, ignoring |f| < min_abs_freq. Ties go
// to the lowest frequency. With `interpolate`, a 3-point parabola through
// log-PSD refines the estimate.
SpectralPeak peak_frequency(const Spectrogram& spec, double t, bool interpolate, double min_abs_freq = 0.0);

// Global maximum over all frames; ties go to the earliest frame, then the
// lowest frequency. Throws detection_failure when the peak does not exceed
// `detection_ratio` times the median in-band PSD.
SpectralPeak global_peak(const Spectrogram& spec, double min_abs_freq = 0.0, double detection_ratio = 100.0);

enum class ClosestApproachMethod { doppler_peak, envelope_peak };

const char* to_string(ClosestApproachMethod m);
ClosestApproachMethod parse_closest_approach_method(const std::string& s);

// doppler_peak: frame time of channel 1's global spectrogram maximum with
// |f| < exclusion_hz removed. envelope_peak: time of the maximum of the
// moving-average |ch1| (analytic magnitude in real mode), averaged over one
// spectrogram window.
double estimate_closest_approach(const BasebandRecording& rec, ClosestApproachMethod method,
                                 const SpectrogramParams& p, double exclusion_hz);

struct CalibrationReference {
    double t_ref = 0.0;      // s, time the track crosses broadside
    double range_ref = 0.0;  // m, range at t_ref
    double beta_deg = 0.0;   // nominal descent angle of the track
};

struct Calibration {
    double range = 0.0;  // R_corr, m
    double alpha = 0.0;  // rad, along-track angle off broadside
};

// Converts a measurement time displaced from the broadside crossing into the
// range and angle at which the measurement was actually taken, assuming the
// nominal speed and heading sign (+1 along the reference axis, -1 against).
Calibration dc_null_calibration(double assumed_speed, int assumed_direction, double t_peak,
                                const CalibrationReference& ref);

void write_spectrogram_csv(std::ostream& os, const Spectrogram& spec);

// Grid dump, little-endian: "IVRS" u32 n_frames u32 n_freqs f64 frame_times[]
// f64 freqs[] f64 psd[] (row-major).
void write_spectrogram_binary(std::ostream& os, const Spectrogram& spec);
Spectrogram read_spectrogram_binary(std::istream& is);

}  // namespace ivr
