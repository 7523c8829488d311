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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ivr/geometry.hpp"
#include "ivr/scene.hpp"
#include "ivr/types.hpp"

namespace ivr {

enum class BasebandMode { complex_iq, real };

const char* to_string(BasebandMode mode);
BasebandMode parse_baseband_mode(const std::string& s);

struct RadarConfig {
    double sample_rate = 4166.7;     // Sps
    double hpbw_deg = 30.0;          // shared Tx/Rx half-power beamwidth
    BasebandMode mode = BasebandMode::real;
    double highpass_cutoff = 15.0;   // Hz, 0 disables
    bool propagation_loss = true;    // amplitude ~ 1/(R_tx R_rx)
    std::optional<double> snr_db;    // peak envelope-to-noise per channel; nullopt = noiseless
    std::uint64_t rng_seed = 0;
};

// Complex-IQ, no high-pass, noiseless: the clean validation configuration.
RadarConfig ideal_radar_config();

void validate(const RadarConfig& cfg);

struct Provenance {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

// Three equal-length channels (Rx1..Rx3). Real-mode recordings keep the
// samples in complex storage with zero imaginary parts.
struct BasebandRecording {
    double sample_rate = 0.0;
    double t0 = 0.0;
    BasebandMode mode = BasebandMode::complex_iq;
    std::array<std::vector<cplx>, 3> channels;
    Provenance provenance;

    std::size_t size() const { return channels[0].size(); }
    double time_at(std::size_t k) const { return t0 + static_cast<double>(k) / sample_rate; }
};

// Throws invalid_argument when channels differ in length, hold non-finite
// samples, or a real-mode recording has imaginary content.
void validate(const BasebandRecording& rec);

struct TimeSpan {
    double t0 = 0.0;
    double t1 = 0.0;
};

// Bistatic round-trip delay tx -> p -> rx.
double round_trip_delay(const Vec3& tx, const Vec3& rx, const Vec3& p);

// One-way amplitude gain sqrt(A(theta)) of the Gaussian power pattern
// A(theta) = exp(-theta^2 / 2 sigma^2), sigma = hpbw / 2.355.
double beam_amplitude(double theta_off_boresight, double hpbw_deg);

double beam_sigma_rad(double hpbw_deg);

// First-order (bilinear) high-pass, applied in place. The filter starts in
// the steady state of the first sample so a constant input produces no step.
void highpass_first_order(std::span<cplx> samples, double cutoff_hz, double sample_rate);

BasebandRecording synthesize(const Scene& scene, const ArrayGeometry& geom, const RadarConfig& cfg,
                             const TimeSpan& span);

std::uint64_t config_hash(const Scene& scene, const ArrayGeometry& geom, const RadarConfig& cfg,
                          const TimeSpan& span);

}  // namespace ivr
