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
#include <string>
#include <vector>

#include "ivr/geometry.hpp"
#include "ivr/scene.hpp"
#include "ivr/synthesis.hpp"
#include "ivr/velocity.hpp"

namespace ivr {

enum class ExperimentKind {
    tangential_sweep,  // heading phi_v swept at beta = 0
    elevation_sweep,   // descent angle beta swept at phi_v = 0
};

const char* to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::tangential_sweep;
    std::vector<double> angles_deg{0.0, -15.0, -30.0, -45.0};
    int passes_per_direction = 50;
    double speed = 0.50131;  // m/s
    // Broadside range per angle, linearly interpolated from range_start to
    // range_end across the angle list (range_start throughout when equal).
    double range_start = 0.755;
    double range_end = 0.755;
    double pass_duration = 4.0;  // s, broadside crossing at the midpoint
    double carrier_frequency = 41.8e9;
    double side_length_wavelengths = 7.26;
    double rx3_rotation_deg = 0.0;  // mount misalignment applied to the simulated array only
    RadarConfig radar;
    EstimatorParams estimator;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency
};

// Defaults for the two campaigns: real mode, 16 dB, 50 passes.
ExperimentConfig tangential_experiment();
ExperimentConfig elevation_experiment();

void validate(const ExperimentConfig& cfg);

std::vector<double> range_schedule(const ExperimentConfig& cfg);

struct PassRecord {
    std::uint64_t pass_id = 0;
    std::size_t angle_index = 0;
    double angle_deg = 0.0;
    int direction = 1;  // +1 along +x, -1 reversed
    int pass_index = 0;
    double range_ref = 0.0;
    bool ok = false;
    std::string error;

    double truth_phi_v_deg = 0.0;
    double truth_beta_deg = 0.0;
    double truth_speed = 0.0;
    double truth_v_theta = 0.0;
    double truth_v_R = 0.0;

    double phi_v_deg = 0.0;
    double beta_deg = 0.0;
    double speed = 0.0;
    double v_theta = 0.0;
    double v_R = 0.0;
    double v_alpha_x = 0.0;
    double v_alpha_y = 0.0;
    double t_peak = 0.0;
    double f_doppler = 0.0;
    double f_x = 0.0;
    double f_y = 0.0;
    double f_diagonal = 0.0;
    double range_used = 0.0;

    friend bool operator==(const PassRecord&, const PassRecord&) = default;
};

// Scene and prior for one pass of the campaign.
struct PassSetup {
    LinearTrajectory trajectory;
    ArrayGeometry simulated_array;
    ArrayGeometry nominal_array;
    RadarConfig radar;
    TimeSpan span;
};

PassSetup pass_setup(const ExperimentConfig& cfg, std::size_t angle_index, int direction, int pass_index);

PassRecord run_pass(const ExperimentConfig& cfg, std::size_t angle_index, int direction, int pass_index);

struct QuantityStats {
    std::size_t n = 0;
    double mean = 0.0;  // of the estimate
    double std = 0.0;   // of the estimate, population
    double bias = 0.0;  // mean error
    double rmse = 0.0;
    double max_abs_error = 0.0;

    friend bool operator==(const QuantityStats&, const QuantityStats&) = default;
};

struct CellStats {
    std::size_t angle_index = 0;
    double angle_deg = 0.0;
    int direction = 0;  // 0 = both directions pooled
    std::size_t n_failed = 0;
    QuantityStats speed, phi_v, beta, v_R, v_theta;
    double mean_v_alpha_x = 0.0;
    double mean_v_alpha_y = 0.0;
    double mean_f_x = 0.0;
    double mean_f_y = 0.0;
    double mean_f_diagonal = 0.0;

    friend bool operator==(const CellStats&, const CellStats&) = default;
};

struct SummaryStats {
    std::vector<CellStats> per_direction;  // one per (angle, direction)
    std::vector<CellStats> per_angle;      // directions pooled
    CellStats overall;

    friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

// Difference wrapped into (-180, 180].
double wrap_degrees(double d);

QuantityStats quantity_stats(const std::vector<double>& estimates, const std::vector<double>& truths, bool angular);

// Records are sorted by pass_id first, so the result does not depend on the
// order in which passes finished.
SummaryStats summarize(std::vector<PassRecord> records);

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<PassRecord> passes;  // sorted by pass_id
    SummaryStats summary;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_estimates_csv(std::ostream& os, const std::vector<PassRecord>& passes);
void write_passes_csv(std::ostream& os, const std::vector<PassRecord>& passes);
std::vector<PassRecord> read_passes_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const SummaryStats& s);

enum class ExportFormat { csv, plotdata };

// csv: estimates.csv, passes.csv, summary.csv in `dir`.
// plotdata: additionally plot/series.csv (estimate vs truth per pass) and, for
// the first pass of each angle and direction, gridded spectrogram dumps of
// the channel-1 Doppler and the x/y correlations.
void export_results(const ExperimentResult& result, const std::filesystem::path& dir, ExportFormat format);

}  // namespace ivr
