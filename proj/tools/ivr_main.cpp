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

// ivr command-line front end: simulate, estimate, bounds, experiment.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ivr/bounds.hpp"
#include "ivr/config.hpp"
#include "ivr/experiment.hpp"
#include "ivr/numfmt.hpp"
#include "ivr/recording_io.hpp"
#include "ivr/velocity.hpp"

namespace {

using namespace ivr;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string mode;
    std::optional<double> snr_db;
};

void add_common(CLI::App* app, CommonOptions& o) {
    app->add_option("--config", o.config, "INI configuration file");
    app->add_option("--seed", o.seed, "RNG seed (overrides radar.seed)");
    app->add_option("--out", o.out, "output directory (default: $IVR_OUT_DIR or ./ivr_out)");
    app->add_option("--mode", o.mode, "baseband mode")->check(CLI::IsMember({"complex", "real"}));
    app->add_option("--snr-db", o.snr_db, "peak per-channel SNR in dB");
}

std::filesystem::path out_dir(const CommonOptions& o) {
    if (!o.out.empty()) return o.out;
    if (const char* env = std::getenv("IVR_OUT_DIR"); env && *env) return env;
    return "ivr_out";
}

ProjectConfig load(const CommonOptions& o) {
    ProjectConfig c = o.config.empty() ? default_project_config() : load_config(o.config);
    if (o.seed) {
        c.radar.rng_seed = *o.seed;
        c.experiment.seed = *o.seed;
    }
    if (!o.mode.empty()) {
        c.radar.mode = parse_baseband_mode(o.mode);
        c.experiment.radar.mode = c.radar.mode;
    }
    if (o.snr_db) {
        c.radar.snr_db = *o.snr_db;
        c.experiment.radar.snr_db = *o.snr_db;
    }
    return c;
}

int cmd_simulate(const CommonOptions& o, bool binary) {
    const ProjectConfig c = load(o);
    const BasebandRecording rec = synthesize(c.scene, simulated_array(c), c.radar, c.span);
    const auto dir = out_dir(o);
    std::filesystem::create_directories(dir);
    const auto path = dir / (binary ? "recording.bin" : "recording.csv");
    save_recording(path, rec);
    std::cout << path.string() << '\n';
    return 0;
}

int cmd_estimate(const CommonOptions& o, const std::string& input) {
    const ProjectConfig c = load(o);
    const BasebandRecording rec = load_recording(input);
    const ArrayGeometry geom = nominal_array(c);
    RadarConfig radar = c.radar;
    radar.sample_rate = rec.sample_rate;
    const PassPrior prior = make_prior(c.scene.targets.at(c.prior_target).trajectory);
    const Reconstruction r = reconstruct(rec, geom, radar, c.estimator, prior);

    PassRecord pr;
    pr.ok = true;
    pr.phi_v_deg = r.estimate.phi_v_deg;
    pr.beta_deg = r.estimate.beta_deg;
    pr.v_theta = r.estimate.v_theta;
    pr.v_R = r.estimate.v_R;
    pr.speed = r.estimate.speed;
    const auto dir = out_dir(o);
    std::filesystem::create_directories(dir);
    std::ofstream os(dir / "estimates.csv");
    if (!os) throw Error(ErrorKind::io, "cannot write estimates.csv");
    write_estimates_csv(os, {pr});
    write_estimates_csv(std::cout, {pr});
    return 0;
}

int cmd_bounds(const CommonOptions& o, std::optional<double> range, std::optional<double> d_lambda,
               std::optional<double> hpbw, const std::string& envelope) {
    const ProjectConfig c = load(o);
    const double snr = o.snr_db.value_or(c.radar.snr_db.value_or(16.0));
    const double r = range.value_or(0.755);
    const double dl = d_lambda.value_or(c.side_length_wavelengths);
    const double bw = hpbw.value_or(c.radar.hpbw_deg);

    TimeMoments tm;
    if (envelope == "window") {
        const auto n = static_cast<std::size_t>(std::llround(c.estimator.spectrogram.window_len * c.radar.sample_rate));
        const std::vector<double> box(n, 1.0);
        tm = time_moments(box, c.radar.sample_rate);
    } else {
        RadarConfig clean = c.radar;
        clean.snr_db.reset();
        clean.highpass_cutoff = 0.0;
        clean.mode = BasebandMode::complex_iq;
        clean.hpbw_deg = bw;
        const Scene scene{{c.scene.targets.at(c.prior_target)}};
        const BasebandRecording rec = synthesize(scene, nominal_array(c), clean, c.span);
        tm = time_moments(normalized_envelope(rec, 0), rec.sample_rate);
    }
    const CrlbReport rep = crlb_report(snr, c.radar.sample_rate, bw, r, dl, c.carrier_frequency, tm);

    std::cout << std::left << std::setprecision(6);
    auto row = [](const char* k, double v, const char* unit) {
        std::cout << "  " << std::setw(14) << k << std::setw(16) << v << unit << '\n';
    };
    std::cout << "CRLB report (" << envelope << " envelope)\n";
    row("snr", rep.snr_db, "dB");
    row("sample_rate", rep.sample_rate, "Sps");
    row("range", rep.range, "m");
    row("d_lambda", rep.d_lambda, "");
    row("f0", rep.f0, "Hz");
    row("var_f_d", rep.var_f_d, "Hz^2");
    row("std_v_R", rep.std_v_R, "m/s");
    row("var_f_omega", rep.var_f_omega, "Hz^2");
    row("std_v_alpha", rep.std_v_alpha, "m/s");

    std::ostringstream csv;
    csv << "snr_db,sample_rate,range,d_lambda,f0,var_f_d,std_v_R,var_f_omega,std_v_alpha\n"
        << fmt_double(rep.snr_db) << ',' << fmt_double(rep.sample_rate) << ',' << fmt_double(rep.range) << ','
        << fmt_double(rep.d_lambda) << ',' << fmt_double(rep.f0) << ',' << fmt_double(rep.var_f_d) << ','
        << fmt_double(rep.std_v_R) << ',' << fmt_double(rep.var_f_omega) << ',' << fmt_double(rep.std_v_alpha) << '\n';
    std::cout << '\n' << csv.str();
    if (!o.out.empty() || std::getenv("IVR_OUT_DIR")) {
        const auto dir = out_dir(o);
        std::filesystem::create_directories(dir);
        std::ofstream os(dir / "bounds.csv");
        if (!os) throw Error(ErrorKind::io, "cannot write bounds.csv");
        os << csv.str();
    }
    return 0;
}

int cmd_experiment(const CommonOptions& o, bool plot) {
    const ProjectConfig c = load(o);
    const ExperimentResult res = run_experiment(c.experiment);
    const auto dir = out_dir(o);
    export_results(res, dir, plot ? ExportFormat::plotdata : ExportFormat::csv);

    std::cout << to_string(res.config.kind) << ": " << res.passes.size() << " passes -> " << dir.string() << '\n';
    std::cout << std::fixed << std::setprecision(3);
    std::cout << "  angle   speed_rmse[mm/s]  phi_v_rmse[deg]  beta_rmse[deg]  failed\n";
    for (const auto& a : res.summary.per_angle) {
        std::cout << "  " << std::setw(6) << a.angle_deg << "  " << std::setw(16) << 1000.0 * a.speed.rmse << "  "
                  << std::setw(15) << a.phi_v.rmse << "  " << std::setw(14) << a.beta.rmse << "  " << a.n_failed << '\n';
    }
    const auto& ov = res.summary.overall;
    std::cout << "  all     " << std::setw(16) << 1000.0 * ov.speed.rmse << "  " << std::setw(15) << ov.phi_v.rmse
              << "  " << std::setw(14) << ov.beta.rmse << "  " << ov.n_failed << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ivr - interferometric radar velocimetry toolkit"};
    app.require_subcommand(1);

    CommonOptions sim_o, est_o, bnd_o, exp_o;
    bool binary = false;
    auto* sim = app.add_subcommand("simulate", "synthesize a baseband recording from a scene");
    add_common(sim, sim_o);
    sim->add_flag("--binary", binary, "write recording.bin instead of recording.csv");

    std::string input;
    auto* est = app.add_subcommand("estimate", "estimate the velocity vector from a recording");
    add_common(est, est_o);
    est->add_option("--input", input, "recording file (.csv or .bin)")->required();

    std::optional<double> range, d_lambda, hpbw;
    std::string envelope = "pass";
    auto* bnd = app.add_subcommand("bounds", "print resolution-limited accuracy bounds");
    add_common(bnd, bnd_o);
    bnd->add_option("--range", range, "measurement range R in m (default 0.755)");
    bnd->add_option("--d-lambda", d_lambda, "baseline length in wavelengths");
    bnd->add_option("--hpbw", hpbw, "half-power beamwidth in degrees");
    bnd->add_option("--envelope", envelope, "time envelope for the Doppler bound")
        ->check(CLI::IsMember({"pass", "window"}));

    bool plot = false;
    auto* exp = app.add_subcommand("experiment", "run a Monte Carlo campaign");
    add_common(exp, exp_o);
    exp->add_flag("--plot", plot, "also write plot data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_o, binary);
        if (est->parsed()) return cmd_estimate(est_o, input);
        if (bnd->parsed()) return cmd_bounds(bnd_o, range, d_lambda, hpbw, envelope);
        if (exp->parsed()) return cmd_experiment(exp_o, plot);
    } catch (const Error& e) {
        std::cerr << "ivr: " << e.what() << '\n';
        return e.kind() == ErrorKind::config ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "ivr: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
