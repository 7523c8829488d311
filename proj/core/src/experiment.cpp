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

#include "ivr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <thread>

#include "ivr/dsp.hpp"
#include "ivr/numfmt.hpp"
#include "ivr/random.hpp"

namespace ivr {

namespace {

constexpr const char* kPassColumns =
    "pass_id,angle_index,angle_deg,direction,pass_index,range_ref,ok,error,"
    "truth_phi_v_deg,truth_beta_deg,truth_speed,truth_v_theta,truth_v_R,"
    "phi_v_deg,beta_deg,speed,v_theta,v_R,v_alpha_x,v_alpha_y,t_peak,"
    "f_doppler,f_x,f_y,f_diagonal,range_used";

std::uint64_t pass_id_of(const ExperimentConfig& cfg, std::size_t angle_index, int direction, int pass_index) {
    const std::uint64_t dir_idx = direction > 0 ? 0 : 1;
    return (static_cast<std::uint64_t>(angle_index) * 2 + dir_idx) * static_cast<std::uint64_t>(cfg.passes_per_direction) +
           static_cast<std::uint64_t>(pass_index);
}

std::string csv_escape(const std::string& s) {
    std::string out;
    for (char c : s) out += (c == ',' || c == '\n' || c == '\r') ? ';' : c;
    return out;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

CellStats cell_stats(const std::vector<const PassRecord*>& recs) {
    CellStats c;
    std::vector<double> e[5], t[5];
    double sx = 0, sy = 0, fx = 0, fy = 0, fd = 0;
    std::size_t ok = 0;
    for (const PassRecord* r : recs) {
        if (!r->ok) {
            ++c.n_failed;
            continue;
        }
        ++ok;
        e[0].push_back(r->speed), t[0].push_back(r->truth_speed);
        e[1].push_back(r->phi_v_deg), t[1].push_back(r->truth_phi_v_deg);
        e[2].push_back(r->beta_deg), t[2].push_back(r->truth_beta_deg);
        e[3].push_back(r->v_R), t[3].push_back(r->truth_v_R);
        e[4].push_back(r->v_theta), t[4].push_back(r->truth_v_theta);
        sx += r->v_alpha_x;
        sy += r->v_alpha_y;
        fx += r->f_x;
        fy += r->f_y;
        fd += r->f_diagonal;
    }
    c.speed = quantity_stats(e[0], t[0], false);
    c.phi_v = quantity_stats(e[1], t[1], true);
    c.beta = quantity_stats(e[2], t[2], false);
    c.v_R = quantity_stats(e[3], t[3], false);
    c.v_theta = quantity_stats(e[4], t[4], false);
    if (ok > 0) {
        const double n = static_cast<double>(ok);
        c.mean_v_alpha_x = sx / n;
        c.mean_v_alpha_y = sy / n;
        c.mean_f_x = fx / n;
        c.mean_f_y = fy / n;
        c.mean_f_diagonal = fd / n;
    }
    return c;
}

void write_quantity_header(std::ostream& os, const char* name) {
    for (const char* f : {"n", "mean", "std", "bias", "rmse", "max_abs_error"}) os << ',' << name << '_' << f;
}

void write_quantity(std::ostream& os, const QuantityStats& q) {
    os << ',' << q.n << ',' << fmt_double(q.mean) << ',' << fmt_double(q.std) << ',' << fmt_double(q.bias) << ','
       << fmt_double(q.rmse) << ',' << fmt_double(q.max_abs_error);
}

void write_cell(std::ostream& os, const char* scope, const CellStats& c) {
    os << scope << ',' << c.angle_index << ',' << fmt_double(c.angle_deg) << ',' << c.direction << ',' << c.n_failed;
    for (const QuantityStats* q : {&c.speed, &c.phi_v, &c.beta, &c.v_R, &c.v_theta}) write_quantity(os, *q);
    os << ',' << fmt_double(c.mean_v_alpha_x) << ',' << fmt_double(c.mean_v_alpha_y) << ',' << fmt_double(c.mean_f_x)
       << ',' << fmt_double(c.mean_f_y) << ',' << fmt_double(c.mean_f_diagonal) << '\n';
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw Error(ErrorKind::io, "cannot open '" + p.string() + "' for writing");
    return os;
}

}  // namespace

const char* to_string(ExperimentKind k) {
    return k == ExperimentKind::tangential_sweep ? "tangential_sweep" : "elevation_sweep";
}

ExperimentKind parse_experiment_kind(const std::string& s) {
    if (s == "tangential_sweep" || s == "tangential") return ExperimentKind::tangential_sweep;
    if (s == "elevation_sweep" || s == "elevation") return ExperimentKind::elevation_sweep;
    throw Error(ErrorKind::invalid_argument, "unknown experiment kind '" + s + "'");
}

ExperimentConfig tangential_experiment() {
    ExperimentConfig c;
    c.kind = ExperimentKind::tangential_sweep;
    c.angles_deg = {0.0, -15.0, -30.0, -45.0};
    c.range_start = c.range_end = 0.755;
    c.radar.snr_db = 16.0;
    return c;
}

ExperimentConfig elevation_experiment() {
    ExperimentConfig c;
    c.kind = ExperimentKind::elevation_sweep;
    c.angles_deg = {0.0, 10.0, 20.0, 30.0, 40.0};
    c.range_start = 0.755;
    c.range_end = 0.917;
    c.radar.snr_db = 16.0;
    return c;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.angles_deg.empty()) throw Error(ErrorKind::invalid_argument, "experiment needs at least one angle");
    if (cfg.passes_per_direction < 1) throw Error(ErrorKind::invalid_argument, "passes per direction must be >= 1");
    if (!(cfg.speed > 0.0)) throw Error(ErrorKind::invalid_argument, "speed must be positive");
    if (!(cfg.range_start > 0.0) || !(cfg.range_end > 0.0))
        throw Error(ErrorKind::invalid_argument, "ranges must be positive");
    if (!(cfg.pass_duration > 0.0)) throw Error(ErrorKind::invalid_argument, "pass duration must be positive");
    validate(cfg.radar);
}

std::vector<double> range_schedule(const ExperimentConfig& cfg) {
    const std::size_t n = cfg.angles_deg.size();
    std::vector<double> r(n, cfg.range_start);
    for (std::size_t i = 1; i < n; ++i)
        r[i] = cfg.range_start + (cfg.range_end - cfg.range_start) * static_cast<double>(i) / static_cast<double>(n - 1);
    return r;
}

PassSetup pass_setup(const ExperimentConfig& cfg, std::size_t angle_index, int direction, int pass_index) {
    if (angle_index >= cfg.angles_deg.size()) throw Error(ErrorKind::invalid_argument, "angle index out of range");
    const double angle = cfg.angles_deg[angle_index];
    const double phi = cfg.kind == ExperimentKind::tangential_sweep ? angle : 0.0;
    const double beta = cfg.kind == ExperimentKind::elevation_sweep ? angle : 0.0;
    const double range = range_schedule(cfg)[angle_index];
    const double t_mid = 0.5 * cfg.pass_duration;

    PassSetup s;
    LinearTrajectory tr = make_boresight_pass(cfg.speed, phi, beta, range, t_mid, 0.0, cfg.pass_duration);
    if (direction < 0) {
        // Same track traversed backwards.
        tr.velocity = -tr.velocity;
        tr.p0 = Vec3{0.0, 0.0, range} - t_mid * tr.velocity;
    }
    s.trajectory = tr;
    s.nominal_array = make_square_array(cfg.side_length_wavelengths, cfg.carrier_frequency);
    s.simulated_array = cfg.rx3_rotation_deg != 0.0 ? with_rx3_mount_rotation(s.nominal_array, cfg.rx3_rotation_deg)
                                                    : s.nominal_array;
    s.radar = cfg.radar;
    s.radar.rng_seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(angle_index),
                                              static_cast<std::uint64_t>(direction > 0 ? 0 : 1),
                                              static_cast<std::uint64_t>(pass_index)});
    s.span = {0.0, cfg.pass_duration};
    return s;
}

PassRecord run_pass(const ExperimentConfig& cfg, std::size_t angle_index, int direction, int pass_index) {
    PassRecord r;
    r.pass_id = pass_id_of(cfg, angle_index, direction, pass_index);
    r.angle_index = angle_index;
    r.angle_deg = cfg.angles_deg.at(angle_index);
    r.direction = direction;
    r.pass_index = pass_index;
    const PassSetup s = pass_setup(cfg, angle_index, direction, pass_index);
    r.range_ref = range_schedule(cfg)[angle_index];
    const TruthRecord truth = ground_truth(s.trajectory, s.nominal_array);
    r.truth_phi_v_deg = truth.phi_v_deg;
    r.truth_beta_deg = truth.beta_deg;
    r.truth_speed = truth.speed;
    r.truth_v_theta = truth.v_theta;
    r.truth_v_R = truth.v_R;
    try {
        const Scene scene{{PointTarget{s.trajectory, {1.0, 0.0}}}};
        const BasebandRecording rec = synthesize(scene, s.simulated_array, s.radar, s.span);
        const Reconstruction rc = reconstruct(rec, s.nominal_array, s.radar, cfg.estimator, make_prior(s.trajectory));
        r.phi_v_deg = rc.estimate.phi_v_deg;
        r.beta_deg = rc.estimate.beta_deg;
        r.speed = rc.estimate.speed;
        r.v_theta = rc.estimate.v_theta;
        r.v_R = rc.estimate.v_R;
        r.v_alpha_x = rc.components.v_alpha_x;
        r.v_alpha_y = rc.components.v_alpha_y;
        r.t_peak = rc.t_peak;
        r.f_doppler = rc.f_doppler;
        r.f_x = rc.f_x;
        r.f_y = rc.f_y;
        r.f_diagonal = rc.f_diagonal;
        r.range_used = rc.components.range_used;
        r.ok = true;
    } catch (const Error& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

double wrap_degrees(double d) {
    double w = std::fmod(d, 360.0);
    if (w > 180.0) w -= 360.0;
    if (w <= -180.0) w += 360.0;
    return w;
}

QuantityStats quantity_stats(const std::vector<double>& estimates, const std::vector<double>& truths, bool angular) {
    if (estimates.size() != truths.size()) throw Error(ErrorKind::invalid_argument, "estimate/truth length mismatch");
    QuantityStats q;
    q.n = estimates.size();
    if (q.n == 0) return q;
    const double n = static_cast<double>(q.n);
    // Angular estimates are unwrapped around their truth so the mean and
    // spread do not jump across the +-180 seam.
    std::vector<double> est(estimates);
    double se = 0.0, se2 = 0.0, sx = 0.0;
    for (std::size_t i = 0; i < q.n; ++i) {
        const double err = angular ? wrap_degrees(estimates[i] - truths[i]) : estimates[i] - truths[i];
        if (angular) est[i] = truths[i] + err;
        se += err;
        se2 += err * err;
        q.max_abs_error = std::max(q.max_abs_error, std::abs(err));
        sx += est[i];
    }
    q.mean = sx / n;
    q.bias = se / n;
    q.rmse = std::sqrt(se2 / n);
    double sd = 0.0;
    for (double v : est) sd += (v - q.mean) * (v - q.mean);
    q.std = std::sqrt(sd / n);
    if (angular) q.mean = wrap_degrees(q.mean);
    return q;
}

SummaryStats summarize(std::vector<PassRecord> records) {
    std::sort(records.begin(), records.end(), [](const PassRecord& a, const PassRecord& b) { return a.pass_id < b.pass_id; });
    std::map<std::pair<std::size_t, int>, std::vector<const PassRecord*>> by_dir;
    std::map<std::size_t, std::vector<const PassRecord*>> by_angle;
    std::vector<const PassRecord*> all;
    for (const auto& r : records) {
        by_dir[{r.angle_index, -r.direction}].push_back(&r);
        by_angle[r.angle_index].push_back(&r);
        all.push_back(&r);
    }
    SummaryStats s;
    for (const auto& [key, recs] : by_dir) {
        CellStats c = cell_stats(recs);
        c.angle_index = key.first;
        c.angle_deg = recs.front()->angle_deg;
        c.direction = -key.second;
        s.per_direction.push_back(c);
    }
    for (const auto& [key, recs] : by_angle) {
        CellStats c = cell_stats(recs);
        c.angle_index = key;
        c.angle_deg = recs.front()->angle_deg;
        s.per_angle.push_back(c);
    }
    s.overall = cell_stats(all);
    return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    struct Job {
        std::size_t angle;
        int dir;
        int pass;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < cfg.angles_deg.size(); ++a)
        for (int dir : {1, -1})
            for (int p = 0; p < cfg.passes_per_direction; ++p) jobs.push_back({a, dir, p});

    std::vector<PassRecord> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = run_pass(cfg, jobs[i].angle, jobs[i].dir, jobs[i].pass);
    };
    unsigned nthreads = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    ExperimentResult res;
    res.config = cfg;
    std::sort(out.begin(), out.end(), [](const PassRecord& a, const PassRecord& b) { return a.pass_id < b.pass_id; });
    res.summary = summarize(out);
    res.passes = std::move(out);
    return res;
}

void write_estimates_csv(std::ostream& os, const std::vector<PassRecord>& passes) {
    os << "pass_id,phi_v_deg,beta_deg,v_theta,v_R,speed\n";
    for (const auto& r : passes) {
        if (!r.ok) continue;
        os << r.pass_id << ',' << fmt_double(r.phi_v_deg) << ',' << fmt_double(r.beta_deg) << ','
           << fmt_double(r.v_theta) << ',' << fmt_double(r.v_R) << ',' << fmt_double(r.speed) << '\n';
    }
    if (!os) throw Error(ErrorKind::io, "failed writing estimates");
}

void write_passes_csv(std::ostream& os, const std::vector<PassRecord>& passes) {
    os << kPassColumns << '\n';
    for (const auto& r : passes) {
        os << r.pass_id << ',' << r.angle_index << ',' << fmt_double(r.angle_deg) << ',' << r.direction << ','
           << r.pass_index << ',' << fmt_double(r.range_ref) << ',' << (r.ok ? 1 : 0) << ',' << csv_escape(r.error);
        for (double v : {r.truth_phi_v_deg, r.truth_beta_deg, r.truth_speed, r.truth_v_theta, r.truth_v_R, r.phi_v_deg,
                         r.beta_deg, r.speed, r.v_theta, r.v_R, r.v_alpha_x, r.v_alpha_y, r.t_peak, r.f_doppler, r.f_x,
                         r.f_y, r.f_diagonal, r.range_used})
            os << ',' << fmt_double(v);
        os << '\n';
    }
    if (!os) throw Error(ErrorKind::io, "failed writing pass records");
}

std::vector<PassRecord> read_passes_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::io, "empty pass file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kPassColumns) throw Error(ErrorKind::io, "unexpected pass file header");
    std::vector<PassRecord> out;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 26) throw Error(ErrorKind::io, "pass row has wrong column count");
        PassRecord r;
        try {
            r.pass_id = std::stoull(f[0]);
            r.angle_index = std::stoull(f[1]);
            r.angle_deg = parse_double(f[2]);
            r.direction = std::stoi(f[3]);
            r.pass_index = std::stoi(f[4]);
            r.range_ref = parse_double(f[5]);
            r.ok = f[6] == "1";
            r.error = f[7];
            double* dst[] = {&r.truth_phi_v_deg, &r.truth_beta_deg, &r.truth_speed, &r.truth_v_theta, &r.truth_v_R,
                             &r.phi_v_deg,       &r.beta_deg,       &r.speed,       &r.v_theta,       &r.v_R,
                             &r.v_alpha_x,       &r.v_alpha_y,      &r.t_peak,      &r.f_doppler,     &r.f_x,
                             &r.f_y,             &r.f_diagonal,     &r.range_used};
            for (std::size_t i = 0; i < 18; ++i) *dst[i] = parse_double(f[8 + i]);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::io, "malformed pass row");
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_summary_csv(std::ostream& os, const SummaryStats& s) {
    os << "scope,angle_index,angle_deg,direction,n_failed";
    for (const char* q : {"speed", "phi_v", "beta", "v_R", "v_theta"}) write_quantity_header(os, q);
    os << ",mean_v_alpha_x,mean_v_alpha_y,mean_f_x,mean_f_y,mean_f_diagonal\n";
    for (const auto& c : s.per_direction) write_cell(os, "direction", c);
    for (const auto& c : s.per_angle) write_cell(os, "angle", c);
    if (s.overall.speed.n + s.overall.n_failed > 0) write_cell(os, "overall", s.overall);
    if (!os) throw Error(ErrorKind::io, "failed writing summary");
}

void export_results(const ExperimentResult& result, const std::filesystem::path& dir, ExportFormat format) {
    std::filesystem::create_directories(dir);
    {
        auto os = open_out(dir / "estimates.csv");
        write_estimates_csv(os, result.passes);
    }
    {
        auto os = open_out(dir / "passes.csv");
        write_passes_csv(os, result.passes);
    }
    {
        auto os = open_out(dir / "summary.csv");
        write_summary_csv(os, result.summary);
    }
    if (format != ExportFormat::plotdata) return;

    const auto plot = dir / "plot";
    std::filesystem::create_directories(plot);
    {
        auto os = open_out(plot / "series.csv");
        os << "pass_id,angle_deg,direction,truth_phi_v_deg,phi_v_deg,truth_beta_deg,beta_deg,truth_speed,speed\n";
        for (const auto& r : result.passes) {
            if (!r.ok) continue;
            os << r.pass_id << ',' << fmt_double(r.angle_deg) << ',' << r.direction << ','
               << fmt_double(r.truth_phi_v_deg) << ',' << fmt_double(r.phi_v_deg) << ','
               << fmt_double(r.truth_beta_deg) << ',' << fmt_double(r.beta_deg) << ',' << fmt_double(r.truth_speed)
               << ',' << fmt_double(r.speed) << '\n';
        }
    }
    const ExperimentConfig& cfg = result.config;
    for (std::size_t a = 0; a < cfg.angles_deg.size(); ++a) {
        for (int dir : {1, -1}) {
            const PassSetup s = pass_setup(cfg, a, dir, 0);
            const Scene scene{{PointTarget{s.trajectory, {1.0, 0.0}}}};
            const BasebandRecording rec = synthesize(scene, s.simulated_array, s.radar, s.span);
            const std::string stem = "angle" + std::to_string(a) + (dir > 0 ? "_pos" : "_neg");
            const SpectrogramParams& sp = cfg.estimator.spectrogram;
            auto dump = [&](const std::string& name, const Spectrogram& spec) {
                std::ofstream os(plot / (stem + "_" + name + ".bin"), std::ios::binary);
                if (!os) throw Error(ErrorKind::io, "cannot write spectrogram dump");
                write_spectrogram_binary(os, spec);
            };
            dump("doppler", channel_spectrogram(rec, 0, sp));
            for (auto id : {BaselineId::x_axis, BaselineId::y_axis}) {
                const Baseline bl = baseline(s.nominal_array, id);
                const auto corr = correlate_channels(rec, bl.rx_a, bl.rx_b, cfg.estimator.correlation);
                dump(id == BaselineId::x_axis ? "corr_x" : "corr_y",
                     spectrogram(std::span<const cplx>(corr), rec.sample_rate, rec.t0, sp));
            }
        }
    }
}

}  // namespace ivr
