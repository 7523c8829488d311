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

#include "ivr/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ivr/numfmt.hpp"

namespace ivr {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::config, msg); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double num(const std::string& key, const std::string& v) {
    try {
        return parse_double(trim(v));
    } catch (const Error&) {
        fail("key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::vector<double> nums(const std::string& key, std::string v) {
    std::replace(v.begin(), v.end(), ',', ' ');
    std::vector<double> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) out.push_back(num(key, tok));
    return out;
}

bool boolean(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    fail("key '" + key + "': expected true|false, got '" + v + "'");
}

std::uint64_t unsigned_int(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    std::uint64_t out = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty())
        fail("key '" + key + "': expected a non-negative integer, got '" + v + "'");
    return out;
}

Vec3 vec3(const std::string& key, const std::string& v) {
    const auto n = nums(key, v);
    if (n.size() != 3) fail("key '" + key + "': expected three numbers");
    return {n[0], n[1], n[2]};
}

template <typename F>
auto wrap_parse(const std::string& key, F f) {
    try {
        return f();
    } catch (const Error& e) {
        fail("key '" + key + "': " + e.what());
    }
}

struct TargetKeys {
    std::optional<Vec3> p0, velocity;
    std::optional<double> speed, phi_v, beta, zenith_range, t_zenith;
    cplx reflectivity{1.0, 0.0};
};

}  // namespace

ProjectConfig default_project_config() {
    ProjectConfig c;
    c.experiment = tangential_experiment();
    c.scene.targets.push_back(
        {make_boresight_pass(0.50131, 0.0, 0.0, 0.755, 0.5 * (c.span.t0 + c.span.t1), c.span.t0, c.span.t1), {1.0, 0.0}});
    return c;
}

ProjectConfig parse_config(std::istream& is) {
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        fail(std::string("malformed config: ") + e.what());
    }

    ProjectConfig c = default_project_config();
    c.scene.targets.clear();
    bool snr_set = false;
    bool angles_set = false;
    bool range_end_set = false;
    std::optional<ExperimentKind> kind;
    std::map<std::size_t, TargetKeys> targets;
    const std::set<std::string> sections{"array", "radar", "scene", "estimator", "experiment"};

    for (const auto& [section, body] : tree) {
        if (!sections.count(section)) fail("unknown section [" + section + "]");
        if (!body.data().empty()) fail("top-level key '" + section + "' outside a section");
        for (const auto& [key, node] : body) {
            const std::string v = node.data();
            const std::string where = section + "." + key;
            if (section == "array") {
                if (key == "f0_hz") c.carrier_frequency = num(where, v);
                else if (key == "side_length_wavelengths") c.side_length_wavelengths = num(where, v);
                else if (key == "rx3_rotation_deg") c.rx3_rotation_deg = num(where, v);
                else fail("unknown key '" + where + "'");
            } else if (section == "radar") {
                if (key == "sample_rate") c.radar.sample_rate = num(where, v);
                else if (key == "hpbw_deg") c.radar.hpbw_deg = num(where, v);
                else if (key == "mode") c.radar.mode = wrap_parse(where, [&] { return parse_baseband_mode(trim(v)); });
                else if (key == "highpass_cutoff_hz") c.radar.highpass_cutoff = num(where, v);
                else if (key == "propagation_loss") c.radar.propagation_loss = boolean(where, v);
                else if (key == "snr_db") {
                    snr_set = true;
                    if (trim(v) == "none") c.radar.snr_db.reset();
                    else c.radar.snr_db = num(where, v);
                } else if (key == "seed") c.radar.rng_seed = unsigned_int(where, v);
                else fail("unknown key '" + where + "'");
            } else if (section == "scene") {
                if (key == "t_start") c.span.t0 = num(where, v);
                else if (key == "t_end") c.span.t1 = num(where, v);
                else if (key.rfind("target", 0) == 0 && key.find('.') != std::string::npos) {
                    const auto dot_pos = key.find('.');
                    const std::string idx = key.substr(6, dot_pos - 6);
                    const std::string field = key.substr(dot_pos + 1);
                    const auto n = unsigned_int(where, idx);
                    if (n == 0) fail("target numbering starts at 1 ('" + where + "')");
                    TargetKeys& t = targets[n];
                    if (field == "p0") t.p0 = vec3(where, v);
                    else if (field == "velocity") t.velocity = vec3(where, v);
                    else if (field == "speed") t.speed = num(where, v);
                    else if (field == "phi_v_deg") t.phi_v = num(where, v);
                    else if (field == "beta_deg") t.beta = num(where, v);
                    else if (field == "zenith_range") t.zenith_range = num(where, v);
                    else if (field == "t_zenith") t.t_zenith = num(where, v);
                    else if (field == "reflectivity") {
                        const auto r = nums(where, v);
                        if (r.empty() || r.size() > 2) fail("key '" + where + "': expected re [im]");
                        t.reflectivity = {r[0], r.size() > 1 ? r[1] : 0.0};
                    } else fail("unknown key '" + where + "'");
                } else fail("unknown key '" + where + "'");
            } else if (section == "estimator") {
                auto& e = c.estimator;
                if (key == "window_s") e.spectrogram.window_len = num(where, v);
                else if (key == "overlap") e.spectrogram.overlap = num(where, v);
                else if (key == "nfft") e.spectrogram.nfft = unsigned_int(where, v);
                else if (key == "window") e.spectrogram.window = wrap_parse(where, [&] { return parse_window_kind(trim(v)); });
                else if (key == "interpolate") e.interpolate = boolean(where, v);
                else if (key == "closest_approach")
                    e.closest_approach = wrap_parse(where, [&] { return parse_closest_approach_method(trim(v)); });
                else if (key == "correlation") {
                    const std::string t = trim(v);
                    if (t == "analytic") e.correlation = CorrelationPath::analytic;
                    else if (t == "raw") e.correlation = CorrelationPath::raw;
                    else fail("key '" + where + "': expected analytic|raw");
                } else if (key == "doppler_exclusion_hz") e.doppler_exclusion_hz = num(where, v);
                else if (key == "prior_target") {
                    const auto n = unsigned_int(where, v);
                    if (n == 0) fail("prior_target is 1-based");
                    c.prior_target = n - 1;
                } else fail("unknown key '" + where + "'");
            } else {
                auto& x = c.experiment;
                if (key == "kind") kind = wrap_parse(where, [&] { return parse_experiment_kind(trim(v)); });
                else if (key == "angles_deg") {
                    x.angles_deg = nums(where, v);
                    angles_set = true;
                } else if (key == "passes_per_direction") x.passes_per_direction = static_cast<int>(unsigned_int(where, v));
                else if (key == "speed") x.speed = num(where, v);
                else if (key == "range_start") x.range_start = num(where, v);
                else if (key == "range_end") {
                    x.range_end = num(where, v);
                    range_end_set = true;
                } else if (key == "pass_duration") x.pass_duration = num(where, v);
                else if (key == "threads") x.threads = static_cast<unsigned>(unsigned_int(where, v));
                else fail("unknown key '" + where + "'");
            }
        }
    }

    // Experiment: campaign defaults for the chosen kind, then explicit keys.
    if (kind) {
        const ExperimentConfig& parsed = c.experiment;
        ExperimentConfig base = *kind == ExperimentKind::elevation_sweep ? elevation_experiment() : tangential_experiment();
        if (angles_set) base.angles_deg = parsed.angles_deg;
        base.passes_per_direction = parsed.passes_per_direction;
        base.speed = parsed.speed;
        base.range_start = parsed.range_start;
        base.range_end = range_end_set ? parsed.range_end : (*kind == ExperimentKind::elevation_sweep ? base.range_end : parsed.range_start);
        base.pass_duration = parsed.pass_duration;
        base.threads = parsed.threads;
        c.experiment = base;
    } else if (!range_end_set) {
        c.experiment.range_end = c.experiment.range_start;
    }
    const std::optional<double> experiment_snr = c.experiment.radar.snr_db;
    c.experiment.radar = c.radar;
    if (!snr_set) c.experiment.radar.snr_db = experiment_snr;
    c.experiment.estimator = c.estimator;
    c.experiment.carrier_frequency = c.carrier_frequency;
    c.experiment.side_length_wavelengths = c.side_length_wavelengths;
    c.experiment.rx3_rotation_deg = c.rx3_rotation_deg;
    c.experiment.seed = c.radar.rng_seed;

    if (!(c.span.t1 > c.span.t0)) fail("scene: t_end must exceed t_start");
    std::size_t expected = 1;
    for (const auto& [n, t] : targets) {
        if (n != expected++) fail("scene: target numbering must be contiguous from 1");
        const std::string tag = "scene.target" + std::to_string(n);
        LinearTrajectory tr;
        if (t.velocity || t.p0) {
            if (!t.velocity || !t.p0) fail(tag + ": p0 and velocity must be given together");
            if (t.speed || t.phi_v || t.beta || t.zenith_range || t.t_zenith)
                fail(tag + ": mixes p0/velocity with speed/heading keys");
            tr = wrap_parse(tag, [&] { return make_trajectory(*t.p0, *t.velocity, c.span.t0, c.span.t1); });
        } else {
            tr = wrap_parse(tag, [&] {
                return make_boresight_pass(t.speed.value_or(0.50131), t.phi_v.value_or(0.0), t.beta.value_or(0.0),
                                           t.zenith_range.value_or(0.755),
                                           t.t_zenith.value_or(0.5 * (c.span.t0 + c.span.t1)), c.span.t0, c.span.t1);
            });
        }
        c.scene.targets.push_back({tr, t.reflectivity});
    }
    if (c.scene.targets.empty()) {
        c.scene.targets.push_back(
            {make_boresight_pass(0.50131, 0.0, 0.0, 0.755, 0.5 * (c.span.t0 + c.span.t1), c.span.t0, c.span.t1), {1.0, 0.0}});
    }
    if (c.prior_target >= c.scene.targets.size()) fail("estimator.prior_target exceeds the number of targets");

    try {
        validate(c.radar);
        if (!(c.carrier_frequency > 0.0)) fail("array.f0_hz must be positive");
        if (!(c.side_length_wavelengths > 0.0)) fail("array.side_length_wavelengths must be positive");
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config) throw;
        fail(e.what());
    }
    return c;
}

ProjectConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) fail("cannot open config '" + path.string() + "'");
    return parse_config(is);
}

ArrayGeometry nominal_array(const ProjectConfig& cfg) {
    return make_square_array(cfg.side_length_wavelengths, cfg.carrier_frequency);
}

ArrayGeometry simulated_array(const ProjectConfig& cfg) {
    const ArrayGeometry g = nominal_array(cfg);
    return cfg.rx3_rotation_deg != 0.0 ? with_rx3_mount_rotation(g, cfg.rx3_rotation_deg) : g;
}

}  // namespace ivr
