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

#include "ivr/recording_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ivr/numfmt.hpp"

namespace ivr {

namespace {

constexpr char kMagic[4] = {'I', 'V', 'R', '1'};

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(ErrorKind::io, "bad integer '" + std::string(s) + "'");
    return v;
}

template <typename T>
void put_le(std::ostream& os, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char b[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw Error(ErrorKind::io, "truncated binary recording");
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

std::size_t fields_per_sample(BasebandMode mode) { return mode == BasebandMode::complex_iq ? 2 : 1; }

}  // namespace

void write_recording_csv(std::ostream& os, const BasebandRecording& rec) {
    validate(rec);
    const bool cx = rec.mode == BasebandMode::complex_iq;
    os << "#ivr1,rate=" << fmt_double(rec.sample_rate) << ",mode=" << to_string(rec.mode)
       << ",channels=3,t0=" << fmt_double(rec.t0) << '\n';
    os << "#provenance,seed=" << rec.provenance.seed << ",config_hash=" << rec.provenance.config_hash << '\n';
    std::string line;
    for (std::size_t k = 0; k < rec.size(); ++k) {
        line = fmt_double(rec.time_at(k));
        for (const auto& ch : rec.channels) {
            line += ',';
            line += fmt_double(ch[k].real());
            if (cx) {
                line += ',';
                line += fmt_double(ch[k].imag());
            }
        }
        line += '\n';
        os << line;
    }
    if (!os) throw Error(ErrorKind::io, "failed writing recording");
}

BasebandRecording read_recording_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::io, "empty recording file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto head = split(line, ',');
    if (head.empty() || head[0] != "#ivr1") throw Error(ErrorKind::io, "missing #ivr1 header");

    BasebandRecording rec;
    bool have_rate = false, have_mode = false, have_t0 = false;
    for (std::size_t i = 1; i < head.size(); ++i) {
        const auto eq = head[i].find('=');
        if (eq == std::string_view::npos) throw Error(ErrorKind::io, "malformed header field");
        const auto key = head[i].substr(0, eq);
        const auto val = head[i].substr(eq + 1);
        if (key == "rate") {
            rec.sample_rate = parse_double(val);
            have_rate = true;
        } else if (key == "mode") {
            rec.mode = parse_baseband_mode(std::string(val));
            have_mode = true;
        } else if (key == "channels") {
            if (val != "3") throw Error(ErrorKind::io, "only 3-channel recordings are supported");
        } else if (key == "t0") {
            rec.t0 = parse_double(val);
            have_t0 = true;
        } else {
            throw Error(ErrorKind::io, "unknown header field '" + std::string(key) + "'");
        }
    }
    if (!have_rate || !have_mode || !have_t0) throw Error(ErrorKind::io, "incomplete #ivr1 header");

    const std::size_t per = fields_per_sample(rec.mode);
    const std::size_t ncol = 1 + 3 * per;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("#provenance", 0) == 0) {
                for (auto f : split(line, ',')) {
                    const auto eq = f.find('=');
                    if (eq == std::string_view::npos) continue;
                    if (f.substr(0, eq) == "seed") rec.provenance.seed = parse_u64(f.substr(eq + 1));
                    if (f.substr(0, eq) == "config_hash") rec.provenance.config_hash = parse_u64(f.substr(eq + 1));
                }
            }
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != ncol) throw Error(ErrorKind::io, "recording row has wrong column count");
        for (std::size_t ch = 0; ch < 3; ++ch) {
            const double re = parse_double(cols[1 + ch * per]);
            const double im = per == 2 ? parse_double(cols[2 + ch * per]) : 0.0;
            rec.channels[ch].emplace_back(re, im);
        }
    }
    validate(rec);
    return rec;
}

void write_recording_binary(std::ostream& os, const BasebandRecording& rec) {
    validate(rec);
    os.write(kMagic, 4);
    put_le<std::uint8_t>(os, rec.mode == BasebandMode::complex_iq ? 0 : 1);
    put_le<std::uint8_t>(os, 3);
    put_le<std::uint16_t>(os, 0);
    put_le<double>(os, rec.sample_rate);
    put_le<double>(os, rec.t0);
    put_le<std::uint64_t>(os, rec.size());
    put_le<std::uint64_t>(os, rec.provenance.seed);
    put_le<std::uint64_t>(os, rec.provenance.config_hash);
    const bool cx = rec.mode == BasebandMode::complex_iq;
    for (std::size_t k = 0; k < rec.size(); ++k) {
        put_le<double>(os, rec.time_at(k));
        for (const auto& ch : rec.channels) {
            put_le<double>(os, ch[k].real());
            if (cx) put_le<double>(os, ch[k].imag());
        }
    }
    if (!os) throw Error(ErrorKind::io, "failed writing recording");
}

BasebandRecording read_recording_binary(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw Error(ErrorKind::io, "bad binary magic");
    BasebandRecording rec;
    const auto mode = get_le<std::uint8_t>(is);
    if (mode > 1) throw Error(ErrorKind::io, "bad mode byte");
    rec.mode = mode == 0 ? BasebandMode::complex_iq : BasebandMode::real;
    if (get_le<std::uint8_t>(is) != 3) throw Error(ErrorKind::io, "only 3-channel recordings are supported");
    (void)get_le<std::uint16_t>(is);
    rec.sample_rate = get_le<double>(is);
    rec.t0 = get_le<double>(is);
    const auto count = get_le<std::uint64_t>(is);
    rec.provenance.seed = get_le<std::uint64_t>(is);
    rec.provenance.config_hash = get_le<std::uint64_t>(is);
    const bool cx = rec.mode == BasebandMode::complex_iq;
    for (auto& ch : rec.channels) ch.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        (void)get_le<double>(is);
        for (auto& ch : rec.channels) {
            const double re = get_le<double>(is);
            const double im = cx ? get_le<double>(is) : 0.0;
            ch.emplace_back(re, im);
        }
    }
    validate(rec);
    return rec;
}

void save_recording(const std::filesystem::path& path, const BasebandRecording& rec) {
    const bool bin = path.extension() == ".bin";
    std::ofstream os(path, bin ? std::ios::binary : std::ios::out);
    if (!os) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
    if (bin)
        write_recording_binary(os, rec);
    else
        write_recording_csv(os, rec);
}

BasebandRecording load_recording(const std::filesystem::path& path) {
    const bool bin = path.extension() == ".bin";
    std::ifstream is(path, bin ? std::ios::binary : std::ios::in);
    if (!is) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
    return bin ? read_recording_binary(is) : read_recording_csv(is);
}

}  // namespace ivr
