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

#include <filesystem>
#include <iosfwd>

#include "ivr/synthesis.hpp"

namespace ivr {

// Text format:
//   #ivr1,rate=<Sps>,mode=<complex|real>,channels=3,t0=<s>
//   #provenance,seed=<u64>,config_hash=<u64>        (optional)
//   t,ch1_re[,ch1_im],ch2_re[,ch2_im],ch3_re[,ch3_im]
// Numbers are written in shortest round-trip form, so reading back yields
// bit-identical samples.
void write_recording_csv(std::ostream& os, const BasebandRecording& rec);
BasebandRecording read_recording_csv(std::istream& is);

// Binary twin, little-endian:
//   "IVR1" u8 mode u8 channels u16 reserved f64 rate f64 t0 u64 count
//   u64 seed u64 config_hash, then `count` records of f64 fields in the
//   CSV column order (including t).
void write_recording_binary(std::ostream& os, const BasebandRecording& rec);
BasebandRecording read_recording_binary(std::istream& is);

// Dispatch on extension: ".bin" selects binary, anything else CSV.
void save_recording(const std::filesystem::path& path, const BasebandRecording& rec);
BasebandRecording load_recording(const std::filesystem::path& path);

}  // namespace ivr
