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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "ivr/types.hpp"

namespace ivr::detail {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(std::size_t n, bool inverse) {
    static std::map<std::pair<std::size_t, bool>, fftw_plan> cache;
    std::lock_guard lock(plan_mutex());
    auto it = cache.find({n, inverse});
    if (it != cache.end()) return it->second;
    std::vector<fftw_complex> a(n), b(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), a.data(), b.data(), inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error(ErrorKind::numeric, "FFTW plan creation failed");
    cache.emplace(std::make_pair(n, inverse), p);
    return p;
}

}  // namespace

void fft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, bool inverse) {
    if (in.size() != out.size()) throw Error(ErrorKind::invalid_argument, "fft size mismatch");
    if (in.empty()) return;
    fftw_plan p = get_plan(in.size(), inverse);
    // FFTW does not modify the input of an out-of-place complex transform.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    if (src == dst) {
        std::vector<std::complex<double>> tmp(in.begin(), in.end());
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()), dst);
    } else {
        fftw_execute_dft(p, src, dst);
    }
}

}  // namespace ivr::detail
