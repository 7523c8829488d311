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

#include <benchmark/benchmark.h>

#include "ivr/dsp.hpp"
#include "ivr/geometry.hpp"
#include "ivr/scene.hpp"
#include "ivr/synthesis.hpp"
#include "ivr/velocity.hpp"

namespace {

using namespace ivr;

const ArrayGeometry kArray = make_square_array(7.26, 41.8e9);

LinearTrajectory pass() { return make_boresight_pass(0.50131, -30.0, 10.0, 0.755, 2.0, 0.0, 4.0); }

RadarConfig noisy(BasebandMode mode) {
    RadarConfig c;
    c.mode = mode;
    c.snr_db = 16.0;
    c.rng_seed = 1;
    return c;
}

void BM_Synthesize(benchmark::State& st) {
    const auto cfg = noisy(static_cast<BasebandMode>(st.range(0)));
    const Scene s{{{pass(), {1.0, 0.0}}}};
    for (auto _ : st) benchmark::DoNotOptimize(synthesize(s, kArray, cfg, {0.0, 4.0}));
}
BENCHMARK(BM_Synthesize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Spectrogram(benchmark::State& st) {
    const auto rec = synthesize({{{pass(), {1.0, 0.0}}}}, kArray, noisy(BasebandMode::complex_iq), {0.0, 4.0});
    SpectrogramParams p;
    p.nfft = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(channel_spectrogram(rec, 0, p));
}
BENCHMARK(BM_Spectrogram)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_Correlate(benchmark::State& st) {
    const auto rec = synthesize({{{pass(), {1.0, 0.0}}}}, kArray, noisy(BasebandMode::real), {0.0, 4.0});
    for (auto _ : st) benchmark::DoNotOptimize(correlate_channels(rec, 1, 0));
}
BENCHMARK(BM_Correlate)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& st) {
    const auto mode = static_cast<BasebandMode>(st.range(0));
    const auto cfg = noisy(mode);
    const auto tr = pass();
    const auto rec = synthesize({{{tr, {1.0, 0.0}}}}, kArray, cfg, {0.0, 4.0});
    const auto prior = make_prior(tr);
    for (auto _ : st) benchmark::DoNotOptimize(reconstruct(rec, kArray, cfg, {}, prior));
}
BENCHMARK(BM_Reconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
