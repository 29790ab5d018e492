// Copyright 2026 The Stopwatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP for the data-parallel kernels. The second benchmark argument
// selects the path (0 serial, 1 parallel); results are bitwise identical, only time differs.

#include <benchmark/benchmark.h>

#include <vector>

#include "stopwatch/clock_model.hpp"
#include "stopwatch/compressor.hpp"
#include "stopwatch/estimation.hpp"
#include "stopwatch/protocols.hpp"
#include "stopwatch/spin_algebra.hpp"

namespace sw = stopwatch;

namespace {

sw::Exec exec_of(const benchmark::State& state) { return state.range(1) ? sw::Exec::kParallel : sw::Exec::kSerial; }

void BM_BlockState(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto st = sw::block_state(sw::ClockParams::with_p(n, 1.1, 0.9), exec_of(state));
        benchmark::DoNotOptimize(st.sectors.data());
    }
}
BENCHMARK(BM_BlockState)->ArgsProduct({{64, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto st = sw::block_state(sw::ClockParams::with_p(n, 1.1, 0.9));
    for (auto _ : state) {
        auto mem = sw::encode(st, 0.5, sw::WindowPolicy::asymptotic(), sw::LeakState::kDiscarded, exec_of(state));
        benchmark::DoNotOptimize(mem.records.data());
    }
}
BENCHMARK(BM_Encode)->ArgsProduct({{64, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TrialErrors(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    sw::Estimator est = [n](double T, sw::Rng& rng) {
        std::vector<double> buf;
        sw::sample_outcomes_into(buf, n, T, 0.9, rng);
        return sw::mle_estimate(buf).T_hat;
    };
    for (auto _ : state) {
        auto err = sw::trial_errors(est, 1.3, 2000, 5, exec_of(state));
        benchmark::DoNotOptimize(err.data());
    }
}
BENCHMARK(BM_TrialErrors)->ArgsProduct({{16, 100}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_AdvantageSurface(benchmark::State& state) {
    auto grid = sw::linspace(0.05, sw::kPi, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto pts = sw::advantage_surface(0.2, 50, grid, 0.9, exec_of(state));
        benchmark::DoNotOptimize(pts.data());
    }
}
BENCHMARK(BM_AdvantageSurface)->ArgsProduct({{64, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
