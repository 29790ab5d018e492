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

#pragma once

#include <cstdint>
#include <random>

namespace stopwatch {

// Every loop that fans out over trials, spin sectors or grid points takes one of these.
// kSerial is the reference path; kParallel must produce bitwise-identical results.
enum class Exec { kSerial, kParallel };

/// Worker count for kParallel loops: omp_get_max_threads(), capped by STOPWATCH_THREADS if set.
int worker_count();

/// SplitMix64 step. Used to derive independent per-trial seeds from one base seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` of a stream rooted at `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits, so the stream is the same on every
/// standard library (std::uniform_real_distribution is not).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Standard normal draw by Box-Muller on uniform01; deterministic across platforms.
double standard_normal(Rng& rng);

}  // namespace stopwatch
