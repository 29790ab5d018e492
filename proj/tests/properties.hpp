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

// Randomized property checks shared by the unit tests and the acceptance run. Each returns
// the worst value seen so a failure can be reported with a number, not just a flag.

#pragma once

#include <cstdint>
#include <string>

namespace stopwatch::property {

struct Outcome {
    bool ok = false;
    double worst = 0;    // the quantity compared against the tolerance (or margin, for MC checks)
    std::string detail;  // human-readable summary of the worst case
};

/// Compression output of random block states keeps unit trace and PSD blocks.
Outcome channel_trace_and_psd(std::uint64_t seed);
/// Compression error does not depend on the clock phase T.
Outcome phase_independence(std::uint64_t seed);
/// evolve(evolve(rho, t1), t2) = evolve(rho, t1 + t2), and the dephased product state equals
/// the clock state at the dephased eigenvalue.
Outcome dephasing_semigroup(std::uint64_t seed);
/// sum_J q_J = 1 for n up to 2000.
Outcome schur_normalization(std::uint64_t seed);
/// Empirical covariant delta after encode/decode >= before, minus the bootstrap CI width,
/// for n in {8, 16} and p in {0.9, 1}.
Outcome data_processing(std::uint64_t seed, int trials);
/// For rho = (rho_{0.95} + rho_{0.75}) / 2, empirical delta >= the smaller component delta
/// minus the CI width.
Outcome mixing(std::uint64_t seed, int trials);
/// Coverage at fixed delta of two states at trace distance eps differs by <= eps + 3 sigma.
Outcome continuity(std::uint64_t seed, int trials);

}  // namespace stopwatch::property
