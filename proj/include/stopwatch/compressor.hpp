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

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stopwatch/parallel.hpp"
#include "stopwatch/types.hpp"

namespace stopwatch {

/// How many energy levels of each spin sector the memory keeps.
///
///  - kAsymptotic: levels with |m - (2s-1)J| <= sqrt(J) log2(J) / 2.
///  - kQubitBudget: 2^q - 1 consecutive levels centred on (2s-1)J plus one flag level
///    that records "the state left the window"; sectors with 2J+1 <= 2^q are kept whole.
///
/// In both cases a sector is kept whole when that costs no more qubits than compressing it.
struct WindowPolicy {
    enum class Kind { kAsymptotic, kQubitBudget };
    Kind kind = Kind::kAsymptotic;
    int qubits = 0;

    static WindowPolicy asymptotic() { return {}; }
    static WindowPolicy qubit_budget(int q) { return {Kind::kQubitBudget, q}; }
    /// Parses "asymptotic" or "qubit-budget=q". Throws std::invalid_argument otherwise.
    static WindowPolicy parse(const std::string& text);
    std::string name() const;
};

/// Replacement state used when the projection fails. kDiscarded is the channel the memory
/// actually implements (flag level decoded to the mixture of the discarded levels); the
/// others exist to compare conventions.
enum class LeakState { kDiscarded, kWindow, kFull, kNone };

struct ProjectionWindow {
    int two_j = 0;
    double center = 0;      // (2s - 1) J
    double half_width = 0;  // only meaningful for the asymptotic policy
    int first_row = 0;      // kept rows are first_row .. first_row + count - 1 (m = J - row)
    int count = 0;
    bool whole = true;      // every level kept, no flag needed
    int memory_qubits = 0;

    bool keeps(int row) const { return row >= first_row && row < first_row + count; }
    int discarded() const { return two_j + 1 - count; }
};

/// Window for one sector. Throws if the policy would leave zero memory levels.
ProjectionWindow make_window(int two_j, double s, const WindowPolicy& policy);

/// The raw asymptotic window {m : |m - c| <= sqrt(J) log2 J / 2} without the
/// keep-whole shortcut (nearest level when empty). This is the set the projection bound is about.
ProjectionWindow asymptotic_window(int two_j, double s);

struct MemoryRecord {
    int two_j = 0;
    double weight = 0;  // q_J of the sector the Schur measurement found
    double log_multiplicity = 0;
    ProjectionWindow window;
    CMatrix kept_block;  // P rho P restricted to the window (not renormalized)
    double leakage = 0;  // 1 - Tr[P rho P]
    int memory_qubits = 0;
};

struct EncodedState {
    int n = 0;
    double s = 0.5;
    LeakState leak_state = LeakState::kDiscarded;
    std::vector<MemoryRecord> records;
    int spin_register_qubits = 0;  // ceil(log2(#sectors with q_J > 1e-12))
    /// max over sectors with q_J > 1e-12 of memory_qubits + spin_register_qubits.
    int total_qubits = 0;
    /// Qubits of the most probable sector alone.
    int modal_memory_qubits = 0;
};

/// Applies P rho P + (1 - Tr[P rho P]) rho0 to one block, returning the record and the
/// channel output in the full (2J+1)-level basis.
std::pair<MemoryRecord, SpinBlock> frequency_project(const SpinBlock& block, const ProjectionWindow& window,
                                                     LeakState leak_state = LeakState::kDiscarded);

EncodedState encode(const BlockState& state, double s, const WindowPolicy& policy,
                    LeakState leak_state = LeakState::kDiscarded, Exec exec = Exec::kSerial);

/// Rebuilds the block state from the memory. Throws if `n` does not match.
BlockState decode(const EncodedState& memory, int n);

/// decode(encode(state)).
BlockState compress(const BlockState& state, double s, const WindowPolicy& policy,
                    LeakState leak_state = LeakState::kDiscarded, Exec exec = Exec::kSerial);

struct CompressionReport {
    double eps_trace = 0;        // (1/2) || a - b ||_1
    double fidelity = 0;         // root fidelity F = Tr sqrt(sqrt(a) b sqrt(a))
    double infidelity = 0;       // 1 - F
    double infidelity_sq = 0;    // 1 - F^2
    int memory_qubits = 0;
    double bound_value = std::numeric_limits<double>::quiet_NaN();
    bool bound_satisfied = true;
};

/// Trace distance and fidelity between two block states of the same n, sector by sector.
CompressionReport compression_error(const BlockState& a, const BlockState& b);

/// (1/2) || a - b ||_1 for two Hermitian matrices.
double trace_distance(const CMatrix& a, const CMatrix& b);

/// Root fidelity Tr sqrt(sqrt(a) b sqrt(a)) for two PSD matrices.
double root_fidelity(const CMatrix& a, const CMatrix& b);

/// Exact projection error of one sector under the raw asymptotic window.
double projection_error(int two_j, double p, double s = 0.5, double T = 0.0);

/// Finite-J chain for the projection error of the asymptotic window:
/// (3/2) sqrt(exp[-ln^2 J/(4 ln^2 2) + a ln(2J) + a ln(s/(1-s))] + ((1-p)/p)^{a+1}), a = floor(ln J / 4).
/// Returns +inf for p = 1/2.
double projection_error_bound(double J, double p, double s = 0.5);

/// Single-shot storage bound (3/2)(2/((2p-1)n))^{(1/8) ln(p/(1-p))}.
double single_shot_error_bound(int n, double p);

/// k-event storage bound (3k/2)(2 e^{gamma T}/n)^{(1/8) ln coth(gamma T/2)}. At gamma T = 0
/// the pure-state path k * projection_error_bound(n/2, 1) is used.
double overall_error_bound(int n, int k, double T, double gamma);

}  // namespace stopwatch
