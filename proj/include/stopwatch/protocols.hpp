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
#include <string>
#include <vector>

#include "stopwatch/compressor.hpp"
#include "stopwatch/estimation.hpp"
#include "stopwatch/parallel.hpp"
#include "stopwatch/types.hpp"

namespace stopwatch {

struct EventSchedule {
    std::vector<double> durations;      // T_0 .. T_{k-1}, each > 0
    std::vector<double> lag_gamma;      // memory dephasing rate between events j and j+1 (default 0)
    std::vector<double> lag_durations;  // length of each lag (default 1)
    /// Off-diagonal (r, r') decays as e^{-g dt (r - r')^2 / 2} instead of the uniform e^{-g dt}.
    bool quadratic_lag = false;

    static EventSchedule equal(int k, double total);

    int k() const { return static_cast<int>(durations.size()); }
    double total() const;
    void validate() const;
};

/// How the final memory (or each incoherent round) is read out.
///   kLocalMle:     each qubit measured with the covariant qubit POVM, then maximum likelihood
///                  with the decay rate known. Only defined on product states.
///   kCovariant:    the covariant measurement M_tau on the whole block state (outcome = estimate).
///   kLeadingOrder: Gaussian estimator T + N(0, 1/(n F)), F the per-qubit Fisher information.
enum class Readout { kLocalMle, kCovariant, kLeadingOrder };

/// kDirect reads the final memory state. kContinuity reads the uncompressed state and pays for
/// compression through the confidence level: delta_coh = delta(P + eps_total).
enum class Accounting { kDirect, kContinuity };

std::string readout_name(Readout r);
std::string accounting_name(Accounting a);
Readout parse_readout(const std::string& s);
Accounting parse_accounting(const std::string& s);

struct ProtocolOptions {
    double P = 0.9;
    int trials = 10000;  // Monte Carlo trials for the inaccuracy (0: exact/analytic value only)
    Readout readout = Readout::kCovariant;
    Accounting accounting = Accounting::kDirect;
    bool compress = true;
    LeakState leak_state = LeakState::kDiscarded;
    double s = 0.5;
    double tau0 = 0;
    int bootstrap_resamples = 1000;
    Exec exec = Exec::kSerial;
    bool keep_estimates = false;  // fill ProtocolResult::estimates (trial-level output)
};

struct ProtocolResult {
    BlockState final_state;          // empty sectors when the readout never needs the state
    InaccuracyReport inaccuracy;     // Monte Carlo delta (or the exact value when trials == 0)
    double exact_delta = kNaN;       // closed-form / exact-coverage delta where available
    double compression_error_total = 0;
    std::vector<double> stage_errors;
    int memory_qubits_peak = 0;
    double effective_dimension = 0;
    std::vector<double> estimates;   // per-trial estimates when opts.keep_estimates
};

/// k-event coherent stopwatch. The clock runs for T_0, is compressed into memory, the memory
/// is decoded back onto the clock for the next event, and so on; one estimation at the end.
///
/// For gamma = 0 the block-state pipeline is exact (phase, compress, lag). For gamma > 0 each
/// compression is applied to the ideal dephased clock state at that event, the stage errors
/// are summed by the triangle inequality, and the final state is the compressed ideal state.
ProtocolResult run_stopwatch(int n, const EventSchedule& schedule, double gamma, const WindowPolicy& policy,
                             std::uint64_t seed, const ProtocolOptions& opts = {});

/// k independent rounds on fresh clocks, one per interval; the estimate is the sum of the k estimates.
ProtocolResult run_incoherent(int n, const EventSchedule& schedule, double gamma, std::uint64_t seed,
                              const ProtocolOptions& opts = {});

enum class RatioMode { kAnalytic, kSimulated };

struct AdvantageResult {
    double ratio = 0;  // delta_incoherent / delta_coherent
    double delta_coherent = 0;
    double delta_incoherent = 0;
    double rescaled_coherent = 0;    // sqrt(n) delta
    double rescaled_incoherent = 0;
};

/// Analytic: sqrt(k F(T) / F(T/k)) with F the known-gamma Fisher information (ratio of sqrt(k) at gamma = 0).
/// Simulated: runs both protocols with equal intervals T/k using opts.
AdvantageResult advantage_ratio(int n, int k, double T, double gamma, double P, RatioMode mode,
                                std::uint64_t seed = 1, ProtocolOptions opts = {});

/// k F(T) >= F(T/k): the coherent protocol is at least as accurate at leading order.
bool crossover_condition(int k, double T, double gamma);

struct SurfacePoint {
    int k = 0;
    double T = 0;
    double ratio = 0;
    double delta_star_coherent = 0;   // sqrt(n) delta at leading order (n-independent)
    double delta_star_incoherent = 0;
};

/// Analytic advantage surface over k = 1..k_max and a T grid.
std::vector<SurfacePoint> advantage_surface(double gamma, int k_max, const std::vector<double>& T_grid, double P,
                                            Exec exec = Exec::kSerial);

/// T grid on [t_lo, t_hi], `points` values.
std::vector<double> linspace(double lo, double hi, int points);

struct NetworkResult {
    double phi_true = 0;
    double phi_estimate = 0;        // one covariant draw under the seed
    double omega_sum_estimate = 0;  // phi_estimate / T0
    double delta_exact = 0;         // exact covariant delta(P) of the final memory
    InaccuracyReport inaccuracy;    // Monte Carlo delta over opts.trials draws
    double compression_error_total = 0;
    int memory_qubits_per_hop = 0;
    int qubit_cost = 0;             // k * memory qubits
    int baseline_cost = 0;          // k * n
    bool ambiguous = false;         // total phase outside the fiducial interval
};

/// Sequential network: node j imprints omega_j T0 on the forwarded memory, which is
/// compressed before each hop. Pure clock (p = 1), covariant readout at the end.
NetworkResult network_sequential(const std::vector<double>& omegas, double T0, int n, const WindowPolicy& policy,
                                 std::uint64_t seed, const ProtocolOptions& opts = {});

/// Gate-error accounting: k eps1 n^4 log2 n of trace distance.
double circuit_error_budget(int k, double eps1, int n);
/// delta + eps_circuit / sqrt(n).
double delta_with_circuit_error(double delta, double eps_circuit, int n);

/// Multiplies off-diagonal (r, r') of every block by e^{-i (r - r') t}.
void apply_phase(BlockState& state, double t);
/// Lag-time memory dephasing at rate g for duration dt.
void apply_lag(BlockState& state, double g, double dt, bool quadratic);

}  // namespace stopwatch
