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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stopwatch/parallel.hpp"
#include "stopwatch/special.hpp"
#include "stopwatch/types.hpp"

namespace stopwatch {

// ---------------------------------------------------------------------------
// Single-qubit covariant measurement

/// Outcome density of the covariant qubit measurement: (1 + (2p-1) cos(tau - T)) / 2 pi.
double povm_pdf(double tau, double T, double p);

struct MeasurementSample {
    std::vector<double> outcomes;  // each in [0, 2 pi)
    double true_T = 0;
    double true_p = 1;
    std::uint64_t rng_seed = 0;
};

/// n i.i.d. outcomes from povm_pdf, by rejection from the uniform envelope.
MeasurementSample sample_outcomes(int n, double T, double p, std::uint64_t seed);

/// Same draws written into an existing buffer; used in hot Monte Carlo loops.
void sample_outcomes_into(std::vector<double>& out, int n, double T, double p, Rng& rng);

struct MleOptions {
    /// When set, p is pinned to (1 + e^{-gamma (T + tau0)}) / 2 and only T is fitted.
    std::optional<double> gamma_known;
    double tau0 = 0;
    /// Search window for T when gamma is known (p depends on T, so there is no 2 pi symmetry).
    double t_min = 0;
    double t_max = kTwoPi;
};

struct MleResult {
    double T_hat = 0;
    double p_hat = 0.5;
    double log_likelihood = 0;
    bool degenerate = false;  // likelihood plateau at p ~ 1/2; T_hat is the circular mean
    int iterations = 0;
};

/// Maximum-likelihood fit of (T, p) to local outcomes. Needs at least two outcomes.
///
/// The fit profiles out a = 2p - 1 (concave for fixed T) and runs safeguarded Newton on
/// the profile in T from the circular mean and two rotated restarts.
MleResult mle_estimate(const std::vector<double>& outcomes, const MleOptions& opts = {});
MleResult mle_estimate(const MeasurementSample& sample, const MleOptions& opts = {});

/// Log-likelihood sum_i log(1 + a cos(tau_i - T)) with a = 2p - 1 (the 2 pi constant is dropped).
double log_likelihood(const std::vector<double>& outcomes, double T, double p);

// ---------------------------------------------------------------------------
// Fisher informations (per qubit)

/// 1 - 2 sqrt(p (1-p)).
double fisher_local(double p);
/// Known decay rate: 1 - gamma^2 - sqrt(1 - e^{-2 gamma T}) + gamma^2 / sqrt(1 - e^{-2 gamma T}).
/// Returns 1 at gamma = 0.
double fisher_noisy_known(double gamma, double T);
/// Decay rate as a nuisance parameter: 1 - sqrt(1 - e^{-2 gamma T}).
double fisher_noisy_nuisance(double gamma, double T);

/// Leading-order inaccuracy sqrt(8 / (n F)) erf^{-1}(P); +inf for F = 0.
double inaccuracy_analytic(int n, double P, double F);

// ---------------------------------------------------------------------------
// Covariant measurement on block states

/// Fourier coefficients c_D = sum_r rho[r + D, r] for D = 0..2J of one block.
/// A block's outcome density is (1/2 pi)[c_0 + 2 Re sum_{D>0} c_D e^{i D tau}].
std::vector<Complex> block_fourier(const CMatrix& rho);

/// Outcome density of the covariant measurement on a block state (sum over sectors).
double block_pdf(const BlockState& state, double tau);

/// Exact probability that the covariant outcome lands within delta/2 of T (circularly).
double covariant_coverage(const BlockState& state, double T, double delta);

/// Smallest delta with covariant_coverage >= P, by bisection to 1e-12.
double covariant_inaccuracy(const BlockState& state, double T, double P);

/// Fourier coefficients C_D (D = 0..n) of the covariant outcome density of a whole block state,
/// sum_J q_J c_D^J. Coefficients of a sum of independent outcomes multiply, which gives exact
/// inaccuracies for the incoherent protocol as well.
std::vector<Complex> covariant_coefficients(const BlockState& state);

/// Smallest delta such that the density with coefficients C puts mass >= P within delta/2 of T.
double inaccuracy_from_coefficients(const std::vector<Complex>& coeff, double T, double P);

/// Precomputed sampler for the covariant measurement on a fixed block state.
class CovariantSampler {
public:
    explicit CovariantSampler(const BlockState& state);
    /// One outcome in [0, 2 pi): pick a sector by q_J, then invert its CDF.
    double draw(Rng& rng) const;
    double pdf(double tau) const;

private:
    struct Part {
        double weight;
        std::vector<Complex> coeff;  // c_D, D = 0..2J
    };
    std::vector<Part> parts_;
    std::vector<double> cumulative_;
    double sector_cdf(const Part& part, double tau) const;
    double sector_pdf(const Part& part, double tau) const;
};

// ---------------------------------------------------------------------------
// Operational inaccuracy

struct InaccuracyReport {
    double P = 0.9;
    double delta = 0;
    double ci_low = 0;
    double ci_high = 0;
    int trials = 0;
    int n = 0;
    std::string estimator;
    double worst_T = 0;
    bool saturated = false;
};

/// delta(P) from a list of absolute circular errors: twice the ceil(P N)-th order statistic.
double delta_from_errors(std::vector<double> errors, double P);

/// Percentile bootstrap of delta_from_errors. Returns {low, high} for the given level.
std::pair<double, double> bootstrap_delta(const std::vector<double>& errors, double P, int resamples,
                                          std::uint64_t seed, double level = 0.95);

/// Estimator used by inaccuracy_empirical: given the true T and a per-trial rng, returns T_hat.
using Estimator = std::function<double(double T, Rng& rng)>;

struct EmpiricalOptions {
    int bootstrap_resamples = 1000;
    std::string estimator_name = "custom";
    Exec exec = Exec::kSerial;
};

/// Worst-case over T_grid of the empirical delta(P), with a bootstrap CI at the worst point.
/// Trial t at grid point g uses the seed derive_seed(derive_seed(seed, g), t), so serial and
/// parallel runs agree bit for bit.
InaccuracyReport inaccuracy_empirical(const Estimator& estimator, int n, const std::vector<double>& T_grid,
                                      double P, int trials, std::uint64_t seed, const EmpiricalOptions& opts = {});

/// Raw estimates of `trials` independent runs; trial t draws from derive_seed(seed, t).
std::vector<double> trial_estimates(const Estimator& estimator, double T, int trials, std::uint64_t seed, Exec exec);
/// Per-trial circular errors at one T (used by inaccuracy_empirical and the protocols).
std::vector<double> trial_errors(const Estimator& estimator, double T, int trials, std::uint64_t seed, Exec exec);

/// Default fiducial grid: `points` values over [0.1, 2 pi - 0.1], or [0.1, min(5/gamma, 2 pi - 0.1)] for gamma > 0.
std::vector<double> fiducial_grid(int points, double gamma = 0);

// ---------------------------------------------------------------------------
// Bounds

/// P delta_T / (D + 1).
double size_accuracy_bound(double D, double delta_T, double P);
/// log2(1 / delta).
double memory_bound(double delta, double P);

struct BoundCheck {
    bool ok = true;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;  // lhs - rhs
};

/// measured delta >= P delta_T / (D + 1).
BoundCheck check_size_accuracy(double measured_delta, double D, double delta_T, double P);
/// memory_qubits + slack >= log2(1 / delta).
BoundCheck check_memory(int memory_qubits, double measured_delta, double P, double slack = 2.0);

/// Smallest subspace dimension supporting a family of states:
/// n + 1 for a pure symmetric clock, 2^n for a mixed one, 2^q for a q-qubit memory.
double effective_dimension_pure(int n);
double effective_dimension_mixed(int n);
double effective_dimension_memory(int qubits);

}  // namespace stopwatch
