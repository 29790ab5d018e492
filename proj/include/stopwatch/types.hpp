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

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace stopwatch {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;

// Spins are carried as 2J so that half-integers stay exact.
inline double spin_value(int two_j) { return 0.5 * two_j; }

/// Density matrix of one spin sector, (2J+1) x (2J+1).
///
/// Row r holds |J, m> with m = J - r, so r is the number of excitations above the
/// sector's ground level and the free evolution multiplies entry (r, r') by e^{-i(r-r')t}.
struct SpinBlock {
    int two_j = 0;
    CMatrix matrix;

    int dim() const { return two_j + 1; }
};

/// One Schur sector: the block state, its probability q_J and log of the
/// permutation-register dimension m_J (m_J overflows a double long before n = 2000).
struct Sector {
    double weight = 0;
    double log_multiplicity = 0;
    SpinBlock block;

    int two_j() const { return block.two_j; }
};

/// Block-diagonal permutation-invariant state of n qubits; sectors ordered J = n/2, n/2 - 1, ...
struct BlockState {
    int n = 0;
    std::vector<Sector> sectors;

    double total_weight() const {
        double acc = 0;
        for (const auto& s : sectors) acc += s.weight;
        return acc;
    }
};

/// Parameters of an i.i.d. clock ensemble. Either `p` is set directly, or it is derived
/// from the dephasing rate as p = (1 + exp(-gamma (T + tau0))) / 2.
struct ClockParams {
    int n = 1;
    double T = 0;
    double s = 0.5;
    std::optional<double> p;
    double gamma = 0;
    double tau0 = 0;

    static ClockParams with_p(int n, double T, double p, double s = 0.5) {
        ClockParams c;
        c.n = n;
        c.T = T;
        c.p = p;
        c.s = s;
        return c;
    }
    static ClockParams with_gamma(int n, double T, double gamma, double tau0 = 0, double s = 0.5) {
        ClockParams c;
        c.n = n;
        c.T = T;
        c.gamma = gamma;
        c.tau0 = tau0;
        c.s = s;
        return c;
    }

    /// The larger eigenvalue of the single-qubit state.
    double eigenvalue() const;
    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

}  // namespace stopwatch
