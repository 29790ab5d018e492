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

#include <vector>

#include "stopwatch/parallel.hpp"
#include "stopwatch/types.hpp"

namespace stopwatch {

/// Wigner small-d matrix d^J(theta) = exp(-i theta J_y) in the |J, m> basis.
/// Entry (i, j) is d^J_{m k} with m = J - i, k = J - j.
///
/// Columns are built by the three-term recursion in m, run inward from both edges
/// (where the closed-form edge values are known) and carried with a running log
/// scale so that nothing overflows or underflows at large J.
RMatrix wigner_small_d(int two_j, double theta);

/// Rotation angle of the basis |J, m>_s: cos^2(theta / 2) = s.
double basis_angle(double s);

/// Overlap table O(i, j) = <J, m|_s |J, k> with m = J - i (rotated basis) and k = J - j
/// (energy basis). Rows of O are the rotated basis vectors; O is real orthogonal.
RMatrix overlap_table(int two_j, double s);

/// One entry of overlap_table; two_m and two_k are 2m and 2k.
double symmetric_overlap(int two_j, int two_m, int two_k, double s);

/// Upper bound on |<J, m|_s |J, k>| in the two branches s >= 1/2 and s < 1/2.
double overlap_bound(int two_j, int two_m, int two_k, double s);

/// log of the permutation multiplicity m_J = C(n, n/2 - J) (2J + 1) / (n/2 + J + 1).
double log_multiplicity(int n, int two_j);

/// Exact m_J as an integer; only valid while it fits in 64 bits (n <= 60 or so).
unsigned long long multiplicity(int n, int two_j);

/// Exact q_J for J = n/2, n/2 - 1, ..., (n mod 2)/2 (index 0 is the top spin).
/// q_J = m_J (p(1-p))^{n/2 - J} sum_{j=0}^{2J} p^{2J-j} (1-p)^j, evaluated in log space.
std::vector<double> schur_weights(int n, double p);

/// Gaussian closed form (2J+1)/(2 J0) [B(n/2 + J + 1) - B(n/2 - J)] with
/// B(k) = C(n,k) p^k (1-p)^{n-k}, J0 = (p - 1/2)(n + 1). Asymptotic cross-check only:
/// it is not normalized and it degenerates at p = 1.
std::vector<double> schur_weights_closed_form(int n, double p);

/// Block-diagonal representation of rho_{T,p}^{(x) n} for the clock state rho_{T,p}.
/// Guarded at n <= 4096.
BlockState block_state(const ClockParams& params, Exec exec = Exec::kSerial);

/// The spin block rho_{T,p,J} alone (normalized).
SpinBlock spin_block(int two_j, double T, double p, double s);

}  // namespace stopwatch
