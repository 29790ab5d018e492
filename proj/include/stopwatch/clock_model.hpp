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

#include <utility>
#include <vector>

#include "stopwatch/parallel.hpp"
#include "stopwatch/types.hpp"

namespace stopwatch {

/// Larger eigenvalue after dephasing for time t at rate gamma: (1 + e^{-gamma t}) / 2.
double dephased_eigenvalue(double gamma, double t);

/// rho = p |phi><phi| + (1-p) |phi_perp><phi_perp| with
/// |phi> = sqrt(s)|0> + sqrt(1-s) e^{-iT}|1>.
CMatrix qubit_clock_state(double T, double p, double s = 0.5);

/// Closed-form solution of the single-qubit dephasing master equation with unit level
/// splitting: populations are fixed and rho_01 picks up e^{+it} e^{-gamma t}, which is the
/// phase convention where |1> accumulates e^{-it}.
CMatrix evolve_dephasing(const CMatrix& rho, double t, double gamma);

/// rho_{T,p}^{(x) n} in block form, with p taken from the params (directly or via gamma).
BlockState ensemble_state(const ClockParams& params, Exec exec = Exec::kSerial);

/// Exchangeable mixture sum_i w_i rho_i^{(x) n}: sector by sector, the weights add and the
/// blocks combine with weights w_i q_J^{(i)}.
BlockState mixture(const std::vector<std::pair<double, BlockState>>& components);

}  // namespace stopwatch
