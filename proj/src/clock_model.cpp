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

#include "stopwatch/clock_model.hpp"

#include <cmath>
#include <stdexcept>

#include "stopwatch/spin_algebra.hpp"

namespace stopwatch {

double ClockParams::eigenvalue() const {
    if (p) return *p;
    return dephased_eigenvalue(gamma, T + tau0);
}

void ClockParams::validate() const {
    if (n < 1) throw std::invalid_argument("ClockParams: n must be >= 1");
    if (!std::isfinite(T)) throw std::invalid_argument("ClockParams: T must be finite");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("ClockParams: s must lie in (0, 1)");
    if (p) {
        if (!(*p >= 0.5 && *p <= 1.0)) throw std::invalid_argument("ClockParams: p must lie in [1/2, 1]");
    } else {
        if (!(gamma >= 0)) throw std::invalid_argument("ClockParams: gamma must be >= 0");
        if (!(tau0 >= 0)) throw std::invalid_argument("ClockParams: tau0 must be >= 0");
        if (gamma > 0 && T + tau0 < 0) throw std::invalid_argument("ClockParams: T + tau0 must be >= 0 when gamma > 0");
    }
}

double dephased_eigenvalue(double gamma, double t) {
    if (gamma < 0 || t < 0) {
        if (gamma == 0) return 1.0;
        throw std::invalid_argument("dephased_eigenvalue: need gamma >= 0 and t >= 0");
    }
    return 0.5 * (1.0 + std::exp(-gamma * t));
}

CMatrix qubit_clock_state(double T, double p, double s) {
    if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("qubit_clock_state: p must lie in [1/2, 1]");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("qubit_clock_state: s must lie in (0, 1)");
    const double a = std::sqrt(s), b = std::sqrt(1 - s);
    Eigen::Vector2cd phi(a, b * std::polar(1.0, -T));
    Eigen::Vector2cd perp(b, -a * std::polar(1.0, -T));
    return p * phi * phi.adjoint() + (1 - p) * perp * perp.adjoint();
}

CMatrix evolve_dephasing(const CMatrix& rho, double t, double gamma) {
    if (rho.rows() != 2 || rho.cols() != 2) throw std::invalid_argument("evolve_dephasing: expected a 2x2 matrix");
    if (!(t >= 0) || !(gamma >= 0)) throw std::invalid_argument("evolve_dephasing: need t >= 0 and gamma >= 0");
    if ((rho - rho.adjoint()).norm() > 1e-10) throw std::invalid_argument("evolve_dephasing: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("evolve_dephasing: input is not PSD");

    CMatrix out = rho;
    Complex f = std::polar(std::exp(-gamma * t), t);
    out(0, 1) = rho(0, 1) * f;
    out(1, 0) = rho(1, 0) * std::conj(f);
    return out;
}

BlockState ensemble_state(const ClockParams& params, Exec exec) { return block_state(params, exec); }

BlockState mixture(const std::vector<std::pair<double, BlockState>>& components) {
    if (components.empty()) throw std::invalid_argument("mixture: no components");
    double wsum = 0;
    for (const auto& [w, st] : components) {
        if (w < 0) throw std::invalid_argument("mixture: negative weight");
        wsum += w;
    }
    if (!(wsum > 0)) throw std::invalid_argument("mixture: weights must not all vanish");

    const BlockState& first = components.front().second;
    BlockState out;
    out.n = first.n;
    out.sectors.resize(first.sectors.size());
    for (std::size_t idx = 0; idx < first.sectors.size(); ++idx) {
        const Sector& ref = first.sectors[idx];
        Sector& dst = out.sectors[idx];
        dst.log_multiplicity = ref.log_multiplicity;
        dst.block.two_j = ref.two_j();
        dst.block.matrix = CMatrix::Zero(ref.block.dim(), ref.block.dim());
        double weight = 0;
        for (const auto& [w, st] : components) {
            if (st.n != out.n || st.sectors.size() != first.sectors.size()) {
                throw std::invalid_argument("mixture: components have different qubit counts");
            }
            const Sector& s = st.sectors[idx];
            double ws = (w / wsum) * s.weight;
            weight += ws;
            dst.block.matrix += ws * s.block.matrix;
        }
        dst.weight = weight;
        if (weight > 0) {
            dst.block.matrix /= weight;
        } else {
            // Sector carries no weight in any component; keep a normalized placeholder.
            dst.block.matrix = ref.block.matrix;
        }
    }
    return out;
}

}  // namespace stopwatch
