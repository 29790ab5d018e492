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

#include "stopwatch/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stopwatch/special.hpp"
#include "stopwatch/spin_algebra.hpp"

namespace stopwatch {

namespace {

int ceil_log2(long long x) {
    int q = 0;
    while ((1LL << q) < x) ++q;
    return q;
}

}  // namespace

WindowPolicy WindowPolicy::parse(const std::string& text) {
    if (text == "asymptotic") return asymptotic();
    const std::string prefix = "qubit-budget=";
    if (text.rfind(prefix, 0) == 0) {
        std::string rest = text.substr(prefix.size());
        std::size_t used = 0;
        int q = -1;
        try {
            q = std::stoi(rest, &used);
        } catch (...) {
            used = 0;
        }
        if (used != rest.size() || rest.empty()) throw std::invalid_argument("bad qubit budget in '" + text + "'");
        if (q < 1) throw std::invalid_argument("qubit budget must be >= 1");
        return qubit_budget(q);
    }
    throw std::invalid_argument("unknown window policy '" + text + "' (expected asymptotic or qubit-budget=q)");
}

std::string WindowPolicy::name() const {
    if (kind == Kind::kAsymptotic) return "asymptotic";
    return "qubit-budget=" + std::to_string(qubits);
}

ProjectionWindow asymptotic_window(int two_j, double s) {
    if (two_j < 0) throw std::invalid_argument("asymptotic_window: negative spin");
    const double J = 0.5 * two_j;
    ProjectionWindow w;
    w.two_j = two_j;
    w.center = (2 * s - 1) * J;
    w.half_width = (J > 0) ? 0.5 * std::sqrt(J) * std::log2(J) : 0.0;

    // |J - r - c| <= h  <=>  r in [J - c - h, J - c + h]
    constexpr double kSlack = 1e-12;
    int lo = static_cast<int>(std::ceil(J - w.center - w.half_width - kSlack));
    int hi = static_cast<int>(std::floor(J - w.center + w.half_width + kSlack));
    lo = std::max(lo, 0);
    hi = std::min(hi, two_j);
    if (lo > hi) {
        lo = hi = std::clamp(static_cast<int>(std::lround(J - w.center)), 0, two_j);
    }
    w.first_row = lo;
    w.count = hi - lo + 1;
    w.whole = (w.count == two_j + 1);
    w.memory_qubits = w.whole ? ceil_log2(two_j + 1) : ceil_log2(w.count + 1);
    return w;
}

ProjectionWindow make_window(int two_j, double s, const WindowPolicy& policy) {
    if (two_j < 0) throw std::invalid_argument("make_window: negative spin");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("make_window: s must lie in (0, 1)");
    const int dim = two_j + 1;
    const double J = 0.5 * two_j;
    const int full_cost = ceil_log2(dim);

    ProjectionWindow whole;
    whole.two_j = two_j;
    whole.center = (2 * s - 1) * J;
    whole.first_row = 0;
    whole.count = dim;
    whole.whole = true;
    whole.memory_qubits = full_cost;

    if (policy.kind == WindowPolicy::Kind::kQubitBudget) {
        if (policy.qubits < 1) throw std::invalid_argument("qubit budget forces fewer than one memory qubit");
        if (policy.qubits >= 30 || dim <= (1 << policy.qubits)) return whole;
        const int L = (1 << policy.qubits) - 1;
        int r0 = static_cast<int>(std::lround(J - 0.5 * (L - 1) - whole.center));
        r0 = std::clamp(r0, 0, dim - L);
        ProjectionWindow w = whole;
        w.first_row = r0;
        w.count = L;
        w.whole = false;
        w.memory_qubits = policy.qubits;
        return w;
    }

    ProjectionWindow w = asymptotic_window(two_j, s);
    if (w.memory_qubits >= full_cost) {
        whole.half_width = w.half_width;
        return whole;
    }
    return w;
}

std::pair<MemoryRecord, SpinBlock> frequency_project(const SpinBlock& block, const ProjectionWindow& window,
                                                     LeakState leak_state) {
    const int dim = block.dim();
    if (window.two_j != block.two_j) throw std::invalid_argument("frequency_project: window and block spins differ");
    if (block.matrix.rows() != dim || block.matrix.cols() != dim) {
        throw std::invalid_argument("frequency_project: block has the wrong shape");
    }

    MemoryRecord rec;
    rec.two_j = block.two_j;
    rec.window = window;
    rec.memory_qubits = window.memory_qubits;
    rec.kept_block = block.matrix.block(window.first_row, window.first_row, window.count, window.count);

    SpinBlock out;
    out.two_j = block.two_j;
    if (window.whole) {
        rec.leakage = 0;
        out.matrix = block.matrix;
        return {rec, out};
    }

    rec.leakage = std::clamp(1.0 - rec.kept_block.trace().real(), 0.0, 1.0);
    out.matrix = CMatrix::Zero(dim, dim);
    out.matrix.block(window.first_row, window.first_row, window.count, window.count) = rec.kept_block;
    switch (leak_state) {
        case LeakState::kDiscarded: {
            double share = rec.leakage / window.discarded();
            for (int r = 0; r < dim; ++r)
                if (!window.keeps(r)) out.matrix(r, r) += share;
            break;
        }
        case LeakState::kWindow: {
            double share = rec.leakage / window.count;
            for (int r = window.first_row; r < window.first_row + window.count; ++r) out.matrix(r, r) += share;
            break;
        }
        case LeakState::kFull: {
            double share = rec.leakage / dim;
            for (int r = 0; r < dim; ++r) out.matrix(r, r) += share;
            break;
        }
        case LeakState::kNone:
            break;
    }
    return {rec, out};
}

EncodedState encode(const BlockState& state, double s, const WindowPolicy& policy, LeakState leak_state, Exec exec) {
    EncodedState mem;
    mem.n = state.n;
    mem.s = s;
    mem.leak_state = leak_state;
    const int count = static_cast<int>(state.sectors.size());
    mem.records.resize(count);

    // Windows are built up front so that configuration errors surface outside the parallel region.
    std::vector<ProjectionWindow> windows;
    windows.reserve(count);
    for (const auto& sec : state.sectors) windows.push_back(make_window(sec.two_j(), s, policy));

    auto one = [&](int idx) {
        const Sector& sec = state.sectors[idx];
        MemoryRecord rec = frequency_project(sec.block, windows[idx], leak_state).first;
        rec.weight = sec.weight;
        rec.log_multiplicity = sec.log_multiplicity;
        mem.records[idx] = std::move(rec);
    };
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
        for (int idx = 0; idx < count; ++idx) one(idx);
    } else {
        for (int idx = 0; idx < count; ++idx) one(idx);
    }

    // Only sectors that can actually occur need a label in the spin register.
    int live = 0;
    for (const auto& rec : mem.records)
        if (rec.weight > 1e-12) ++live;
    mem.spin_register_qubits = ceil_log2(std::max(live, 1));
    double best = -1;
    for (const auto& rec : mem.records) {
        if (rec.weight > 1e-12) mem.total_qubits = std::max(mem.total_qubits, rec.memory_qubits + mem.spin_register_qubits);
        if (rec.weight > best) {
            best = rec.weight;
            mem.modal_memory_qubits = rec.memory_qubits;
        }
    }
    return mem;
}

BlockState decode(const EncodedState& memory, int n) {
    if (n != memory.n) throw std::invalid_argument("decode: memory was encoded for a different n");
    BlockState out;
    out.n = n;
    out.sectors.reserve(memory.records.size());
    for (const auto& rec : memory.records) {
        const ProjectionWindow& w = rec.window;
        const int dim = rec.two_j + 1;
        Sector sec;
        sec.weight = rec.weight;
        sec.log_multiplicity = rec.log_multiplicity;
        sec.block.two_j = rec.two_j;
        sec.block.matrix = CMatrix::Zero(dim, dim);
        sec.block.matrix.block(w.first_row, w.first_row, w.count, w.count) = rec.kept_block;
        if (!w.whole && rec.leakage > 0) {
            switch (memory.leak_state) {
                case LeakState::kDiscarded:
                    for (int r = 0; r < dim; ++r)
                        if (!w.keeps(r)) sec.block.matrix(r, r) += rec.leakage / w.discarded();
                    break;
                case LeakState::kWindow:
                    for (int r = w.first_row; r < w.first_row + w.count; ++r) sec.block.matrix(r, r) += rec.leakage / w.count;
                    break;
                case LeakState::kFull:
                    for (int r = 0; r < dim; ++r) sec.block.matrix(r, r) += rec.leakage / dim;
                    break;
                case LeakState::kNone:
                    break;
            }
        }
        out.sectors.push_back(std::move(sec));
    }
    return out;
}

BlockState compress(const BlockState& state, double s, const WindowPolicy& policy, LeakState leak_state, Exec exec) {
    return decode(encode(state, s, policy, leak_state, exec), state.n);
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("trace_distance: shape mismatch");
    CMatrix d = a - b;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double root_fidelity(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("root_fidelity: shape mismatch");
    // Eigenvalues at rounding level are zeroed first: for near-pure states their square
    // roots (~1e-8) would otherwise swamp infidelities of order 1e-5.
    auto clean = [](Eigen::VectorXd v) {
        double cut = 1e-14 * std::max(1.0, v.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v(i) < cut) v(i) = 0.0;
        return v;
    };
    Eigen::SelfAdjointEigenSolver<CMatrix> ea(a);
    Eigen::VectorXd sq = clean(ea.eigenvalues()).cwiseSqrt();
    CMatrix sa = ea.eigenvectors() * sq.asDiagonal() * ea.eigenvectors().adjoint();
    CMatrix m = sa * b * sa;
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> em(m, Eigen::EigenvaluesOnly);
    return clean(em.eigenvalues()).cwiseSqrt().sum();
}

CompressionReport compression_error(const BlockState& a, const BlockState& b) {
    if (a.n != b.n || a.sectors.size() != b.sectors.size()) {
        throw std::invalid_argument("compression_error: states have different qubit counts");
    }
    CompressionReport rep;
    double eps = 0, fid = 0;
    for (std::size_t i = 0; i < a.sectors.size(); ++i) {
        const Sector& x = a.sectors[i];
        const Sector& y = b.sectors[i];
        if (x.two_j() != y.two_j()) throw std::invalid_argument("compression_error: sector order differs");
        if (x.weight == 0 && y.weight == 0) continue;
        eps += trace_distance(x.weight * x.block.matrix, y.weight * y.block.matrix);
        if (x.weight > 0 && y.weight > 0) fid += std::sqrt(x.weight * y.weight) * root_fidelity(x.block.matrix, y.block.matrix);
    }
    rep.eps_trace = eps;
    rep.fidelity = std::min(fid, 1.0);
    rep.infidelity = 1.0 - rep.fidelity;
    rep.infidelity_sq = 1.0 - rep.fidelity * rep.fidelity;
    return rep;
}

double projection_error(int two_j, double p, double s, double T) {
    SpinBlock block = spin_block(two_j, T, p, s);
    ProjectionWindow w = asymptotic_window(two_j, s);
    SpinBlock out = frequency_project(block, w).second;
    return trace_distance(out.matrix, block.matrix);
}

double projection_error_bound(double J, double p, double s) {
    if (!(J >= 2)) throw std::invalid_argument("projection_error_bound: needs J >= 2");
    if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("projection_error_bound: p must lie in [1/2, 1]");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("projection_error_bound: s must lie in (0, 1)");
    if (p == 0.5) return kInf;
    const double lj = std::log(J);
    const double ln2 = std::log(2.0);
    const double a = std::floor(lj / 4.0);
    double first = std::exp(-lj * lj / (4 * ln2 * ln2) + a * std::log(2 * J) + a * std::log(s / (1 - s)));
    double second = (p == 1.0) ? 0.0 : std::pow((1 - p) / p, a + 1);
    return 1.5 * std::sqrt(first + second);
}

double single_shot_error_bound(int n, double p) {
    if (n < 1) throw std::invalid_argument("single_shot_error_bound: n must be >= 1");
    if (!(p > 0.5 && p <= 1.0)) throw std::invalid_argument("single_shot_error_bound: p must lie in (1/2, 1]");
    double base = 2.0 / ((2 * p - 1) * n);
    if (p == 1.0) return base < 1 ? 0.0 : (base == 1 ? 1.5 : kInf);
    return 1.5 * std::pow(base, std::log(p / (1 - p)) / 8.0);
}

double overall_error_bound(int n, int k, double T, double gamma) {
    if (n < 2) throw std::invalid_argument("overall_error_bound: n must be >= 2");
    if (k < 1) throw std::invalid_argument("overall_error_bound: k must be >= 1");
    if (!(T >= 0) || !(gamma >= 0)) throw std::invalid_argument("overall_error_bound: need T >= 0, gamma >= 0");
    const double x = gamma * T;
    if (x == 0) {
        if (n < 4) return 1.5 * k;
        return k * projection_error_bound(0.5 * n, 1.0);
    }
    double expo = std::log(1.0 / std::tanh(0.5 * x)) / 8.0;
    return 1.5 * k * std::pow(2.0 * std::exp(x) / n, expo);
}

}  // namespace stopwatch
