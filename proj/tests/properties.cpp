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

#include "properties.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "stopwatch/clock_model.hpp"
#include "stopwatch/compressor.hpp"
#include "stopwatch/estimation.hpp"
#include "stopwatch/spin_algebra.hpp"

namespace stopwatch::property {
namespace {

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

// Errors of covariant-measurement draws from `state`, whose true time is T.
std::vector<double> covariant_errors(const BlockState& state, double T, int trials, std::uint64_t seed) {
    CovariantSampler sampler(state);
    Estimator est = [&sampler](double, Rng& rng) { return sampler.draw(rng); };
    return trial_errors(est, T, trials, seed, Exec::kParallel);
}

struct Empirical {
    double delta, lo, hi;
};

Empirical empirical(const BlockState& state, double T, int trials, std::uint64_t seed, double P = 0.9) {
    auto err = covariant_errors(state, T, trials, seed);
    auto [lo, hi] = bootstrap_delta(err, P, 200, seed ^ 0x5bd1e995u);
    return {delta_from_errors(err, P), lo, hi};
}

}  // namespace

Outcome channel_trace_and_psd(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> T(0, kTwoPi), p(0.5, 1.0), s(0.2, 0.8);
    Outcome o{true, 0, ""};
    double worst_trace = 0, worst_eig = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 60);
        double sv = trial % 2 ? 0.5 : s(rng);
        BlockState st = block_state(ClockParams::with_p(n, T(rng), p(rng), sv));
        for (const WindowPolicy& pol : {WindowPolicy::asymptotic(), WindowPolicy::qubit_budget(1 + trial % 4)}) {
            BlockState out = compress(st, sv, pol);
            double tr = 0;
            for (const auto& sec : out.sectors) {
                tr += sec.weight * sec.block.matrix.trace().real();
                Eigen::SelfAdjointEigenSolver<CMatrix> es(sec.block.matrix, Eigen::EigenvaluesOnly);
                worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
            }
            worst_trace = std::max(worst_trace, std::abs(tr - 1));
        }
    }
    o.ok = worst_trace < 1e-12 && worst_eig > -1e-12;
    o.worst = std::max(worst_trace, -worst_eig);
    o.detail = fmt("max |tr - 1| = %.2e, min eigenvalue = %.2e", worst_trace, worst_eig);
    return o;
}

Outcome phase_independence(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> T(0, kTwoPi);
    double spread = 0;
    for (int n : {8, 16, 33, 100}) {
        for (double p : {0.8, 1.0}) {
            double lo = 1, hi = 0;
            for (int i = 0; i < 6; ++i) {
                BlockState st = block_state(ClockParams::with_p(n, T(rng), p));
                double e = compression_error(st, compress(st, 0.5, WindowPolicy::asymptotic())).eps_trace;
                lo = std::min(lo, e);
                hi = std::max(hi, e);
            }
            spread = std::max(spread, hi - lo);
        }
    }
    return {spread < 1e-12, spread, fmt("max spread of eps over T = %.2e", spread)};
}

Outcome dephasing_semigroup(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    double worst_qubit = 0, worst_block = 0;
    for (int i = 0; i < 50; ++i) {
        double t1 = 3 * u(rng), t2 = 3 * u(rng), g = u(rng);
        CMatrix rho = qubit_clock_state(kTwoPi * u(rng), 0.5 + 0.5 * u(rng), 0.1 + 0.8 * u(rng));
        CMatrix a = evolve_dephasing(evolve_dephasing(rho, t1, g), t2, g);
        CMatrix b = evolve_dephasing(rho, t1 + t2, g);
        worst_qubit = std::max(worst_qubit, (a - b).cwiseAbs().maxCoeff());
    }
    for (int n : {3, 10, 41}) {
        double t = 0.3 + 2 * u(rng), g = u(rng);
        BlockState a = ensemble_state(ClockParams::with_gamma(n, t, g));
        BlockState b = block_state(ClockParams::with_p(n, t, dephased_eigenvalue(g, t)));
        for (std::size_t j = 0; j < a.sectors.size(); ++j)
            worst_block = std::max(worst_block, (a.sectors[j].block.matrix - b.sectors[j].block.matrix).cwiseAbs().maxCoeff());
    }
    double worst = std::max(worst_qubit, worst_block);
    return {worst < 1e-13, worst, fmt("qubit composition %.2e, n-qubit block %.2e", worst_qubit, worst_block)};
}

Outcome schur_normalization(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> p(0.5, 1.0);
    double worst = 0;
    for (int n : {1, 2, 3, 17, 64, 255, 512, 1000, 1537, 1999, 2000}) {
        for (double pv : {0.5, 1.0, p(rng), p(rng)}) {
            double sum = 0;
            for (double q : schur_weights(n, pv)) sum += q;
            worst = std::max(worst, std::abs(sum - 1));
        }
    }
    return {worst < 1e-10, worst, fmt("max |sum q_J - 1| = %.2e", worst)};
}

Outcome data_processing(std::uint64_t seed, int trials) {
    Outcome o{true, kInf, ""};
    for (int n : {8, 16}) {
        for (double p : {0.9, 1.0}) {
            for (const WindowPolicy& pol : {WindowPolicy::asymptotic(), WindowPolicy::qubit_budget(3)}) {
                const double T = 1.7;
                BlockState st = block_state(ClockParams::with_p(n, T, p));
                Empirical before = empirical(st, T, trials, seed);
                Empirical after = empirical(compress(st, 0.5, pol), T, trials, seed + 1);
                // after >= before - CI width
                double margin = after.delta - (before.delta - (before.hi - before.lo));
                if (margin < o.worst) {
                    o.worst = margin;
                    o.detail = "n=" + std::to_string(n) + " p=" + fmt("%.2f", p) + " " + pol.name() +
                               fmt(": before %.4f, after %.4f", before.delta, after.delta);
                }
                o.ok = o.ok && margin >= 0;
            }
        }
    }
    return o;
}

Outcome mixing(std::uint64_t seed, int trials) {
    Outcome o{true, kInf, ""};
    for (int n : {4, 8, 16}) {
        const double T = 2.2;
        BlockState a = block_state(ClockParams::with_p(n, T, 0.95));
        BlockState b = block_state(ClockParams::with_p(n, T, 0.75));
        BlockState mix = mixture({{0.5, a}, {0.5, b}});
        Empirical da = empirical(a, T, trials, seed);
        Empirical db = empirical(b, T, trials, seed + 1);
        Empirical dm = empirical(mix, T, trials, seed + 2);
        double margin = dm.delta - (std::min(da.delta, db.delta) - (dm.hi - dm.lo));
        if (margin < o.worst) {
            o.worst = margin;
            o.detail = "n=" + std::to_string(n) + fmt(": mixture %.4f, components %.4f / %.4f", dm.delta, da.delta, db.delta);
        }
        o.ok = o.ok && margin >= 0;
    }
    return o;
}

Outcome continuity(std::uint64_t seed, int trials) {
    Outcome o{true, kInf, ""};
    for (int n : {8, 16}) {
        const double T = 0.9;
        BlockState a = block_state(ClockParams::with_p(n, T, 1.0));
        BlockState b = compress(a, 0.5, WindowPolicy::qubit_budget(3));
        double eps = compression_error(a, b).eps_trace;
        double delta = covariant_inaccuracy(a, T, 0.9);
        auto coverage = [&](const BlockState& st, std::uint64_t sd) {
            auto err = covariant_errors(st, T, trials, sd);
            return static_cast<double>(std::count_if(err.begin(), err.end(), [&](double e) { return e <= delta / 2; })) /
                   trials;
        };
        double ca = coverage(a, seed), cb = coverage(b, seed + 1);
        double sigma = std::sqrt((ca * (1 - ca) + cb * (1 - cb)) / trials);
        double margin = eps + 3 * sigma - std::abs(ca - cb);
        if (margin < o.worst) {
            o.worst = margin;
            o.detail = "n=" + std::to_string(n) + fmt(": coverage %.4f vs %.4f, eps %.4f", ca, cb, eps);
        }
        o.ok = o.ok && margin >= 0;
    }
    return o;
}

}  // namespace stopwatch::property
