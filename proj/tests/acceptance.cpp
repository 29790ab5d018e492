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

// Acceptance run: one PASS/FAIL line per criterion, with the measured numbers. Exit status is
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "properties.hpp"
#include "stopwatch/clock_model.hpp"
#include "stopwatch/compressor.hpp"
#include "stopwatch/estimation.hpp"
#include "stopwatch/protocols.hpp"
#include "stopwatch/spin_algebra.hpp"

namespace sw = stopwatch;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool within_rel(double x, double target, double rel) { return std::abs(x - target) <= rel * std::abs(target); }

void info(const char* fmt, auto... args) {
    std::printf("       ");
    if constexpr (sizeof...(args) == 0) {
        std::fputs(fmt, stdout);
    } else {
        std::printf(fmt, args...);
    }
    std::printf("\n");
}

// Size-accuracy checks accumulated from every estimation run below; reported with criterion 7.
struct SizeAccuracyLog {
    int runs = 0;
    int violations = 0;
    void add(const char* what, double delta, double D, double P) {
        auto c = sw::check_size_accuracy(delta, D, sw::kTwoPi, P);
        ++runs;
        if (!c.ok) {
            ++violations;
            info("size-accuracy violated in %s: delta %.6g < %.6g (D = %g)", what, delta, c.rhs, D);
        }
    }
};
SizeAccuracyLog g_size_accuracy;

bool criterion1() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> uT(0, sw::kTwoPi);
    double worst_td = 0, worst_inf = 0;
    bool ok = true;
    double inf_sq = 0;
    for (int i = 0; i < 5; ++i) {
        double T = uT(rng);
        sw::BlockState st = sw::block_state(sw::ClockParams::with_p(16, T, 1.0));
        sw::EncodedState mem = sw::encode(st, 0.5, sw::WindowPolicy::qubit_budget(4));
        sw::CompressionReport rep = sw::compression_error(st, sw::decode(mem, 16));
        ok = ok && within_rel(rep.eps_trace, 5.5e-3, 0.02) && within_rel(rep.infidelity, 3.05e-5, 0.02) &&
             mem.total_qubits == 4;
        worst_td = std::max(worst_td, std::abs(rep.eps_trace / 5.5e-3 - 1));
        worst_inf = std::max(worst_inf, std::abs(rep.infidelity / 3.05e-5 - 1));
        if (i == 0) {
            info("T=%.4f: trace distance %.6e, 1-F %.6e, 1-F^2 %.6e, memory %d qubits", T, rep.eps_trace,
                 rep.infidelity, rep.infidelity_sq, mem.total_qubits);
        }
        inf_sq = rep.infidelity_sq;
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 1.0;
    std::printf("[%s] 1  n=16 qubit-budget-4 window: trace distance off by %.2f%%, infidelity off by %.2f%% "
                "(5 random T, %.3f s)\n",
                ok ? "PASS" : "FAIL", 100 * worst_td, 100 * worst_inf, secs);
    info("infidelity is 1-F with F the root fidelity, the same convention criterion 2 uses;");
    info("1-F^2 = %.3e, which does not match 3.05e-5 under any convention that also gives 5.5e-3", inf_sq);
    return ok;
}

bool criterion2() {
    sw::BlockState st = sw::block_state(sw::ClockParams::with_p(4, 0.83, 1.0));
    sw::EncodedState mem = sw::encode(st, 0.5, sw::WindowPolicy::qubit_budget(2));
    sw::CompressionReport rep = sw::compression_error(st, sw::decode(mem, 4));
    bool ok = within_rel(rep.fidelity, 0.879, 0.005) && mem.total_qubits == 2;
    std::printf("[%s] 2  n=4 into 2 memory qubits: fidelity %.6f (target 0.879 within 0.5%%)\n", ok ? "PASS" : "FAIL",
                rep.fidelity);
    info("convention: 3 centred levels + flag level, flag decoded to the mixture of discarded levels,");
    info("F = Tr sqrt(sqrt(rho) sigma sqrt(rho)); the same state gives F^2 = %.6f", rep.fidelity * rep.fidelity);
    return ok;
}

bool criterion3() {
    auto t0 = Clock::now();
    sw::EventSchedule sched = sw::EventSchedule::equal(4, 2.0);
    sw::ProtocolOptions o;
    o.trials = 100000;
    o.readout = sw::Readout::kLeadingOrder;
    o.accounting = sw::Accounting::kContinuity;
    o.exec = sw::Exec::kParallel;
    sw::ProtocolResult coh = sw::run_stopwatch(8, sched, 0.0, sw::WindowPolicy::qubit_budget(3), 1, o);
    sw::ProtocolResult inc = sw::run_incoherent(8, sched, 0.0, 2, o);
    double ratio = coh.inaccuracy.delta / inc.inaccuracy.delta;
    double secs = seconds_since(t0);
    bool ok = std::abs(ratio - 0.787) <= 0.03 && coh.memory_qubits_peak == 3 && secs < 300;
    std::printf("[%s] 3  n=8 k=4 P=0.9 gamma=0, 3 memory qubits: delta_coh/delta_inc = %.4f (target 0.787 +- 0.03, "
                "1e5 trials, %.1f s)\n",
                ok ? "PASS" : "FAIL", ratio, secs);
    info("leading-order readout with continuity accounting, eps_total = %.5f; exact ratio %.4f",
         coh.compression_error_total, coh.exact_delta / inc.exact_delta);
    info("delta_coh %.5f [%.5f, %.5f], delta_inc %.5f [%.5f, %.5f]", coh.inaccuracy.delta, coh.inaccuracy.ci_low,
         coh.inaccuracy.ci_high, inc.inaccuracy.delta, inc.inaccuracy.ci_low, inc.inaccuracy.ci_high);
    g_size_accuracy.add("coherent stopwatch", coh.inaccuracy.delta, coh.effective_dimension, o.P);

    sw::ProtocolOptions c = o;
    c.trials = 0;
    c.readout = sw::Readout::kCovariant;
    c.accounting = sw::Accounting::kDirect;
    sw::ProtocolResult ccoh = sw::run_stopwatch(8, sched, 0.0, sw::WindowPolicy::qubit_budget(3), 1, c);
    sw::ProtocolResult cinc = sw::run_incoherent(8, sched, 0.0, 1, c);
    info("for comparison, covariant readout of the memory itself gives the exact ratio %.4f",
         ccoh.exact_delta / cinc.exact_delta);
    g_size_accuracy.add("covariant memory readout", ccoh.exact_delta, ccoh.effective_dimension, c.P);
    return ok;
}

bool criterion4() {
    auto grid = sw::linspace(0.05, sw::kPi, 64);
    auto pts = sw::advantage_surface(0.2, 50, grid, 0.9, sw::Exec::kParallel);
    bool all_gt1 = true;
    double min_ratio = sw::kInf, best = 0, best_T = 0;
    for (const auto& p : pts) {
        if (p.k > 2) {
            all_gt1 = all_gt1 && p.ratio > 1;
            min_ratio = std::min(min_ratio, p.ratio);
        }
        if (p.k == 50 && p.ratio > best) {
            best = p.ratio;
            best_T = p.T;
        }
    }
    bool ok = all_gt1 && best >= 4 && best <= 6;
    std::printf("[%s] 4  gamma=0.2 advantage surface: min ratio for k>2 is %.4f, max ratio at k=50 is %.4f at T=%.3f\n",
                ok ? "PASS" : "FAIL", min_ratio, best, best_T);
    info("T grid: 64 points on [0.05, pi], k = 1..50");
    return ok;
}

bool criterion5() {
    auto t0 = Clock::now();
    int checks = 0, violations = 0;
    double min_margin = sw::kInf;
    for (int J = 4; J <= 512; J *= 2) {
        for (double p : {0.7, 0.8, 0.9, 0.99}) {
            double eps = sw::projection_error(2 * J, p);
            double bound = sw::projection_error_bound(J, p);
            ++checks;
            if (!(eps <= bound)) {
                ++violations;
                info("violation at J=%d p=%.2f: %.6g > %.6g", J, p, eps, bound);
            }
            min_margin = std::min(min_margin, bound - eps);
        }
    }
    double secs = seconds_since(t0);
    bool ok = violations == 0 && secs < 120;
    std::printf("[%s] 5  projection error <= its bound: %d checks, %d violations, smallest margin %.4g (%.2f s)\n",
                ok ? "PASS" : "FAIL", checks, violations, min_margin, secs);
    return ok;
}

bool criterion6() {
    sw::oracle::FisherOracle fo;
    double worst = 0;
    auto gammas = sw::linspace(0.05, 1.0, 20);
    auto Ts = sw::linspace(0.1, 5.0, 20);
    for (double g : gammas) {
        for (double T : Ts) {
            worst = std::max(worst, std::abs(sw::fisher_noisy_known(g, T) - fo.known_gamma(g, T)));
            worst = std::max(worst, std::abs(sw::fisher_noisy_nuisance(g, T) - fo.nuisance(g, T)));
        }
    }
    for (double p : sw::linspace(0.55, 0.99, 20)) worst = std::max(worst, std::abs(sw::fisher_local(p) - fo.local(p)));
    bool ok = worst <= 1e-6;
    std::printf("[%s] 6  Fisher closed forms vs finite-difference integrals on a 20x20 (gamma, T) grid: max |diff| %.2e\n",
                ok ? "PASS" : "FAIL", worst);
    return ok;
}

bool criterion7() {
    auto t0 = Clock::now();
    const double p = 0.9, P = 0.9;
    double d[2];
    int ns[2] = {100, 400};
    for (int i = 0; i < 2; ++i) {
        int n = ns[i];
        sw::Estimator est = [n, p](double T, sw::Rng& rng) {
            std::vector<double> buf;
            sw::sample_outcomes_into(buf, n, T, p, rng);
            return sw::mle_estimate(buf).T_hat;
        };
        sw::EmpiricalOptions o;
        o.bootstrap_resamples = 200;
        o.estimator_name = "local-mle";
        o.exec = sw::Exec::kParallel;
        auto rep = sw::inaccuracy_empirical(est, n, {0.5, 3.0}, P, 20000, 70 + i, o);
        d[i] = rep.delta;
        info("n=%d: delta(0.9) = %.5f [%.5f, %.5f], leading order %.5f", n, rep.delta, rep.ci_low, rep.ci_high,
             sw::inaccuracy_analytic(n, P, sw::fisher_local(p)));
        g_size_accuracy.add(n == 100 ? "MLE n=100" : "MLE n=400", rep.delta, sw::effective_dimension_mixed(n), P);
    }
    double ratio = d[0] / d[1];
    bool scaling = std::abs(ratio - 2.0) <= 0.1;
    bool sa = g_size_accuracy.violations == 0;
    bool ok = scaling && sa;
    std::printf("[%s] 7  MLE delta(0.9) ratio n=100 / n=400 at p=0.9: %.4f (target 2.0 +- 0.1); size-accuracy bound "
                "held in %d/%d estimation runs (%.1f s)\n",
                ok ? "PASS" : "FAIL", ratio, g_size_accuracy.runs - g_size_accuracy.violations, g_size_accuracy.runs,
                seconds_since(t0));
    return ok;
}

bool criterion8() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> uT(0, sw::kTwoPi);
    double worst = 0;
    int cases = 0;
    for (int n = 1; n <= 6; ++n) {
        for (double p : {0.5, 0.75, 1.0}) {
            for (int rep = 0; rep < 3; ++rep) {
                double T = uT(rng);
                sw::BlockState bs = sw::block_state(sw::ClockParams::with_p(n, T, p));
                auto dense = sw::oracle::dense_schur(sw::oracle::dense_power(sw::qubit_clock_state(T, p), n), n);
                ++cases;
                if (bs.sectors.size() != dense.state.sectors.size()) {
                    worst = sw::kInf;
                    continue;
                }
                for (std::size_t i = 0; i < bs.sectors.size(); ++i) {
                    const auto& a = bs.sectors[i];
                    const auto& b = dense.state.sectors[i];
                    worst = std::max(worst, std::abs(a.weight - b.weight));
                    // A block of a sector with zero weight is a convention, not part of the state.
                    if (b.weight > 1e-14)
                        worst = std::max(worst, (a.block.matrix - b.block.matrix).cwiseAbs().maxCoeff());
                }
            }
        }
    }
    bool ok = worst <= 1e-10;
    std::printf("[%s] 8  block_state vs dense tensor-product Schur oracle, n<=6, p in {0.5, 0.75, 1}: %d cases, "
                "max |diff| %.2e\n",
                ok ? "PASS" : "FAIL", cases, worst);
    return ok;
}

bool criterion9() {
    auto t0 = Clock::now();
    struct Item {
        const char* name;
        std::function<sw::property::Outcome()> run;
    };
    std::vector<Item> items = {
        {"channel trace/PSD", [] { return sw::property::channel_trace_and_psd(91); }},
        {"phase independence", [] { return sw::property::phase_independence(92); }},
        {"dephasing semigroup", [] { return sw::property::dephasing_semigroup(93); }},
        {"q_J normalization", [] { return sw::property::schur_normalization(94); }},
        {"data processing", [] { return sw::property::data_processing(95, 50000); }},
        {"mixing", [] { return sw::property::mixing(96, 50000); }},
        {"continuity", [] { return sw::property::continuity(97, 50000); }},
    };
    bool ok = true;
    int passed = 0;
    for (const auto& it : items) {
        auto r = it.run();
        ok = ok && r.ok;
        passed += r.ok;
        info("%-20s %s  %s", it.name, r.ok ? "ok  " : "FAIL", r.detail.c_str());
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 600;
    std::printf("[%s] 9  property suite: %d/%zu green (%.1f s)\n", ok ? "PASS" : "FAIL", passed, items.size(), secs);
    return ok;
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    bool (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                            criterion6, criterion7, criterion8, criterion9};
    int failed = 0;
    for (auto c : criteria) failed += !c();
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
