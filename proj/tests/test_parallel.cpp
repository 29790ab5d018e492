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

#include <gtest/gtest.h>

#include <cstring>

#include "stopwatch/clock_model.hpp"
#include "stopwatch/compressor.hpp"
#include "stopwatch/estimation.hpp"
#include "stopwatch/protocols.hpp"
#include "stopwatch/spin_algebra.hpp"

// The parallel paths must reproduce the serial reference exactly, not just to rounding.

namespace stopwatch {
namespace {

bool same_bits(const CMatrix& a, const CMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(Complex) * a.size()) == 0;
}

bool same_bits(const BlockState& a, const BlockState& b) {
    if (a.n != b.n || a.sectors.size() != b.sectors.size()) return false;
    for (std::size_t i = 0; i < a.sectors.size(); ++i) {
        const Sector& x = a.sectors[i];
        const Sector& y = b.sectors[i];
        if (x.weight != y.weight || x.log_multiplicity != y.log_multiplicity || x.two_j() != y.two_j()) return false;
        if (!same_bits(x.block.matrix, y.block.matrix)) return false;
    }
    return true;
}

TEST(Parallel, BlockState) {
    for (int n : {1, 7, 64, 301}) {
        ClockParams c = ClockParams::with_p(n, 1.3, 0.85);
        EXPECT_TRUE(same_bits(block_state(c, Exec::kSerial), block_state(c, Exec::kParallel))) << n;
        ClockParams g = ClockParams::with_gamma(n, 1.3, 0.3);
        EXPECT_TRUE(same_bits(ensemble_state(g, Exec::kSerial), ensemble_state(g, Exec::kParallel))) << n;
    }
}

TEST(Parallel, Encode) {
    BlockState st = block_state(ClockParams::with_p(128, 0.9, 0.95));
    for (const WindowPolicy& pol : {WindowPolicy::asymptotic(), WindowPolicy::qubit_budget(4)}) {
        EncodedState a = encode(st, 0.5, pol, LeakState::kDiscarded, Exec::kSerial);
        EncodedState b = encode(st, 0.5, pol, LeakState::kDiscarded, Exec::kParallel);
        ASSERT_EQ(a.records.size(), b.records.size());
        EXPECT_EQ(a.total_qubits, b.total_qubits);
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            EXPECT_EQ(a.records[i].leakage, b.records[i].leakage);
            EXPECT_TRUE(same_bits(a.records[i].kept_block, b.records[i].kept_block));
        }
        EXPECT_TRUE(same_bits(compress(st, 0.5, pol, LeakState::kDiscarded, Exec::kSerial),
                              compress(st, 0.5, pol, LeakState::kDiscarded, Exec::kParallel)));
    }
}

TEST(Parallel, TrialsAndEmpirical) {
    Estimator est = [](double T, Rng& rng) {
        std::vector<double> x;
        sample_outcomes_into(x, 40, T, 0.9, rng);
        return mle_estimate(x).T_hat;
    };
    auto a = trial_estimates(est, 1.1, 300, 42, Exec::kSerial);
    auto b = trial_estimates(est, 1.1, 300, 42, Exec::kParallel);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()), 0);
    EmpiricalOptions so, po;
    so.bootstrap_resamples = po.bootstrap_resamples = 50;
    po.exec = Exec::kParallel;
    InaccuracyReport rs = inaccuracy_empirical(est, 40, {0.5, 2.0}, 0.9, 200, 3, so);
    InaccuracyReport rp = inaccuracy_empirical(est, 40, {0.5, 2.0}, 0.9, 200, 3, po);
    EXPECT_EQ(rs.delta, rp.delta);
    EXPECT_EQ(rs.ci_low, rp.ci_low);
    EXPECT_EQ(rs.ci_high, rp.ci_high);
}

TEST(Parallel, Surface) {
    auto grid = linspace(0.05, 3.0, 17);
    auto a = advantage_surface(0.2, 20, grid, 0.9, Exec::kSerial);
    auto b = advantage_surface(0.2, 20, grid, 0.9, Exec::kParallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].k, b[i].k);
        EXPECT_EQ(a[i].T, b[i].T);
        EXPECT_EQ(a[i].ratio, b[i].ratio);
        EXPECT_EQ(a[i].delta_star_coherent, b[i].delta_star_coherent);
        EXPECT_EQ(a[i].delta_star_incoherent, b[i].delta_star_incoherent);
    }
}

TEST(Parallel, Protocols) {
    ProtocolOptions so;
    so.trials = 2000;
    so.bootstrap_resamples = 50;
    so.keep_estimates = true;
    ProtocolOptions po = so;
    po.exec = Exec::kParallel;
    EventSchedule s = EventSchedule::equal(3, 1.8);
    for (Readout r : {Readout::kCovariant, Readout::kLeadingOrder}) {
        so.readout = po.readout = r;
        ProtocolResult a = run_stopwatch(16, s, 0.0, WindowPolicy::qubit_budget(3), 9, so);
        ProtocolResult b = run_stopwatch(16, s, 0.0, WindowPolicy::qubit_budget(3), 9, po);
        EXPECT_EQ(a.estimates, b.estimates);
        EXPECT_EQ(a.inaccuracy.delta, b.inaccuracy.delta);
        EXPECT_EQ(a.exact_delta, b.exact_delta);
        ProtocolResult c = run_incoherent(16, s, 0.1, 9, so);
        ProtocolResult d = run_incoherent(16, s, 0.1, 9, po);
        EXPECT_EQ(c.estimates, d.estimates);
        EXPECT_EQ(c.inaccuracy.ci_high, d.inaccuracy.ci_high);
    }
}

}  // namespace
}  // namespace stopwatch
