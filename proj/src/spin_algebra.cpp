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

#include "stopwatch/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stopwatch/special.hpp"

namespace stopwatch {

namespace {

void check_spin(int two_j) {
    if (two_j < 0) throw std::invalid_argument("spin must satisfy J >= 0, got 2J = " + std::to_string(two_j));
}

// A value carried as sign * exp(log_abs).
struct LogValue {
    double log_abs = -kInf;
    double sign = 1;
};

LogValue log_power(double base, int exponent) {
    if (exponent == 0) return {0.0, 1.0};
    if (base == 0) return {-kInf, 1.0};
    LogValue v;
    v.log_abs = exponent * std::log(std::abs(base));
    v.sign = (base < 0 && (exponent % 2)) ? -1.0 : 1.0;
    return v;
}

// Fills one column (fixed k = J - j) of d^J(theta) for sin(theta) away from zero.
void wigner_column(int two_j, int j, double theta, RMatrix& d) {
    const int N = two_j;
    const double J = 0.5 * N;
    const double k = J - j;
    const double c = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    const double ct = std::cos(theta);
    const double half_st = 0.5 * std::sin(theta);
    const double log_binom = 0.5 * log_binomial(N, N - j);

    // Recursion coefficients for a given 2m.
    auto a_of = [&](double m) { return std::sqrt(std::max(0.0, (J + m) * (J - m + 1))); };
    auto b_of = [&](double m) { return std::sqrt(std::max(0.0, (J - m) * (J + m + 1))); };

    // Meeting row: the centre of the classically allowed band, m* ~ k cos(theta).
    int i_star = static_cast<int>(std::lround(J - k * ct));
    i_star = std::clamp(i_star, 0, N);

    std::vector<double> val(N + 1, 0.0), lsc(N + 1, 0.0);
    constexpr double kBig = 1e150;

    // Downward from m = J (row 0): d_{J,k} = sqrt C(2J, J+k) c^{J+k} (-s)^{J-k}.
    {
        LogValue pc = log_power(c, N - j);
        LogValue ps = log_power(-sn, j);
        double scale = log_binom + pc.log_abs + ps.log_abs;
        double prev = 0.0;
        double cur = pc.sign * ps.sign;
        if (!std::isfinite(scale)) {
            // The edge value vanishes exactly; this can only happen at theta = 0 or pi,
            // which the caller handles, so keep the zero.
            cur = 0.0;
            scale = 0.0;
        }
        val[0] = cur;
        lsc[0] = scale;
        for (int i = 0; i < i_star; ++i) {
            double m = J - i;
            double next = ((k - m * ct) * cur - half_st * b_of(m) * prev) / (half_st * a_of(m));
            prev = cur;
            cur = next;
            if (std::abs(cur) > kBig) {
                double f = std::abs(cur);
                cur /= f;
                prev /= f;
                scale += std::log(f);
            }
            val[i + 1] = cur;
            lsc[i + 1] = scale;
        }
    }
    // Upward from m = -J (row N): d_{-J,k} = sqrt C(2J, J+k) c^{J-k} s^{J+k}.
    if (i_star < N) {
        LogValue pc = log_power(c, j);
        LogValue ps = log_power(sn, N - j);
        double scale = log_binom + pc.log_abs + ps.log_abs;
        double prev = 0.0;
        double cur = pc.sign * ps.sign;
        if (!std::isfinite(scale)) {
            cur = 0.0;
            scale = 0.0;
        }
        val[N] = cur;
        lsc[N] = scale;
        for (int i = N; i > i_star + 1; --i) {
            double m = J - i;
            double next = ((k - m * ct) * cur - half_st * a_of(m) * prev) / (half_st * b_of(m));
            prev = cur;
            cur = next;
            if (std::abs(cur) > kBig) {
                double f = std::abs(cur);
                cur /= f;
                prev /= f;
                scale += std::log(f);
            }
            val[i - 1] = cur;
            lsc[i - 1] = scale;
        }
    }
    for (int i = 0; i <= N; ++i) {
        d(i, j) = (val[i] == 0.0) ? 0.0 : val[i] * std::exp(lsc[i]);
    }
}

}  // namespace

RMatrix wigner_small_d(int two_j, double theta) {
    check_spin(two_j);
    if (!std::isfinite(theta)) throw std::invalid_argument("wigner_small_d: theta must be finite");
    const int N = two_j;

    // Reduce to (-pi, pi]; each full turn contributes (-1)^{2J}.
    double turns = std::round(theta / kTwoPi);
    double t = theta - turns * kTwoPi;
    if (t <= -kPi) {
        t += kTwoPi;
        turns -= 1;
    }
    const double turn_sign = (N % 2 != 0 && std::fmod(std::abs(turns), 2.0) == 1.0) ? -1.0 : 1.0;

    RMatrix d = RMatrix::Zero(N + 1, N + 1);
    if (std::abs(std::sin(t)) < 1e-14) {
        if (std::abs(t) < 1.0) {
            d.setIdentity();
        } else {
            // d(pi)_{m k} = (-1)^{J-k} delta_{m,-k}; d(-pi) is its transpose.
            for (int j = 0; j <= N; ++j) {
                int i = N - j;
                int expo = t > 0 ? j : (N - j);
                d(i, j) = (expo % 2) ? -1.0 : 1.0;
            }
        }
    } else {
        for (int j = 0; j <= N; ++j) wigner_column(N, j, t, d);
    }
    if (turn_sign < 0) d = -d;
    return d;
}

double basis_angle(double s) {
    if (!(s > 0 && s < 1)) throw std::invalid_argument("amplitude parameter s must lie in (0, 1)");
    return 2.0 * std::acos(std::sqrt(s));
}

RMatrix overlap_table(int two_j, double s) {
    check_spin(two_j);
    RMatrix d = wigner_small_d(two_j, basis_angle(s));
    RMatrix o = d.transpose();
    for (int i = 1; i <= two_j; i += 2) o.row(i) *= -1.0;
    return o;
}

namespace {

// First `rows` rows of overlap_table, computing only the Wigner columns they need.
RMatrix overlap_rows(int two_j, double s, int rows) {
    const double theta = basis_angle(s);  // in (0, pi), so no angle reduction is needed
    if (rows > two_j || std::abs(std::sin(theta)) < 1e-14) return overlap_table(two_j, s).topRows(rows);
    RMatrix d(two_j + 1, rows);
    for (int j = 0; j < rows; ++j) wigner_column(two_j, j, theta, d);
    RMatrix o = d.transpose();
    for (int i = 1; i < rows; i += 2) o.row(i) *= -1.0;
    return o;
}

int row_of(int two_j, int two_m, const char* what) {
    if (std::abs(two_m) > two_j || (two_j - two_m) % 2 != 0) {
        throw std::invalid_argument(std::string("symmetric_overlap: ") + what + " out of range");
    }
    return (two_j - two_m) / 2;
}

}  // namespace

double symmetric_overlap(int two_j, int two_m, int two_k, double s) {
    check_spin(two_j);
    int i = row_of(two_j, two_m, "m");
    int j = row_of(two_j, two_k, "k");
    return overlap_table(two_j, s)(i, j);
}

double overlap_bound(int two_j, int two_m, int two_k, double s) {
    check_spin(two_j);
    row_of(two_j, two_m, "m");
    row_of(two_j, two_k, "k");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("overlap_bound: s must lie in (0, 1)");
    const double J = 0.5 * two_j, m = 0.5 * two_m, k = 0.5 * two_k;
    double lb = log_binomial(2 * J, J + k) + log_binomial(2 * J, J - m);
    double lp;
    if (s >= 0.5) {
        lp = (2 * J + k - m) * std::log(s) + (m - k) * std::log1p(-s);
    } else {
        lp = (m + k) * std::log(s) + (2 * J - m - k) * std::log1p(-s);
    }
    return std::exp(0.5 * (lb + lp));
}

double log_multiplicity(int n, int two_j) {
    if (n < 1 || two_j < 0 || two_j > n || (n - two_j) % 2 != 0) {
        throw std::invalid_argument("log_multiplicity: J is not a sector of n qubits");
    }
    int lower = (n - two_j) / 2;
    int upper = (n + two_j) / 2;
    return log_binomial(n, lower) + std::log(two_j + 1.0) - std::log(upper + 1.0);
}

unsigned long long multiplicity(int n, int two_j) {
    log_multiplicity(n, two_j);  // range check
    if (n > 62) throw std::invalid_argument("multiplicity: use log_multiplicity for n > 62");
    int lower = (n - two_j) / 2;
    // C(n, lower) - C(n, lower - 1) == C(n, lower) (2J+1) / (n/2 + J + 1).
    auto binom = [](int a, int b) -> unsigned long long {
        if (b < 0 || b > a) return 0;
        unsigned long long r = 1;
        for (int t = 1; t <= b; ++t) r = r * static_cast<unsigned long long>(a - b + t) / t;
        return r;
    };
    return binom(n, lower) - binom(n, lower - 1);
}

std::vector<double> schur_weights(int n, double p) {
    if (n < 1) throw std::invalid_argument("schur_weights: n must be >= 1");
    if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("schur_weights: p must lie in [1/2, 1]");
    const double log_p = std::log(p);
    const double log_q = (p < 1.0) ? std::log1p(-p) : -kInf;
    const double log_r = log_q - log_p;  // ratio (1-p)/p, <= 0

    std::vector<double> q;
    for (int two_j = n; two_j >= 0; two_j -= 2) {
        int pairs = (n - two_j) / 2;
        double lw = log_multiplicity(n, two_j);
        if (pairs > 0) lw += pairs * (log_p + log_q);
        lw += two_j * log_p;
        // log sum_{j=0}^{2J} r^j
        int terms = two_j + 1;
        double lsum;
        if (log_r == -kInf) {
            lsum = 0.0;
        } else if (log_r == 0.0) {
            lsum = std::log(static_cast<double>(terms));
        } else {
            lsum = std::log(std::expm1(terms * log_r) / std::expm1(log_r));
        }
        lw += lsum;
        q.push_back(std::exp(lw));
    }
    return q;
}

std::vector<double> schur_weights_closed_form(int n, double p) {
    if (n < 1) throw std::invalid_argument("schur_weights_closed_form: n must be >= 1");
    if (!(p > 0.5 && p <= 1.0)) throw std::invalid_argument("schur_weights_closed_form: p must lie in (1/2, 1]");
    const double J0 = (p - 0.5) * (n + 1);
    auto B = [&](int k) {
        if (k < 0 || k > n) return 0.0;
        double lb = log_binomial(n, k);
        double lp = (k > 0) ? k * std::log(p) : 0.0;
        double lq = (n - k > 0) ? ((p < 1) ? (n - k) * std::log1p(-p) : -kInf) : 0.0;
        return std::exp(lb + lp + lq);
    };
    std::vector<double> q;
    for (int two_j = n; two_j >= 0; two_j -= 2) {
        int hi = (n + two_j) / 2 + 1;
        int lo = (n - two_j) / 2;
        q.push_back((two_j + 1.0) / (2.0 * J0) * (B(hi) - B(lo)));
    }
    return q;
}

SpinBlock spin_block(int two_j, double T, double p, double s) {
    check_spin(two_j);
    if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("spin_block: p must lie in [1/2, 1]");
    const int dim = two_j + 1;

    // Spectrum in the rotated basis: weight of row i is proportional to ((1-p)/p)^i.
    Eigen::VectorXd w(dim);
    if (p == 1.0) {
        w.setZero();
        w(0) = 1.0;
    } else {
        const double log_r = std::log1p(-p) - std::log(p);
        for (int i = 0; i < dim; ++i) w(i) = std::exp(i * log_r);
        w /= w.sum();
    }

    // Rows past weight 1e-20 cannot move a double, and for p well above 1/2 that cuts the
    // O(dim^3) product down to a few rows.
    int rows = 1;
    while (rows < dim && w(rows) > 1e-20 * w(0)) ++rows;
    RMatrix top = overlap_rows(two_j, s, rows);
    RMatrix real_block = top.transpose() * w.head(rows).asDiagonal() * top;

    std::vector<Complex> phase(dim);
    for (int r = 0; r < dim; ++r) phase[r] = std::polar(1.0, -r * T);
    SpinBlock b;
    b.two_j = two_j;
    b.matrix.resize(dim, dim);
    for (int c = 0; c < dim; ++c) {
        const Complex pc = std::conj(phase[c]);
        for (int r = 0; r < dim; ++r) b.matrix(r, c) = real_block(r, c) * (phase[r] * pc);
    }
    return b;
}

BlockState block_state(const ClockParams& params, Exec exec) {
    params.validate();
    if (params.n > 4096) throw std::invalid_argument("block_state: n above the 4096-qubit guard");
    const double p = params.eigenvalue();
    const int n = params.n;
    std::vector<double> q = schur_weights(n, p);

    BlockState out;
    out.n = n;
    out.sectors.resize(q.size());
    const int count = static_cast<int>(q.size());

    auto fill = [&](int idx) {
        int two_j = n - 2 * idx;
        Sector& sec = out.sectors[idx];
        sec.weight = q[idx];
        sec.log_multiplicity = log_multiplicity(n, two_j);
        sec.block = spin_block(two_j, params.T, p, params.s);
    };
    if (exec == Exec::kParallel) {
        // Large-J sectors come first and dominate the cost, so a dynamic schedule balances well.
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
        for (int idx = 0; idx < count; ++idx) fill(idx);
    } else {
        for (int idx = 0; idx < count; ++idx) fill(idx);
    }
    return out;
}

}  // namespace stopwatch
