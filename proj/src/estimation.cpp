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

#include "stopwatch/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stopwatch {

double povm_pdf(double tau, double T, double p) {
    if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("povm_pdf: p must lie in [1/2, 1]");
    return (1.0 + (2 * p - 1) * std::cos(tau - T)) / kTwoPi;
}

void sample_outcomes_into(std::vector<double>& out, int n, double T, double p, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_outcomes: n must be >= 1");
    if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("sample_outcomes: p must lie in [1/2, 1]");
    const double a = 2 * p - 1;
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        // Propose x uniform on [-pi, pi), accept with (1 + a cos x) / (1 + a).
        while (true) {
            double x = kTwoPi * uniform01(rng) - kPi;
            double u = uniform01(rng);
            if (u * (1 + a) <= 1 + a * std::cos(x)) {
                out[i] = wrap_angle(T + x);
                break;
            }
        }
    }
}

MeasurementSample sample_outcomes(int n, double T, double p, std::uint64_t seed) {
    MeasurementSample s;
    s.true_T = T;
    s.true_p = p;
    s.rng_seed = seed;
    Rng rng(seed);
    sample_outcomes_into(s.outcomes, n, T, p, rng);
    return s;
}

double log_likelihood(const std::vector<double>& outcomes, double T, double p) {
    const double a = 2 * p - 1;
    double acc = 0;
    for (double t : outcomes) acc += std::log1p(a * std::cos(t - T));
    return acc;
}

namespace {

constexpr double kAMax = 1.0 - 1e-12;

// Profile likelihood machinery over precomputed cos/sin of the outcomes.
struct Profile {
    std::vector<double> ct, st;

    explicit Profile(const std::vector<double>& tau) : ct(tau.size()), st(tau.size()) {
        for (std::size_t i = 0; i < tau.size(); ++i) {
            ct[i] = std::cos(tau[i]);
            st[i] = std::sin(tau[i]);
        }
    }

    struct Eval {
        double a = 0;
        double value = 0;
        double d1 = 0;  // d profile / dT
        double d2 = 0;  // d^2 profile / dT^2
    };

    // Best a for fixed T: g(a) = sum c/(1 + a c) is decreasing, so bracket + Newton.
    double best_a(double cT, double sT) const {
        double g0 = 0;
        for (std::size_t i = 0; i < ct.size(); ++i) g0 += ct[i] * cT + st[i] * sT;
        if (g0 <= 0) return 0.0;
        auto g = [&](double a, double* dg) {
            double v = 0, d = 0;
            for (std::size_t i = 0; i < ct.size(); ++i) {
                double c = ct[i] * cT + st[i] * sT;
                double den = 1 + a * c;
                v += c / den;
                d -= c * c / (den * den);
            }
            if (dg) *dg = d;
            return v;
        };
        if (g(kAMax, nullptr) >= 0) return kAMax;
        double lo = 0, hi = kAMax, a = 0.5;
        for (int it = 0; it < 100; ++it) {
            double dg;
            double v = g(a, &dg);
            if (v > 0) lo = a; else hi = a;
            double next = (dg < 0) ? a - v / dg : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - a) < 1e-15 || hi - lo < 1e-15) {
                a = next;
                break;
            }
            a = next;
        }
        return a;
    }

    Eval eval(double T) const {
        const double cT = std::cos(T), sT = std::sin(T);
        Eval e;
        e.a = best_a(cT, sT);
        const double a = e.a;
        double ltt = 0, lta = 0, laa = 0;
        for (std::size_t i = 0; i < ct.size(); ++i) {
            double c = ct[i] * cT + st[i] * sT;  // cos(tau - T)
            double s = st[i] * cT - ct[i] * sT;  // sin(tau - T)
            double den = 1 + a * c;
            e.value += std::log(den);
            e.d1 += a * s / den;
            ltt -= (a * c + a * a) / (den * den);
            lta += s / (den * den);
            laa -= c * c / (den * den);
        }
        bool interior = a > 0 && a < kAMax;
        e.d2 = (interior && laa < 0) ? ltt - lta * lta / laa : ltt;
        return e;
    }
};

// Safeguarded Newton ascent on a 1-D objective with analytic first/second derivatives.
template <typename F>
double newton_ascent(const F& f, double x, double lo, double hi, int* iterations) {
    auto e = f(x);
    for (int it = 0; it < 200; ++it) {
        if (iterations) ++*iterations;
        double step;
        if (e.d2 < 0) {
            step = -e.d1 / e.d2;
        } else {
            step = (e.d1 > 0 ? 1 : -1) * 0.05;
        }
        step = std::clamp(step, -0.5, 0.5);
        bool moved = false;
        for (int half = 0; half < 60; ++half) {
            double xn = std::clamp(x + step, lo, hi);
            auto en = f(xn);
            if (en.value >= e.value) {
                double dx = std::abs(xn - x);
                x = xn;
                e = en;
                moved = dx > 0;
                if (dx < 1e-13) moved = false;
                break;
            }
            step *= 0.5;
        }
        if (!moved || std::abs(e.d1) < 1e-13 * std::max(1.0, std::abs(e.value))) break;
    }
    return x;
}

}  // namespace

MleResult mle_estimate(const std::vector<double>& outcomes, const MleOptions& opts) {
    if (outcomes.size() < 2) throw std::invalid_argument("mle_estimate: need at least two outcomes");
    Profile prof(outcomes);

    double sc = std::accumulate(prof.ct.begin(), prof.ct.end(), 0.0);
    double ss = std::accumulate(prof.st.begin(), prof.st.end(), 0.0);
    const double T0 = wrap_angle(std::atan2(ss, sc));

    MleResult res;
    if (!opts.gamma_known) {
        // Unknown p: ascend the profile likelihood from three starts.
        auto f = [&](double T) { return prof.eval(T); };
        double best_T = T0;
        double best_v = -kInf;
        for (double start : {T0, T0 + kTwoPi / 3, T0 - kTwoPi / 3}) {
            double t = newton_ascent(f, start, start - kTwoPi, start + kTwoPi, &res.iterations);
            double v = prof.eval(t).value;
            if (v > best_v + 1e-12) {
                best_v = v;
                best_T = t;
            }
        }
        auto e = prof.eval(best_T);
        res.T_hat = wrap_angle(best_T);
        res.p_hat = 0.5 * (1 + e.a);
        res.log_likelihood = e.value;
        if (res.p_hat < 0.501) {
            res.degenerate = true;
            res.T_hat = T0;
        }
        return res;
    }

    // Known gamma: a(T) = exp(-gamma (T + tau0)) and only T is free, inside [t_min, t_max].
    const double g = *opts.gamma_known;
    if (!(g >= 0)) throw std::invalid_argument("mle_estimate: gamma must be >= 0");
    const double lo = opts.t_min, hi = opts.t_max;
    if (!(hi > lo)) throw std::invalid_argument("mle_estimate: empty search window");
    struct E {
        double value, d1, d2;
    };
    auto f = [&](double T) {
        double a = std::min(kAMax, std::exp(-g * (T + opts.tau0)));
        double cT = std::cos(T), sT = std::sin(T);
        E e{0, 0, 0};
        for (std::size_t i = 0; i < prof.ct.size(); ++i) {
            double c = prof.ct[i] * cT + prof.st[i] * sT;
            double s = prof.st[i] * cT - prof.ct[i] * sT;
            double den = 1 + a * c;
            double num = -g * a * c + a * s;
            double dnum = g * g * a * c - 2 * g * a * s - a * c;
            e.value += std::log(den);
            e.d1 += num / den;
            e.d2 += dnum / den - num * num / (den * den);
        }
        return e;
    };
    // Coarse scan plus the images of the circular mean, then Newton from the best.
    std::vector<double> cand;
    const int grid = 64;
    for (int i = 0; i <= grid; ++i) cand.push_back(lo + (hi - lo) * i / grid);
    for (int w = -3; w <= 3; ++w) {
        double t = T0 + w * kTwoPi;
        if (t >= lo && t <= hi) cand.push_back(t);
    }
    double best_T = cand.front();
    double best_v = -kInf;
    for (double t : cand) {
        double v = f(t).value;
        if (v > best_v) {
            best_v = v;
            best_T = t;
        }
    }
    double t = newton_ascent(f, best_T, lo, hi, &res.iterations);
    res.T_hat = t;
    res.p_hat = 0.5 * (1 + std::exp(-g * (t + opts.tau0)));
    res.log_likelihood = f(t).value;
    return res;
}

MleResult mle_estimate(const MeasurementSample& sample, const MleOptions& opts) {
    return mle_estimate(sample.outcomes, opts);
}

double fisher_local(double p) {
    if (!(p >= 0.5 && p <= 1.0)) throw std::invalid_argument("fisher_local: p must lie in [1/2, 1]");
    return 1.0 - 2.0 * std::sqrt(p * (1 - p));
}

double fisher_noisy_known(double gamma, double T) {
    if (!(gamma >= 0)) throw std::invalid_argument("fisher_noisy_known: gamma must be >= 0");
    if (gamma == 0) return 1.0;
    if (!(T > 0)) throw std::invalid_argument("fisher_noisy_known: T must be > 0 when gamma > 0");
    double r = std::sqrt(-std::expm1(-2 * gamma * T));
    return 1.0 - gamma * gamma - r + gamma * gamma / r;
}

double fisher_noisy_nuisance(double gamma, double T) {
    if (!(gamma >= 0)) throw std::invalid_argument("fisher_noisy_nuisance: gamma must be >= 0");
    if (!(T >= 0)) throw std::invalid_argument("fisher_noisy_nuisance: T must be >= 0");
    return 1.0 - std::sqrt(-std::expm1(-2 * gamma * T));
}

double inaccuracy_analytic(int n, double P, double F) {
    if (n < 1) throw std::invalid_argument("inaccuracy_analytic: n must be >= 1");
    if (!(P > 0 && P < 1)) throw std::invalid_argument("inaccuracy_analytic: P must lie in (0, 1)");
    if (!(F >= 0)) throw std::invalid_argument("inaccuracy_analytic: F must be >= 0");
    if (F == 0) return kInf;
    return std::sqrt(8.0 / (n * F)) * erf_inv(P);
}

std::vector<Complex> block_fourier(const CMatrix& rho) {
    const int dim = static_cast<int>(rho.rows());
    std::vector<Complex> c(dim, Complex(0, 0));
    for (int D = 0; D < dim; ++D) {
        Complex acc(0, 0);
        for (int r = 0; r + D < dim; ++r) acc += rho(r + D, r);
        c[D] = acc;
    }
    return c;
}

namespace {

double fourier_pdf(const std::vector<Complex>& c, double tau) {
    double acc = c[0].real();
    for (std::size_t D = 1; D < c.size(); ++D) acc += 2.0 * (c[D] * std::polar(1.0, D * tau)).real();
    return acc / kTwoPi;
}

// Integral of the density over [T - h, T + h].
double fourier_window(const std::vector<Complex>& c, double T, double h) {
    double acc = c[0].real() * 2 * h;
    for (std::size_t D = 1; D < c.size(); ++D) {
        acc += 2.0 * (c[D] * std::polar(1.0, D * T)).real() * 2.0 * std::sin(D * h) / D;
    }
    return acc / kTwoPi;
}

}  // namespace

double block_pdf(const BlockState& state, double tau) {
    double acc = 0;
    for (const auto& sec : state.sectors) {
        if (sec.weight == 0) continue;
        acc += sec.weight * fourier_pdf(block_fourier(sec.block.matrix), tau);
    }
    return acc;
}

double covariant_coverage(const BlockState& state, double T, double delta) {
    if (delta <= 0) return 0.0;
    double h = std::min(delta, kTwoPi) / 2;
    double acc = 0;
    for (const auto& sec : state.sectors) {
        if (sec.weight == 0) continue;
        acc += sec.weight * fourier_window(block_fourier(sec.block.matrix), T, h);
    }
    return std::clamp(acc, 0.0, 1.0);
}

std::vector<Complex> covariant_coefficients(const BlockState& state) {
    std::vector<Complex> acc(state.n + 1, Complex(0, 0));
    for (const auto& sec : state.sectors) {
        if (sec.weight == 0) continue;
        auto c = block_fourier(sec.block.matrix);
        for (std::size_t D = 0; D < c.size(); ++D) acc[D] += sec.weight * c[D];
    }
    return acc;
}

double inaccuracy_from_coefficients(const std::vector<Complex>& coeff, double T, double P) {
    if (!(P > 0 && P <= 1)) throw std::invalid_argument("inaccuracy: P must lie in (0, 1]");
    if (coeff.empty()) throw std::invalid_argument("inaccuracy: no coefficients");
    auto cover = [&](double delta) { return fourier_window(coeff, T, delta / 2); };
    if (P >= 1 || cover(kTwoPi) < P - 1e-12) return kTwoPi;
    double lo = 0, hi = kTwoPi;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (cover(mid) >= P) hi = mid; else lo = mid;
    }
    return hi;
}

double covariant_inaccuracy(const BlockState& state, double T, double P) {
    return inaccuracy_from_coefficients(covariant_coefficients(state), T, P);
}

CovariantSampler::CovariantSampler(const BlockState& state) {
    double acc = 0;
    for (const auto& sec : state.sectors) {
        if (sec.weight <= 0) continue;
        parts_.push_back({sec.weight, block_fourier(sec.block.matrix)});
        acc += sec.weight;
        cumulative_.push_back(acc);
    }
    if (parts_.empty()) throw std::invalid_argument("CovariantSampler: state has no weight");
    for (double& c : cumulative_) c /= acc;
}

double CovariantSampler::sector_pdf(const Part& part, double tau) const { return fourier_pdf(part.coeff, tau); }

double CovariantSampler::sector_cdf(const Part& part, double tau) const {
    // integral_0^tau of the density.
    const auto& c = part.coeff;
    double acc = c[0].real() * tau;
    for (std::size_t D = 1; D < c.size(); ++D) {
        Complex e = (std::polar(1.0, D * tau) - 1.0) / Complex(0, static_cast<double>(D));
        acc += 2.0 * (c[D] * e).real();
    }
    return acc / kTwoPi;
}

double CovariantSampler::pdf(double tau) const {
    double acc = 0, prev = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        acc += (cumulative_[i] - prev) * sector_pdf(parts_[i], tau);
        prev = cumulative_[i];
    }
    return acc;
}

double CovariantSampler::draw(Rng& rng) const {
    double u = uniform01(rng);
    std::size_t idx = std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin();
    idx = std::min(idx, parts_.size() - 1);
    const Part& part = parts_[idx];
    const double target = uniform01(rng) * part.coeff[0].real();

    // Safeguarded Newton on the monotone CDF over [0, 2 pi].
    double lo = 0, hi = kTwoPi, x = kTwoPi * target;
    for (int it = 0; it < 100; ++it) {
        double f = sector_cdf(part, x) - target;
        if (f > 0) hi = x; else lo = x;
        double d = sector_pdf(part, x);
        double next = (d > 1e-300) ? x - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-14 || hi - lo < 1e-14) {
            x = next;
            break;
        }
        x = next;
    }
    return wrap_angle(x);
}

double delta_from_errors(std::vector<double> errors, double P) {
    if (errors.empty()) throw std::invalid_argument("delta_from_errors: no errors");
    if (!(P > 0 && P <= 1)) throw std::invalid_argument("delta_from_errors: P must lie in (0, 1]");
    std::size_t N = errors.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(P * N - 1e-9));
    k = std::clamp<std::size_t>(k, 1, N) - 1;
    std::nth_element(errors.begin(), errors.begin() + k, errors.end());
    return 2.0 * errors[k];
}

std::pair<double, double> bootstrap_delta(const std::vector<double>& errors, double P, int resamples,
                                          std::uint64_t seed, double level) {
    if (resamples < 1) return {kNaN, kNaN};
    const std::size_t N = errors.size();
    std::vector<double> stats(resamples);
    std::vector<double> buf(N);
    Rng rng(seed);
    for (int b = 0; b < resamples; ++b) {
        for (std::size_t i = 0; i < N; ++i) {
            std::size_t j = static_cast<std::size_t>(uniform01(rng) * N);
            buf[i] = errors[std::min(j, N - 1)];
        }
        stats[b] = delta_from_errors(buf, P);
    }
    std::sort(stats.begin(), stats.end());
    double alpha = 0.5 * (1 - level);
    auto at = [&](double q) {
        std::size_t k = static_cast<std::size_t>(std::floor(q * (resamples - 1) + 0.5));
        return stats[std::min<std::size_t>(k, resamples - 1)];
    };
    return {at(alpha), at(1 - alpha)};
}

std::vector<double> trial_estimates(const Estimator& estimator, double T, int trials, std::uint64_t seed, Exec exec) {
    if (trials < 1) throw std::invalid_argument("trial_estimates: trials must be >= 1");
    std::vector<double> est(trials);
    auto one = [&](int t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        est[t] = estimator(T, rng);
    };
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static) num_threads(worker_count())
        for (int t = 0; t < trials; ++t) one(t);
    } else {
        for (int t = 0; t < trials; ++t) one(t);
    }
    return est;
}

std::vector<double> trial_errors(const Estimator& estimator, double T, int trials, std::uint64_t seed, Exec exec) {
    std::vector<double> err = trial_estimates(estimator, T, trials, seed, exec);
    for (double& e : err) e = circular_distance(e, T);
    return err;
}

InaccuracyReport inaccuracy_empirical(const Estimator& estimator, int n, const std::vector<double>& T_grid, double P,
                                      int trials, std::uint64_t seed, const EmpiricalOptions& opts) {
    if (trials < 100) throw std::invalid_argument("inaccuracy_empirical: need at least 100 trials");
    if (T_grid.empty()) throw std::invalid_argument("inaccuracy_empirical: empty T grid");
    if (!(P > 0 && P < 1)) throw std::invalid_argument("inaccuracy_empirical: P must lie in (0, 1)");
    InaccuracyReport rep;
    rep.P = P;
    rep.trials = trials;
    rep.n = n;
    rep.estimator = opts.estimator_name;
    rep.delta = -1;
    std::vector<double> worst;
    for (std::size_t g = 0; g < T_grid.size(); ++g) {
        auto err = trial_errors(estimator, T_grid[g], trials, derive_seed(seed, g), opts.exec);
        double d = delta_from_errors(err, P);
        if (d > rep.delta) {
            rep.delta = d;
            rep.worst_T = T_grid[g];
            worst = std::move(err);
        }
    }
    rep.saturated = rep.delta >= kTwoPi - 1e-12;
    auto [lo, hi] = bootstrap_delta(worst, P, opts.bootstrap_resamples, derive_seed(seed, 0xB0075742ull));
    if (opts.bootstrap_resamples < 1) lo = hi = rep.delta;
    rep.ci_low = std::min(lo, rep.delta);
    rep.ci_high = std::max(hi, rep.delta);
    return rep;
}

std::vector<double> fiducial_grid(int points, double gamma) {
    if (points < 1) throw std::invalid_argument("fiducial_grid: need at least one point");
    double lo = 0.1;
    double hi = kTwoPi - 0.1;
    if (gamma > 0) hi = std::min(5.0 / gamma, hi);
    std::vector<double> g;
    if (points == 1) return {0.5 * (lo + hi)};
    for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
    return g;
}

double size_accuracy_bound(double D, double delta_T, double P) {
    if (!(D >= 1)) throw std::invalid_argument("size_accuracy_bound: D must be >= 1");
    if (!(delta_T > 0)) throw std::invalid_argument("size_accuracy_bound: delta_T must be > 0");
    if (!(P > 0 && P <= 1)) throw std::invalid_argument("size_accuracy_bound: P must lie in (0, 1]");
    if (std::isinf(D)) return 0.0;
    return P * delta_T / (D + 1);
}

double memory_bound(double delta, double P) {
    if (!(delta > 0)) throw std::invalid_argument("memory_bound: delta must be > 0");
    if (!(P > 0 && P <= 1)) throw std::invalid_argument("memory_bound: P must lie in (0, 1]");
    return std::log2(1.0 / delta);
}

BoundCheck check_size_accuracy(double measured_delta, double D, double delta_T, double P) {
    BoundCheck c;
    c.lhs = measured_delta;
    c.rhs = size_accuracy_bound(D, delta_T, P);
    c.margin = c.lhs - c.rhs;
    c.ok = c.margin >= 0;
    return c;
}

BoundCheck check_memory(int memory_qubits, double measured_delta, double P, double slack) {
    BoundCheck c;
    c.lhs = memory_qubits + slack;
    c.rhs = memory_bound(measured_delta, P);
    c.margin = c.lhs - c.rhs;
    c.ok = c.margin >= 0;
    return c;
}

double effective_dimension_pure(int n) { return n + 1.0; }
double effective_dimension_mixed(int n) { return std::ldexp(1.0, n); }
double effective_dimension_memory(int qubits) { return std::ldexp(1.0, qubits); }

}  // namespace stopwatch
