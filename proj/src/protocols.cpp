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

#include "stopwatch/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "stopwatch/clock_model.hpp"
#include "stopwatch/spin_algebra.hpp"

namespace stopwatch {

EventSchedule EventSchedule::equal(int k, double total) {
    if (k < 1) throw std::invalid_argument("EventSchedule: k must be >= 1");
    EventSchedule s;
    s.durations.assign(k, total / k);
    return s;
}

double EventSchedule::total() const {
    double t = 0;
    for (double d : durations) t += d;
    return t;
}

void EventSchedule::validate() const {
    if (durations.empty()) throw std::invalid_argument("EventSchedule: need at least one event");
    for (double d : durations)
        if (!(d > 0)) throw std::invalid_argument("EventSchedule: durations must be > 0");
    for (double g : lag_gamma)
        if (!(g >= 0)) throw std::invalid_argument("EventSchedule: lag dephasing rates must be >= 0");
    for (double d : lag_durations)
        if (!(d >= 0)) throw std::invalid_argument("EventSchedule: lag durations must be >= 0");
}

std::string readout_name(Readout r) {
    switch (r) {
        case Readout::kLocalMle: return "local-mle";
        case Readout::kCovariant: return "covariant";
        case Readout::kLeadingOrder: return "leading-order";
    }
    return "?";
}

std::string accounting_name(Accounting a) { return a == Accounting::kDirect ? "direct" : "continuity"; }

Readout parse_readout(const std::string& s) {
    if (s == "local-mle") return Readout::kLocalMle;
    if (s == "covariant") return Readout::kCovariant;
    if (s == "leading-order") return Readout::kLeadingOrder;
    throw std::invalid_argument("unknown readout '" + s + "' (local-mle, covariant, leading-order)");
}

Accounting parse_accounting(const std::string& s) {
    if (s == "direct") return Accounting::kDirect;
    if (s == "continuity") return Accounting::kContinuity;
    throw std::invalid_argument("unknown accounting '" + s + "' (direct, continuity)");
}

void apply_phase(BlockState& state, double t) {
    for (auto& sec : state.sectors) {
        CMatrix& m = sec.block.matrix;
        const int dim = static_cast<int>(m.rows());
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (r != c) m(r, c) *= std::polar(1.0, -(r - c) * t);
    }
}

void apply_lag(BlockState& state, double g, double dt, bool quadratic) {
    if (g == 0 || dt == 0) return;
    for (auto& sec : state.sectors) {
        CMatrix& m = sec.block.matrix;
        const int dim = static_cast<int>(m.rows());
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                if (r == c) continue;
                double d = r - c;
                m(r, c) *= quadratic ? std::exp(-g * dt * d * d / 2) : std::exp(-g * dt);
            }
    }
}

namespace {

constexpr std::uint64_t kIncoherentStream = 0x1DC0FFEEull;

double clock_fisher(double gamma, double T, double tau0) {
    if (gamma == 0) return 1.0;
    if (tau0 != 0) throw std::invalid_argument("leading-order readout is only defined for tau0 = 0 when gamma > 0");
    return fisher_noisy_known(gamma, T);
}

// delta(P) of a centred Gaussian with the given variance: 2 sqrt(2 var) erf^{-1}(P).
double gaussian_delta(double variance, double P) {
    if (P >= 1) return kTwoPi;
    return 2.0 * std::sqrt(2.0 * variance) * erf_inv(P);
}

InaccuracyReport report_from_errors(const std::vector<double>& err, double P_eff, double P, int n,
                                    const std::string& name, double T, int resamples, std::uint64_t seed) {
    InaccuracyReport rep;
    rep.P = P;
    rep.n = n;
    rep.trials = static_cast<int>(err.size());
    rep.estimator = name;
    rep.worst_T = T;
    if (P_eff >= 1) {
        rep.delta = rep.ci_low = rep.ci_high = kTwoPi;
        rep.saturated = true;
        return rep;
    }
    rep.delta = delta_from_errors(err, P_eff);
    auto [lo, hi] = bootstrap_delta(err, P_eff, resamples, derive_seed(seed, 0xB0075742ull));
    if (resamples < 1) lo = hi = rep.delta;
    rep.ci_low = std::min(lo, rep.delta);
    rep.ci_high = std::max(hi, rep.delta);
    rep.saturated = rep.delta >= kTwoPi - 1e-12;
    return rep;
}

InaccuracyReport exact_report(double delta, double P, int n, const std::string& name, double T) {
    InaccuracyReport rep;
    rep.P = P;
    rep.n = n;
    rep.delta = rep.ci_low = rep.ci_high = delta;
    rep.estimator = name;
    rep.worst_T = T;
    rep.saturated = delta >= kTwoPi - 1e-12;
    return rep;
}

}  // namespace

ProtocolResult run_stopwatch(int n, const EventSchedule& schedule, double gamma, const WindowPolicy& policy,
                             std::uint64_t seed, const ProtocolOptions& opts) {
    if (n < 2) throw std::invalid_argument("run_stopwatch: n must be >= 2");
    schedule.validate();
    if (!(gamma >= 0)) throw std::invalid_argument("run_stopwatch: gamma must be >= 0");
    if (!(opts.P > 0 && opts.P < 1)) throw std::invalid_argument("run_stopwatch: P must lie in (0, 1)");
    if (opts.readout == Readout::kLocalMle && opts.compress && opts.accounting == Accounting::kDirect) {
        throw std::invalid_argument("run_stopwatch: local readout needs a product state; use continuity accounting");
    }
    const int k = schedule.k();
    const double T_total = schedule.total();
    auto lag_rate = [&](int j) { return j < static_cast<int>(schedule.lag_gamma.size()) ? schedule.lag_gamma[j] : 0.0; };
    auto lag_time = [&](int j) {
        return j < static_cast<int>(schedule.lag_durations.size()) ? schedule.lag_durations[j] : 1.0;
    };

    ProtocolResult res;
    const bool needs_state = opts.readout == Readout::kCovariant || opts.compress;
    auto ideal_at = [&](double t) {
        return block_state(ClockParams::with_gamma(n, t, gamma, opts.tau0, opts.s), opts.exec);
    };

    BlockState state;
    if (needs_state) {
        if (gamma == 0) {
            // Exact path: every step is a block-diagonal channel.
            state = ideal_at(schedule.durations[0]);
            for (int j = 0; j < k; ++j) {
                if (j > 0) apply_phase(state, schedule.durations[j]);
                if (opts.compress) {
                    EncodedState mem = encode(state, opts.s, policy, opts.leak_state, opts.exec);
                    BlockState next = decode(mem, n);
                    double eps = compression_error(state, next).eps_trace;
                    res.stage_errors.push_back(eps);
                    res.memory_qubits_peak = std::max(res.memory_qubits_peak, mem.total_qubits);
                    state = std::move(next);
                }
                if (j + 1 < k) apply_lag(state, lag_rate(j), lag_time(j), schedule.quadratic_lag);
            }
        } else {
            double t = 0;
            for (int j = 0; j < k; ++j) {
                t += schedule.durations[j];
                if (!opts.compress) continue;
                BlockState ideal = ideal_at(t);
                EncodedState mem = encode(ideal, opts.s, policy, opts.leak_state, opts.exec);
                BlockState comp = decode(mem, n);
                res.stage_errors.push_back(compression_error(ideal, comp).eps_trace);
                res.memory_qubits_peak = std::max(res.memory_qubits_peak, mem.total_qubits);
                if (j + 1 == k) state = std::move(comp);
            }
            if (!opts.compress) state = ideal_at(T_total);
            // Uniform and quadratic lag damping both commute with the projection and with the phase.
            for (int j = 0; j + 1 < k; ++j) apply_lag(state, lag_rate(j), lag_time(j), schedule.quadratic_lag);
        }
    }
    for (double e : res.stage_errors) res.compression_error_total += e;
    if (!opts.compress) res.memory_qubits_peak = n;

    const double p_final = dephased_eigenvalue(gamma, T_total + opts.tau0);
    if (opts.compress) {
        res.effective_dimension = effective_dimension_memory(res.memory_qubits_peak);
    } else {
        res.effective_dimension = (p_final == 1.0) ? effective_dimension_pure(n) : effective_dimension_mixed(n);
    }

    const bool continuity = opts.accounting == Accounting::kContinuity && opts.compress;
    const double P_eff = continuity ? std::min(1.0, opts.P + res.compression_error_total) : opts.P;
    const std::string name = readout_name(opts.readout) + "/" + accounting_name(opts.accounting);

    // The state that is measured: the memory itself, or the ideal clock under continuity accounting.
    BlockState measured;
    if (opts.readout == Readout::kCovariant) {
        measured = continuity ? ideal_at(T_total) : state;
        if (continuity) {
            for (int j = 0; j + 1 < k; ++j) apply_lag(measured, lag_rate(j), lag_time(j), schedule.quadratic_lag);
        }
        res.exact_delta = covariant_inaccuracy(measured, T_total, P_eff);
    } else {
        // Leading-order value; for the local readout this is the Gaussian limit of the MLE.
        res.exact_delta = gaussian_delta(1.0 / (n * clock_fisher(gamma, T_total, opts.tau0)), P_eff);
    }

    if (opts.trials <= 0) {
        res.inaccuracy = exact_report(res.exact_delta, opts.P, n, name, T_total);
    } else {
        Estimator est;
        std::shared_ptr<CovariantSampler> sampler;
        if (opts.readout == Readout::kCovariant) {
            sampler = std::make_shared<CovariantSampler>(measured);
            est = [sampler](double, Rng& rng) { return sampler->draw(rng); };
        } else if (opts.readout == Readout::kLeadingOrder) {
            double sd = 1.0 / std::sqrt(n * clock_fisher(gamma, T_total, opts.tau0));
            est = [sd](double T, Rng& rng) { return T + sd * standard_normal(rng); };
        } else {
            const double tau0 = opts.tau0;
            est = [n, gamma, tau0](double T, Rng& rng) {
                std::vector<double> buf;
                sample_outcomes_into(buf, n, T, dephased_eigenvalue(gamma, T + tau0), rng);
                MleOptions mo;
                mo.gamma_known = gamma;
                mo.tau0 = tau0;
                return mle_estimate(buf, mo).T_hat;
            };
        }
        auto err = trial_estimates(est, T_total, opts.trials, seed, opts.exec);
        if (opts.keep_estimates) res.estimates = err;
        for (double& e : err) e = circular_distance(e, T_total);
        res.inaccuracy = report_from_errors(err, P_eff, opts.P, n, name, T_total, opts.bootstrap_resamples, seed);
    }
    if (opts.readout == Readout::kCovariant || opts.compress) res.final_state = std::move(state);
    return res;
}

ProtocolResult run_incoherent(int n, const EventSchedule& schedule, double gamma, std::uint64_t seed,
                              const ProtocolOptions& opts) {
    if (n < 1) throw std::invalid_argument("run_incoherent: n must be >= 1");
    schedule.validate();
    if (!(gamma >= 0)) throw std::invalid_argument("run_incoherent: gamma must be >= 0");
    if (!(opts.P > 0 && opts.P < 1)) throw std::invalid_argument("run_incoherent: P must lie in (0, 1)");
    const int k = schedule.k();
    const double T_total = schedule.total();
    const std::string name = "incoherent/" + readout_name(opts.readout);

    ProtocolResult res;
    res.memory_qubits_peak = n;
    const double p_first = dephased_eigenvalue(gamma, schedule.durations[0] + opts.tau0);
    res.effective_dimension = (p_first == 1.0) ? effective_dimension_pure(n) : effective_dimension_mixed(n);

    // Variance of the summed Gaussian estimates, used by the leading-order readout.
    double variance = 0;
    for (double Tj : schedule.durations) variance += 1.0 / (n * clock_fisher(gamma, Tj, opts.tau0));

    std::vector<std::shared_ptr<CovariantSampler>> samplers;
    if (opts.readout == Readout::kCovariant) {
        // Exact: Fourier coefficients of independent outcomes multiply.
        std::vector<Complex> prod;
        for (int j = 0; j < k; ++j) {
            BlockState st = block_state(ClockParams::with_gamma(n, schedule.durations[j], gamma, opts.tau0, opts.s), opts.exec);
            auto c = covariant_coefficients(st);
            if (prod.empty()) {
                prod = c;
            } else {
                for (std::size_t D = 0; D < prod.size(); ++D) prod[D] *= c[D];
            }
            if (opts.trials > 0) samplers.push_back(std::make_shared<CovariantSampler>(st));
        }
        res.exact_delta = inaccuracy_from_coefficients(prod, T_total, opts.P);
    } else {
        res.exact_delta = gaussian_delta(variance, opts.P);
    }

    if (opts.trials <= 0) {
        res.inaccuracy = exact_report(res.exact_delta, opts.P, n, name, T_total);
        return res;
    }

    std::vector<double> durations = schedule.durations;
    Estimator est;
    if (opts.readout == Readout::kCovariant) {
        est = [samplers](double, Rng& rng) {
            double sum = 0;
            for (const auto& s : samplers) sum += s->draw(rng);
            return sum;
        };
    } else if (opts.readout == Readout::kLeadingOrder) {
        std::vector<double> sd;
        for (double Tj : durations) sd.push_back(1.0 / std::sqrt(n * clock_fisher(gamma, Tj, opts.tau0)));
        est = [sd, durations](double, Rng& rng) {
            double sum = 0;
            for (std::size_t j = 0; j < sd.size(); ++j) sum += durations[j] + sd[j] * standard_normal(rng);
            return sum;
        };
    } else {
        const double tau0 = opts.tau0;
        est = [n, gamma, tau0, durations](double, Rng& rng) {
            std::vector<double> buf;
            double sum = 0;
            MleOptions mo;
            mo.gamma_known = gamma;
            mo.tau0 = tau0;
            for (double Tj : durations) {
                sample_outcomes_into(buf, n, Tj, dephased_eigenvalue(gamma, Tj + tau0), rng);
                sum += mle_estimate(buf, mo).T_hat;
            }
            return sum;
        };
    }
    std::uint64_t stream = derive_seed(seed, kIncoherentStream);
    auto err = trial_estimates(est, T_total, opts.trials, stream, opts.exec);
    if (opts.keep_estimates) res.estimates = err;
    for (double& e : err) e = circular_distance(e, T_total);
    res.inaccuracy = report_from_errors(err, opts.P, opts.P, n, name, T_total, opts.bootstrap_resamples, stream);
    return res;
}

AdvantageResult advantage_ratio(int n, int k, double T, double gamma, double P, RatioMode mode, std::uint64_t seed,
                                ProtocolOptions opts) {
    if (k < 1) throw std::invalid_argument("advantage_ratio: k must be >= 1");
    if (!(T > 0)) throw std::invalid_argument("advantage_ratio: T must be > 0");
    AdvantageResult out;
    if (mode == RatioMode::kAnalytic) {
        double f_coh = fisher_noisy_known(gamma, T);
        double f_inc = fisher_noisy_known(gamma, T / k);
        out.delta_coherent = inaccuracy_analytic(n, P, f_coh);
        out.delta_incoherent = std::sqrt(static_cast<double>(k)) * inaccuracy_analytic(n, P, f_inc);
        out.ratio = (gamma == 0) ? std::sqrt(static_cast<double>(k)) : std::sqrt(k * f_coh / f_inc);
    } else {
        opts.P = P;
        EventSchedule sched = EventSchedule::equal(k, T);
        ProtocolResult coh = run_stopwatch(n, sched, gamma, WindowPolicy::asymptotic(), seed, opts);
        ProtocolResult inc = run_incoherent(n, sched, gamma, seed, opts);
        out.delta_coherent = coh.inaccuracy.delta;
        out.delta_incoherent = inc.inaccuracy.delta;
        out.ratio = out.delta_incoherent / out.delta_coherent;
    }
    out.rescaled_coherent = std::sqrt(static_cast<double>(n)) * out.delta_coherent;
    out.rescaled_incoherent = std::sqrt(static_cast<double>(n)) * out.delta_incoherent;
    return out;
}

bool crossover_condition(int k, double T, double gamma) {
    if (k < 1) throw std::invalid_argument("crossover_condition: k must be >= 1");
    if (!(gamma * T > 0)) throw std::invalid_argument("crossover_condition: needs gamma T > 0");
    if (k == 1) return true;
    return k * fisher_noisy_known(gamma, T) >= fisher_noisy_known(gamma, T / k);
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("linspace: need at least one point");
    if (points == 1) return {lo};
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) v[i] = lo + (hi - lo) * i / (points - 1);
    return v;
}

std::vector<SurfacePoint> advantage_surface(double gamma, int k_max, const std::vector<double>& T_grid, double P,
                                            Exec exec) {
    if (!(gamma > 0)) throw std::invalid_argument("advantage_surface: gamma must be > 0");
    if (k_max < 1) throw std::invalid_argument("advantage_surface: k_max must be >= 1");
    const int nt = static_cast<int>(T_grid.size());
    std::vector<SurfacePoint> pts(static_cast<std::size_t>(k_max) * nt);
    const double c = std::sqrt(8.0) * erf_inv(P);
    auto one = [&](int idx) {
        int k = idx / nt + 1;
        double T = T_grid[idx % nt];
        SurfacePoint& sp = pts[idx];
        sp.k = k;
        sp.T = T;
        double f_coh = fisher_noisy_known(gamma, T);
        double f_inc = fisher_noisy_known(gamma, T / k);
        sp.ratio = std::sqrt(k * f_coh / f_inc);
        sp.delta_star_coherent = c / std::sqrt(f_coh);
        sp.delta_star_incoherent = c * std::sqrt(k / f_inc);
    };
    const int total = static_cast<int>(pts.size());
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static) num_threads(worker_count())
        for (int i = 0; i < total; ++i) one(i);
    } else {
        for (int i = 0; i < total; ++i) one(i);
    }
    return pts;
}

NetworkResult network_sequential(const std::vector<double>& omegas, double T0, int n, const WindowPolicy& policy,
                                 std::uint64_t seed, const ProtocolOptions& opts) {
    if (omegas.empty()) throw std::invalid_argument("network_sequential: need at least one node");
    if (!(T0 > 0)) throw std::invalid_argument("network_sequential: T0 must be > 0");
    NetworkResult out;
    double phi = 0;
    for (double w : omegas) phi += w * T0;
    out.phi_true = phi;
    const double wrapped = wrap_angle(phi);
    out.ambiguous = !(phi >= 0.1 && phi <= kTwoPi - 0.1);

    // Node j's interaction is a phase omega_j T0 on the memory; the first node prepares the clock.
    const int k = static_cast<int>(omegas.size());
    BlockState state = block_state(ClockParams::with_p(n, omegas[0] * T0, 1.0, opts.s), opts.exec);
    for (int j = 0; j < k; ++j) {
        if (j > 0) apply_phase(state, omegas[j] * T0);
        if (opts.compress) {
            EncodedState mem = encode(state, opts.s, policy, opts.leak_state, opts.exec);
            BlockState next = decode(mem, n);
            out.compression_error_total += compression_error(state, next).eps_trace;
            out.memory_qubits_per_hop = std::max(out.memory_qubits_per_hop, mem.modal_memory_qubits);
            state = std::move(next);
        }
    }
    if (!opts.compress) out.memory_qubits_per_hop = n;
    out.qubit_cost = k * out.memory_qubits_per_hop;
    out.baseline_cost = k * n;
    out.delta_exact = covariant_inaccuracy(state, wrapped, opts.P);

    CovariantSampler sampler(state);
    Rng rng(seed);
    double draw = sampler.draw(rng);
    // Report the branch of the estimate closest to the true total phase.
    out.phi_estimate = phi + (wrap_angle(draw - wrapped + kPi) - kPi);
    out.omega_sum_estimate = out.phi_estimate / T0;

    if (opts.trials > 0) {
        Estimator est = [&sampler](double, Rng& r) { return sampler.draw(r); };
        auto err = trial_errors(est, wrapped, opts.trials, derive_seed(seed, 1), opts.exec);
        out.inaccuracy = report_from_errors(err, opts.P, opts.P, n, "network/covariant", wrapped,
                                            opts.bootstrap_resamples, seed);
    } else {
        out.inaccuracy = exact_report(out.delta_exact, opts.P, n, "network/covariant", wrapped);
    }
    return out;
}

double circuit_error_budget(int k, double eps1, int n) {
    if (k < 1 || n < 1 || !(eps1 >= 0)) throw std::invalid_argument("circuit_error_budget: need k, n >= 1 and eps1 >= 0");
    return k * eps1 * std::pow(static_cast<double>(n), 4) * std::log2(static_cast<double>(n));
}

double delta_with_circuit_error(double delta, double eps_circuit, int n) {
    if (n < 1 || !(eps_circuit >= 0)) throw std::invalid_argument("delta_with_circuit_error: need n >= 1, eps >= 0");
    return delta + eps_circuit / std::sqrt(static_cast<double>(n));
}

}  // namespace stopwatch
