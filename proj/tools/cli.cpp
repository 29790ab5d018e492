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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "stopwatch/clock_model.hpp"
#include "stopwatch/compressor.hpp"
#include "stopwatch/estimation.hpp"
#include "stopwatch/io.hpp"
#include "stopwatch/protocols.hpp"
#include "stopwatch/spin_algebra.hpp"

namespace stopwatch::cli {

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
    return parts;
}

double to_real(const std::string& s) {
    double v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        if (s == "pi") return kPi;
        throw ConfigError("not a number: '" + s + "'");
    }
    return v;
}

int to_int(const std::string& s) {
    int v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) throw ConfigError("not an integer: '" + s + "'");
    return v;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(to_real(part));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split(text, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(part));
            continue;
        }
        int lo = to_int(trim(part.substr(0, dots)));
        int hi = to_int(trim(part.substr(dots + 2)));
        if (lo < 1 || hi < lo) throw ConfigError("bad range '" + part + "' (need 1 <= a <= b)");
        for (long long v = lo; v <= hi; v *= 2) out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

namespace {

// Raw flag values; empty strings mean "use the command's default".
struct Flags {
    std::string n, k, T, gamma, p, J, omegas, window_policy, readout, accounting;
    double P = 0.9;
    int trials = -1;
    std::uint64_t seed = 1;
    std::string out, format = "csv", trial_log;
    double slack = 2.0;
    int points = 64;
    double t_min = 0.05, t_max = kPi;
};

struct Command {
    Table table;
    RunMetadata meta;
    int exit_code = kOk;
};

class Runner {
public:
    Runner(const Flags& f, const CLI::App& app, std::ostream& err) : f_(f), app_(app), err_(err) {}

    Command run(const std::string& name) {
        cmd_.meta.command = name;
        cmd_.meta.seed = f_.seed;
        if (name == "repro-compression") {
            repro_compression();
        } else if (name == "repro-stopwatch") {
            repro_stopwatch();
        } else if (name == "repro-figure3") {
            repro_figure3();
        } else if (name == "repro-bounds") {
            repro_bounds();
        } else if (name == "sweep") {
            sweep();
        } else if (name == "network") {
            network();
        }
        return std::move(cmd_);
    }

private:
    bool given(const std::string& flag) const { return app_.count(flag) > 0; }

    // Rejects flags the command does not read, so a typo in intent is not silently ignored.
    void allow(std::set<std::string> used) const {
        used.insert({"--seed", "--out", "--format"});
        static const char* all[] = {"--n",      "--k",      "--T",       "--gamma",  "--p",      "--P",
                                    "--trials", "--slack",  "--J",       "--window-policy",   "--readout",
                                    "--accounting",         "--omegas",  "--points", "--t-min", "--t-max",
                                    "--trial-log"};
        for (const char* flag : all) {
            if (given(flag) && !used.count(flag)) {
                throw ConfigError(std::string(flag) + " is not used by " + cmd_.meta.command);
            }
        }
    }

    void config(const std::string& key, const std::string& value) { cmd_.meta.config.emplace_back(key, value); }
    void config(const std::string& key, double value) { config(key, format_number(value)); }
    void summary(const std::string& key, const std::string& value) { cmd_.meta.summary.emplace_back(key, value); }
    void summary(const std::string& key, double value) { summary(key, format_number(value)); }

    std::vector<int> ints(const std::string& raw, const std::string& def) const {
        return parse_int_list(raw.empty() ? def : raw);
    }
    std::vector<double> reals(const std::string& raw, const std::string& def) const {
        return parse_real_list(raw.empty() ? def : raw);
    }
    int one_int(const std::string& raw, int def, const char* flag) const {
        if (raw.empty()) return def;
        auto v = parse_int_list(raw);
        if (v.size() != 1) throw ConfigError(std::string(flag) + " takes a single value for " + cmd_.meta.command);
        return v[0];
    }
    double one_real(const std::string& raw, double def, const char* flag) const {
        if (raw.empty()) return def;
        auto v = parse_real_list(raw);
        if (v.size() != 1) throw ConfigError(std::string(flag) + " takes a single value for " + cmd_.meta.command);
        return v[0];
    }
    WindowPolicy policy(const std::string& def) const {
        return WindowPolicy::parse(f_.window_policy.empty() ? def : f_.window_policy);
    }
    int trials(int def) const { return f_.trials < 0 ? def : f_.trials; }
    void check_P() const {
        if (!(f_.P > 0 && f_.P < 1)) throw ConfigError("--P must lie in (0, 1)");
    }

    // ---------------------------------------------------------------- repro-compression
    void repro_compression() {
        allow({"--n", "--p", "--T", "--window-policy"});
        const double p = one_real(f_.p, 1.0, "--p");
        const double T = one_real(f_.T, 1.0, "--T");
        if (!(p >= 0.5 && p <= 1)) throw ConfigError("--p must lie in [1/2, 1]");
        config("p", p);
        config("T", T);

        Table& t = cmd_.table;
        t.columns = {"label",       "n",          "p",        "T",         "window_policy",  "memory_qubits",
                     "eps_trace",   "infidelity", "infidelity_sq",         "fidelity",       "bound_value",
                     "bound_satisfied"};
        auto row = [&](const std::string& label, int n, const WindowPolicy& pol) {
            BlockState st = block_state(ClockParams::with_p(n, T, p), Exec::kParallel);
            EncodedState mem = encode(st, 0.5, pol, LeakState::kDiscarded, Exec::kParallel);
            CompressionReport rep = compression_error(st, decode(mem, n));
            rep.memory_qubits = mem.total_qubits;
            if (pol.kind == WindowPolicy::Kind::kAsymptotic) {
                if (p == 1.0 && n >= 4) {
                    rep.bound_value = projection_error_bound(0.5 * n, 1.0);
                } else if (p > 0.5 && p < 1) {
                    rep.bound_value = single_shot_error_bound(n, p);
                }
                rep.bound_satisfied = std::isnan(rep.bound_value) || rep.eps_trace <= rep.bound_value;
            }
            t.add({label, std::int64_t{n}, p, T, pol.name(), std::int64_t{rep.memory_qubits}, rep.eps_trace,
                   rep.infidelity, rep.infidelity_sq, rep.fidelity, rep.bound_value, rep.bound_satisfied});
            if (!rep.bound_satisfied) cmd_.exit_code = kBoundViolation;
            return rep;
        };

        if (given("--n")) {
            WindowPolicy pol = policy("asymptotic");
            config("n", f_.n);
            config("window_policy", pol.name());
            for (int n : ints(f_.n, "")) {
                if (n < 1) throw ConfigError("--n must be >= 1");
                row("custom", n, pol);
            }
            return;
        }
        WindowPolicy scaling = policy("asymptotic");
        config("scaling_window_policy", scaling.name());
        CompressionReport a = row("n16-q4", 16, WindowPolicy::qubit_budget(4));
        CompressionReport b = row("n4-q2", 4, WindowPolicy::qubit_budget(2));
        for (int n : {4, 8, 16, 32, 64}) row("scaling", n, scaling);
        summary("n16_eps_trace", a.eps_trace);
        summary("n16_infidelity", a.infidelity);
        summary("n4_fidelity", b.fidelity);
    }

    // ---------------------------------------------------------------- repro-stopwatch / sweep
    struct PairResult {
        ProtocolResult coh, inc;
    };

    PairResult run_pair(int n, int k, double T, double gamma, const WindowPolicy& pol, ProtocolOptions o) const {
        EventSchedule sched = EventSchedule::equal(k, T);
        PairResult r;
        r.coh = run_stopwatch(n, sched, gamma, pol, f_.seed, o);
        o.keep_estimates = false;
        r.inc = run_incoherent(n, sched, gamma, f_.seed, o);
        return r;
    }

    static std::vector<std::string> protocol_columns() {
        return {"n",           "k",           "T",           "gamma",        "P",
                "readout",     "accounting",  "window_policy", "delta_coh",  "delta_coh_ci_low",
                "delta_coh_ci_high",          "delta_inc",   "delta_inc_ci_low", "delta_inc_ci_high",
                "ratio",       "delta_coh_exact",            "delta_inc_exact",  "ratio_exact",
                "eps_total",   "bound",       "memory_qubits"};
    }

    void add_protocol_row(int n, int k, double T, double gamma, const ProtocolOptions& o, const WindowPolicy& pol,
                          const PairResult& r) {
        const auto& c = r.coh.inaccuracy;
        const auto& i = r.inc.inaccuracy;
        cmd_.table.add({std::int64_t{n}, std::int64_t{k}, T, gamma, o.P, readout_name(o.readout),
                        accounting_name(o.accounting), o.compress ? pol.name() : std::string("none"), c.delta,
                        c.ci_low, c.ci_high, i.delta, i.ci_low, i.ci_high, c.delta / i.delta, r.coh.exact_delta,
                        r.inc.exact_delta, r.coh.exact_delta / r.inc.exact_delta, r.coh.compression_error_total,
                        overall_error_bound(n, k, T, gamma), std::int64_t{r.coh.memory_qubits_peak}});
    }

    void repro_stopwatch() {
        allow({"--n", "--k", "--T", "--gamma", "--P", "--trials", "--window-policy", "--readout", "--accounting",
               "--trial-log"});
        check_P();
        const int n = one_int(f_.n, 8, "--n");
        const int k = one_int(f_.k, 4, "--k");
        const double T = one_real(f_.T, 2.0, "--T");
        const double gamma = one_real(f_.gamma, 0.0, "--gamma");
        const WindowPolicy pol = policy("qubit-budget=3");
        const int ntrials = trials(100000);
        std::vector<std::pair<Readout, Accounting>> combos;
        if (f_.readout.empty() && f_.accounting.empty()) {
            combos = {{Readout::kLeadingOrder, Accounting::kContinuity},
                      {Readout::kCovariant, Accounting::kContinuity},
                      {Readout::kCovariant, Accounting::kDirect}};
        } else {
            combos = {{parse_readout(f_.readout.empty() ? "covariant" : f_.readout),
                       parse_accounting(f_.accounting.empty() ? "direct" : f_.accounting)}};
        }
        config("n", std::to_string(n));
        config("k", std::to_string(k));
        config("T", T);
        config("gamma", gamma);
        config("P", f_.P);
        config("trials", std::to_string(ntrials));
        config("window_policy", pol.name());

        cmd_.table.columns = protocol_columns();
        for (std::size_t c = 0; c < combos.size(); ++c) {
            ProtocolOptions o;
            o.P = f_.P;
            o.trials = ntrials;
            o.readout = combos[c].first;
            o.accounting = combos[c].second;
            o.exec = Exec::kParallel;
            o.keep_estimates = c == 0 && !f_.trial_log.empty();
            PairResult r = run_pair(n, k, T, gamma, pol, o);
            add_protocol_row(n, k, T, gamma, o, pol, r);
            if (c == 0) {
                summary("headline_ratio", r.coh.inaccuracy.delta / r.inc.inaccuracy.delta);
                if (o.keep_estimates) write_trial_log(r.coh.estimates, T);
            }
        }
        summary("target_ratio", "0.787");
    }

    void write_trial_log(const std::vector<double>& est, double T) {
        std::ofstream os(f_.trial_log);
        if (!os) throw ConfigError("cannot open --trial-log file '" + f_.trial_log + "'");
        std::vector<TrialRow> rows;
        rows.reserve(est.size());
        for (std::size_t i = 0; i < est.size(); ++i) {
            rows.push_back({static_cast<std::int64_t>(i), T, est[i], circular_distance(est[i], T)});
        }
        write_trials_csv(os, rows);
        config("trial_log", f_.trial_log);
    }

    void sweep() {
        allow({"--n", "--k", "--T", "--gamma", "--P", "--trials", "--window-policy", "--readout", "--accounting"});
        check_P();
        auto ns = ints(f_.n, "8");
        auto ks = ints(f_.k, "4");
        auto Ts = reals(f_.T, "2");
        auto gammas = reals(f_.gamma, "0");
        // Rows come out sorted by (n, k, T, gamma).
        std::sort(ns.begin(), ns.end());
        std::sort(ks.begin(), ks.end());
        std::sort(Ts.begin(), Ts.end());
        std::sort(gammas.begin(), gammas.end());
        const WindowPolicy pol = policy("asymptotic");
        ProtocolOptions o;
        o.P = f_.P;
        o.trials = trials(10000);
        o.readout = parse_readout(f_.readout.empty() ? "covariant" : f_.readout);
        o.accounting = parse_accounting(f_.accounting.empty() ? "direct" : f_.accounting);
        o.exec = Exec::kParallel;
        config("n", join(ns));
        config("k", join(ks));
        config("T", join(Ts));
        config("gamma", join(gammas));
        config("P", f_.P);
        config("trials", std::to_string(o.trials));
        config("readout", readout_name(o.readout));
        config("accounting", accounting_name(o.accounting));
        config("window_policy", pol.name());

        cmd_.table.columns = protocol_columns();
        for (int n : ns)
            for (int k : ks)
                for (double T : Ts)
                    for (double g : gammas) add_protocol_row(n, k, T, g, o, pol, run_pair(n, k, T, g, pol, o));
    }

    // ---------------------------------------------------------------- repro-figure3
    void repro_figure3() {
        allow({"--gamma", "--k", "--P", "--points", "--t-min", "--t-max"});
        check_P();
        const double gamma = one_real(f_.gamma, 0.2, "--gamma");
        const int k_max = one_int(f_.k, 50, "--k");
        if (!(gamma > 0)) throw ConfigError("repro-figure3 needs --gamma > 0");
        if (!(f_.t_min > 0 && f_.t_max > f_.t_min)) throw ConfigError("need 0 < --t-min < --t-max");
        if (f_.points < 2) throw ConfigError("--points must be >= 2");
        config("gamma", gamma);
        config("k_max", std::to_string(k_max));
        config("P", f_.P);
        config("points", std::to_string(f_.points));
        config("t_min", f_.t_min);
        config("t_max", f_.t_max);

        auto grid = linspace(f_.t_min, f_.t_max, f_.points);
        auto pts = advantage_surface(gamma, k_max, grid, f_.P, Exec::kParallel);
        cmd_.table.columns = {"k", "T", "ratio", "delta_star_coh", "delta_star_inc"};
        double best = 0, best_T = 0;
        bool all_k_gt_2 = true;
        int worst_k = 0;
        double worst_T = 0;
        std::map<int, double> min_ratio;
        for (const auto& sp : pts) {
            cmd_.table.add({std::int64_t{sp.k}, sp.T, sp.ratio, sp.delta_star_coherent, sp.delta_star_incoherent});
            if (sp.k == k_max && sp.ratio > best) {
                best = sp.ratio;
                best_T = sp.T;
            }
            if (sp.k > 2 && !(sp.ratio > 1) && all_k_gt_2) {
                all_k_gt_2 = false;
                worst_k = sp.k;
                worst_T = sp.T;
            }
        }
        summary("max_ratio_at_k_max", best);
        summary("argmax_T_at_k_max", best_T);
        summary("advantage_all_k_gt_2", all_k_gt_2 ? "true" : "false");
        if (!all_k_gt_2) summary("first_non_advantage", "k=" + std::to_string(worst_k) + ",T=" + format_number(worst_T));
    }

    // ---------------------------------------------------------------- repro-bounds
    void check_row(const std::string& check, const std::string& params, double lhs, double rhs, double margin) {
        bool ok = margin >= 0;
        cmd_.table.add({check, params, lhs, rhs, margin, ok});
        if (!ok) {
            cmd_.exit_code = kBoundViolation;
            err_ << "violation: " << check << " " << params << " misses by " << format_number(-margin) << "\n";
        }
    }

    void repro_bounds() {
        allow({"--J", "--p", "--n", "--P", "--slack", "--window-policy", "--k", "--gamma", "--T"});
        check_P();
        auto Js = ints(f_.J, "4..512");
        auto ps = reals(f_.p, "0.7,0.8,0.9,0.99");
        auto ns = ints(f_.n, "4,8,16,32");
        auto ks = ints(f_.k, "2,4");
        auto gammas = reals(f_.gamma, "0,0.2");
        const double T = one_real(f_.T, 1.0, "--T");
        const WindowPolicy pol = policy("asymptotic");
        for (int J : Js)
            if (J < 2) throw ConfigError("--J values must be >= 2");
        for (double p : ps)
            if (!(p > 0.5 && p <= 1)) throw ConfigError("--p values must lie in (1/2, 1]");
        config("J", join(Js));
        config("p", join(ps));
        config("n", join(ns));
        config("k", join(ks));
        config("gamma", join(gammas));
        config("T", T);
        config("P", f_.P);
        config("slack", f_.slack);
        config("window_policy", pol.name());

        cmd_.table.columns = {"check", "params", "lhs", "rhs", "margin", "ok"};
        // Exact projection error never exceeds the closed-form bound.
        for (int J : Js)
            for (double p : ps) {
                double exact = projection_error(2 * J, p);
                double bound = projection_error_bound(J, p);
                check_row("projection", "J=" + std::to_string(J) + ";p=" + format_number(p), exact, bound,
                          bound - exact);
            }
        // Exact covariant inaccuracy sits above the size-accuracy floor; compressed memories also
        // need at least log2(1/delta) - slack qubits.
        for (int n : ns) {
            std::string tag = "n=" + std::to_string(n);
            BlockState pure = block_state(ClockParams::with_p(n, T, 1.0), Exec::kParallel);
            double d_pure = covariant_inaccuracy(pure, T, f_.P);
            BoundCheck a = check_size_accuracy(d_pure, effective_dimension_pure(n), kTwoPi, f_.P);
            check_row("size-accuracy", tag + ";p=1;uncompressed", a.lhs, a.rhs, a.margin);

            BlockState mixed = block_state(ClockParams::with_p(n, T, 0.9), Exec::kParallel);
            double d_mixed = covariant_inaccuracy(mixed, T, f_.P);
            BoundCheck b = check_size_accuracy(d_mixed, effective_dimension_mixed(n), kTwoPi, f_.P);
            check_row("size-accuracy", tag + ";p=0.9;uncompressed", b.lhs, b.rhs, b.margin);

            EncodedState mem = encode(pure, 0.5, pol, LeakState::kDiscarded, Exec::kParallel);
            BlockState comp = decode(mem, n);
            double d_comp = covariant_inaccuracy(comp, T, f_.P);
            BoundCheck c = check_size_accuracy(d_comp, effective_dimension_memory(mem.total_qubits), kTwoPi, f_.P);
            check_row("size-accuracy", tag + ";p=1;" + pol.name(), c.lhs, c.rhs, c.margin);
            BoundCheck m = check_memory(mem.total_qubits, d_comp, f_.P, f_.slack);
            check_row("memory", tag + ";p=1;" + pol.name() + ";qubits=" + std::to_string(mem.total_qubits), m.lhs,
                      m.rhs, m.margin);
        }
        // Accumulated stopwatch compression error against the closed-form budget.
        for (int n : ns) {
            if (n < 2) continue;
            for (int k : ks)
                for (double g : gammas) {
                    ProtocolOptions o;
                    o.trials = 0;
                    o.P = f_.P;
                    o.exec = Exec::kParallel;
                    ProtocolResult r = run_stopwatch(n, EventSchedule::equal(k, T), g, pol, f_.seed, o);
                    double bound = overall_error_bound(n, k, T, g);
                    check_row("stopwatch-error",
                              "n=" + std::to_string(n) + ";k=" + std::to_string(k) + ";gamma=" + format_number(g) +
                                  ";T=" + format_number(T),
                              r.compression_error_total, bound, bound - r.compression_error_total);
                }
        }
        std::int64_t bad = 0;
        for (const auto& row : cmd_.table.rows) bad += std::get<bool>(row.back()) ? 0 : 1;
        summary("checks", std::to_string(cmd_.table.rows.size()));
        summary("violations", std::to_string(bad));
    }

    // ---------------------------------------------------------------- network
    void network() {
        allow({"--k", "--omegas", "--n", "--T", "--P", "--trials", "--window-policy"});
        check_P();
        std::vector<double> omegas;
        if (!f_.omegas.empty()) {
            if (given("--k")) throw ConfigError("give either --k or --omegas");
            omegas = parse_real_list(f_.omegas);
        } else {
            omegas.assign(one_int(f_.k, 10, "--k"), 1.0);
        }
        const int n = one_int(f_.n, 256, "--n");
        const double T0 = one_real(f_.T, 3.0 / static_cast<double>(omegas.size()), "--T");
        const WindowPolicy pol = policy("asymptotic");
        ProtocolOptions o;
        o.P = f_.P;
        o.trials = trials(10000);
        o.exec = Exec::kParallel;
        config("omegas", join(omegas));
        config("n", std::to_string(n));
        config("T0", T0);
        config("P", f_.P);
        config("trials", std::to_string(o.trials));
        config("window_policy", pol.name());

        NetworkResult r = network_sequential(omegas, T0, n, pol, f_.seed, o);
        cmd_.table.columns = {"k",           "n",           "T0",         "window_policy",  "phi_true",
                              "phi_estimate", "omega_sum_estimate",       "delta_exact",    "delta_mc",
                              "ci_low",      "ci_high",     "analytic_delta",               "compression_error_total",
                              "memory_qubits_per_hop",      "qubit_cost", "baseline_cost",  "ambiguous"};
        cmd_.table.add({static_cast<std::int64_t>(omegas.size()), std::int64_t{n}, T0, pol.name(), r.phi_true,
                        r.phi_estimate, r.omega_sum_estimate, r.delta_exact, r.inaccuracy.delta, r.inaccuracy.ci_low,
                        r.inaccuracy.ci_high, inaccuracy_analytic(n, f_.P, 1.0), r.compression_error_total,
                        std::int64_t{r.memory_qubits_per_hop}, std::int64_t{r.qubit_cost},
                        std::int64_t{r.baseline_cost}, r.ambiguous});
        if (r.ambiguous) err_ << "warning: total phase outside the fiducial interval; estimate is ambiguous\n";
    }

    const Flags& f_;
    const CLI::App& app_;
    std::ostream& err_;
    Command cmd_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Flags f;
    CLI::App app{"Coherent time-recording simulator: reproduction tables and parameter sweeps", "stopwatch"};
    app.set_version_flag("--version", STOPWATCH_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--n", f.n, "Clock qubits (list or a..b doubling range where a command sweeps)");
    app.add_option("--k", f.k, "Events / nodes (k_max for repro-figure3)");
    app.add_option("--T", f.T, "Total duration (T0 per node for network)");
    app.add_option("--gamma", f.gamma, "Dephasing rate");
    app.add_option("--p", f.p, "Clock-state eigenvalue p (list for repro-bounds)");
    app.add_option("--P", f.P, "Confidence level")->capture_default_str();
    app.add_option("--trials", f.trials, "Monte Carlo trials");
    app.add_option("--seed", f.seed, "Base seed")->capture_default_str();
    app.add_option("--window-policy", f.window_policy, "asymptotic | qubit-budget=q");
    app.add_option("--readout", f.readout, "local-mle | covariant | leading-order");
    app.add_option("--accounting", f.accounting, "direct | continuity");
    app.add_option("--J", f.J, "Spin values for the projection-error sweep (e.g. 4..512)");
    app.add_option("--omegas", f.omegas, "Node frequencies for network (comma list)");
    app.add_option("--slack", f.slack, "Slack in qubits for the memory-bound check")->capture_default_str();
    app.add_option("--points", f.points, "T grid points for repro-figure3")->capture_default_str();
    app.add_option("--t-min", f.t_min, "Lower end of the repro-figure3 T grid")->capture_default_str();
    app.add_option("--t-max", f.t_max, "Upper end of the repro-figure3 T grid")->capture_default_str();
    app.add_option("--trial-log", f.trial_log, "Write trial-level CSV (repro-stopwatch, first row)");
    app.add_option("--out", f.out, "Output file (default stdout)");
    app.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    const std::vector<std::pair<const char*, const char*>> commands = {
        {"repro-compression", "Compression error table (n=16 -> 4 qubits, n=4 -> 2 qubits, scaling)"},
        {"repro-stopwatch", "Coherent vs incoherent k-event stopwatch"},
        {"repro-figure3", "Analytic advantage surface over (k, T)"},
        {"repro-bounds", "Exact errors versus analytic bounds; exit 1 on any violation"},
        {"sweep", "Stopwatch parameter sweep over n, k, T, gamma"},
        {"network", "Sequential network frequency-sum protocol"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }
    const std::string name = app.get_subcommands().front()->get_name();

    try {
        auto start = std::chrono::steady_clock::now();
        Command cmd = Runner(f, app, err).run(name);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        err << "wall_clock_seconds: " << format_number(wall) << "\n";
        if (f.format == "json") cmd.meta.wall_seconds = wall;

        std::ofstream file;
        if (!f.out.empty()) {
            file.open(f.out);
            if (!file) throw ConfigError("cannot open --out file '" + f.out + "'");
        }
        std::ostream& os = f.out.empty() ? out : file;
        if (f.format == "json") {
            write_json(os, cmd.table, cmd.meta);
        } else {
            write_csv(os, cmd.table, cmd.meta);
        }
        return cmd.exit_code;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"stopwatch"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace stopwatch::cli
