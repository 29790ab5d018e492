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

#include "stopwatch/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace stopwatch {

using nlohmann::json;

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table::add: row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string format_cell(const Cell& c) {
    struct V {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(V{}, c);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

json cell_json(const Cell& c) {
    struct V {
        json operator()(std::int64_t v) const { return v; }
        json operator()(double v) const {
            if (!std::isfinite(v)) return format_number(v);
            return v;
        }
        json operator()(const std::string& v) const { return v; }
        json operator()(bool v) const { return v; }
    };
    return std::visit(V{}, c);
}

json number_json(double v) {
    if (!std::isfinite(v)) return format_number(v);
    return v;
}

}  // namespace

void write_csv(std::ostream& os, const Table& table, const RunMetadata& meta) {
    os << "# stopwatch " << STOPWATCH_VERSION << "\n";
    os << "# command: " << meta.command << "\n";
    for (const auto& [k, v] : meta.config) os << "# config." << k << ": " << v << "\n";
    os << "# seed: " << meta.seed << "\n";
    for (const auto& [k, v] : meta.summary) os << "# summary." << k << ": " << v << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_escape(table.columns[i]);
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(row[i]));
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& table, const RunMetadata& meta) {
    json doc;
    json m;
    m["version"] = STOPWATCH_VERSION;
    m["command"] = meta.command;
    json cfg = json::object();
    for (const auto& [k, v] : meta.config) cfg[k] = v;
    m["config"] = cfg;
    m["seed"] = meta.seed;
    json sum = json::object();
    for (const auto& [k, v] : meta.summary) sum[k] = v;
    m["summary"] = sum;
    if (!std::isnan(meta.wall_seconds)) m["wall_clock_seconds"] = meta.wall_seconds;
    doc["metadata"] = m;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = cell_json(row[i]);
        rows.push_back(r);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
}

std::string compression_report_json(const CompressionReport& rep, int n, double p, double T,
                                    const std::string& window_policy) {
    json j;
    j["n"] = n;
    j["p"] = p;
    j["T"] = T;
    j["window_policy"] = window_policy;
    j["memory_qubits"] = rep.memory_qubits;
    j["eps_trace"] = number_json(rep.eps_trace);
    j["infidelity"] = number_json(rep.infidelity);
    j["infidelity_sq"] = number_json(rep.infidelity_sq);
    j["fidelity"] = number_json(rep.fidelity);
    j["bound_value"] = number_json(rep.bound_value);
    j["bound_satisfied"] = rep.bound_satisfied;
    return j.dump();
}

std::string inaccuracy_report_json(const InaccuracyReport& rep) {
    json j;
    j["P"] = rep.P;
    j["delta"] = number_json(rep.delta);
    j["ci_low"] = number_json(rep.ci_low);
    j["ci_high"] = number_json(rep.ci_high);
    j["trials"] = rep.trials;
    j["n"] = rep.n;
    j["estimator"] = rep.estimator;
    j["worst_T"] = rep.worst_T;
    j["saturated"] = rep.saturated;
    return j.dump();
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRow>& rows) {
    os << "trial_id,T,T_hat,abs_err\n";
    for (const auto& r : rows) {
        os << r.trial_id << "," << format_number(r.T) << "," << format_number(r.T_hat) << "," << format_number(r.abs_err)
           << "\n";
    }
}

}  // namespace stopwatch
