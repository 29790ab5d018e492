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

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stopwatch/compressor.hpp"
#include "stopwatch/estimation.hpp"

namespace stopwatch {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

struct RunMetadata {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  // fully resolved, in a fixed order
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> summary;
    double wall_seconds = kNaN;  // JSON only; CSV output stays byte-identical across runs
};

/// Shortest text carrying 17 significant digits, '.' decimal point, independent of locale.
std::string format_number(double x);
std::string format_cell(const Cell& c);

/// CSV with '# key: value' metadata lines (version, command, config, seed, summary) before the header.
void write_csv(std::ostream& os, const Table& table, const RunMetadata& meta);
/// {"metadata": {...}, "rows": [{column: value}, ...]}.
void write_json(std::ostream& os, const Table& table, const RunMetadata& meta);

/// {n, p, T, window_policy, memory_qubits, eps_trace, infidelity, bound_value} plus the remaining report fields.
std::string compression_report_json(const CompressionReport& rep, int n, double p, double T,
                                    const std::string& window_policy);
/// All InaccuracyReport fields.
std::string inaccuracy_report_json(const InaccuracyReport& rep);

struct TrialRow {
    std::int64_t trial_id;
    double T;
    double T_hat;
    double abs_err;
};
/// Trial-level stream: trial_id,T,T_hat,abs_err.
void write_trials_csv(std::ostream& os, const std::vector<TrialRow>& rows);

}  // namespace stopwatch
