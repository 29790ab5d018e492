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

#include <ostream>
#include <string>
#include <vector>

namespace stopwatch::cli {

enum ExitCode { kOk = 0, kBoundViolation = 1, kConfigError = 2 };

/// Parses argv and runs one subcommand. The table goes to `out` (or --out), diagnostics and
/// wall-clock time to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, from a list of arguments without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Exposed for the tests.
std::vector<double> parse_real_list(const std::string& text);
/// "4,8,16" or "4..512" (doubling from the first to the last value).
std::vector<int> parse_int_list(const std::string& text);

}  // namespace stopwatch::cli
