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

#include <limits>
#include <vector>

namespace stopwatch {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// log C(n, k) through lgamma; -inf when k is outside [0, n].
double log_binomial(double n, double k);

/// Numerically safe log(sum(exp(x))). Returns -inf for an empty or all -inf input.
double log_sum_exp(const std::vector<double>& x);

/// Inverse error function on (-1, 1), Newton-refined to ~1e-15 absolute.
/// erf_inv(+-1) returns +-inf.
double erf_inv(double x);

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double x);

/// Circular distance between two angles, in [0, pi].
double circular_distance(double a, double b);

}  // namespace stopwatch
