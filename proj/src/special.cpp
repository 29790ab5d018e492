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

#include "stopwatch/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stopwatch {

double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -kInf;
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

double log_sum_exp(const std::vector<double>& x) {
    double hi = -kInf;
    for (double v : x) hi = std::max(hi, v);
    if (hi == -kInf) return -kInf;
    double acc = 0;
    for (double v : x) acc += std::exp(v - hi);
    return hi + std::log(acc);
}

double erf_inv(double x) {
    if (std::isnan(x) || x < -1 || x > 1) throw std::invalid_argument("erf_inv: argument outside [-1, 1]");
    if (x == 1) return kInf;
    if (x == -1) return -kInf;
    if (x == 0) return 0;

    // Giles' single-precision rational approximation as the starting point.
    double w = -std::log((1.0 - x) * (1.0 + x));
    double y;
    if (w < 5.0) {
        w -= 2.5;
        y = 2.81022636e-08;
        y = 3.43273939e-07 + y * w;
        y = -3.5233877e-06 + y * w;
        y = -4.39150654e-06 + y * w;
        y = 0.00021858087 + y * w;
        y = -0.00125372503 + y * w;
        y = -0.00417768164 + y * w;
        y = 0.246640727 + y * w;
        y = 1.50140941 + y * w;
    } else {
        w = std::sqrt(w) - 3.0;
        y = -0.000200214257;
        y = 0.000100950558 + y * w;
        y = 0.00134934322 + y * w;
        y = -0.00367342844 + y * w;
        y = 0.00573950773 + y * w;
        y = -0.0076224613 + y * w;
        y = 0.00943887047 + y * w;
        y = 1.00167406 + y * w;
        y = 2.83297682 + y * w;
    }
    y *= x;

    const double two_over_sqrt_pi = 2.0 / std::sqrt(kPi);
    for (int it = 0; it < 50; ++it) {
        double err = std::erf(y) - x;
        double step = err / (two_over_sqrt_pi * std::exp(-y * y));
        y -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(y))) break;
    }
    return y;
}

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0;
    return r;
}

double circular_distance(double a, double b) {
    double d = wrap_angle(a - b);
    return d > kPi ? kTwoPi - d : d;
}

}  // namespace stopwatch
