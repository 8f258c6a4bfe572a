// Copyright 2026 The normone Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Special functions not covered by <cmath>: the regularized incomplete gamma
 * function at integer order, the scaled complementary error function and
 * interval masses of the error function.
 */

#pragma once

#include <cmath>
#include <limits>

#include "normone/linalg.hpp"

namespace normone::special {

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

/// P(k, x) and Q(k, x) = 1 - P(k, x) for integer k >= 1, each to full
/// relative precision.
struct GammaPQ {
    double p;
    double q;
};

inline GammaPQ regularized_gamma_int(long k, double x) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "incomplete gamma order must be >= 1");
    if (!(x > 0.0)) return {0.0, 1.0};
    if (std::isinf(x)) return {1.0, 0.0};
    const double kd = static_cast<double>(k);
    const double log_x = std::log(x);
    if (x < kd + 1.0) {
        // P = e^{-x} x^k / k! * sum_j x^j / ((k+1)...(k+j))
        double term = 1.0, sum = 1.0;
        for (int j = 1; j < 100000; ++j) {
            term *= x / (kd + j);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        const double p = std::exp(kd * log_x - x - log_factorial(k)) * sum;
        return {p, 1.0 - p};
    }
    // Q = e^{-x} sum_{j<k} x^j / j!, summed from the largest term down.
    double q = 0.0;
    for (long j = k - 1; j >= 0; --j)
        q += std::exp(static_cast<double>(j) * log_x - x - log_factorial(j));
    return {1.0 - q, q};
}

/// P(k, b) - P(k, a) for 0 <= a <= b <= inf, choosing whichever tail keeps
/// both terms small.
inline double gamma_p_difference(long k, double a, double b) {
    const auto ga = regularized_gamma_int(k, a);
    const auto gb = regularized_gamma_int(k, b);
    return gb.p < 0.5 ? gb.p - ga.p : ga.q - gb.q;
}

/// erfcx(x) = exp(x^2) erfc(x).
inline double erfcx(double x) {
    if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
    if (x < 4.0) return std::exp(x * x) * std::erfc(x);
    // Continued fraction sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    double tail = x;
    for (int n = 80; n >= 1; --n) tail = x + 0.5 * n / tail;
    return 1.0 / (std::sqrt(pi) * tail);
}

/// 1 - sqrt(pi) x erfcx(x) for x >= 0, without cancellation for large x.
inline double one_minus_sqrtpi_x_erfcx(double x) {
    if (x < 4.0) return 1.0 - std::sqrt(pi) * x * erfcx(x);
    // sqrt(pi) erfcx(x) = 1/(x + K) with K the continued-fraction tail.
    double tail = x;
    for (int n = 80; n >= 2; --n) tail = x + 0.5 * n / tail;
    const double k = 0.5 / tail;
    return k / (x + k);
}

/// (erf(b) - erf(a)) / 2 for a <= b, infinite endpoints allowed; uses the
/// complementary function on whichever side avoids cancellation.
inline double erf_mass(double a, double b) {
    if (a >= b) return 0.0;
    if (a >= 0.0) return 0.5 * (std::erfc(a) - std::erfc(b));
    if (b <= 0.0) return 0.5 * (std::erfc(-b) - std::erfc(-a));
    return 0.5 * (std::erf(b) - std::erf(a));
}

} // namespace normone::special
