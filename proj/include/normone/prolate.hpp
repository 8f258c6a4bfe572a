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
 * Extended-precision top eigenvalue of the d x d prolate matrix
 *
 *     rho_nm = sin((n - m) l / 2) / (pi (n - m)),    rho_nn = l / (2 pi),
 *
 * which is the truncated canonical phase effect of a single arc of length l
 * up to a diagonal unitary. Its top eigenvalue approaches 1 exponentially
 * fast in d, so 1 - lambda_max underflows a double long before d = 512.
 *
 * rho commutes with the tridiagonal matrix
 *
 *     T_nn = ((d - 1 - 2n) / 2)^2 cos(l / 2),   T_n,n+1 = (n + 1)(d - 1 - n) / 2,
 *
 * whose top eigenvector is the top eigenvector of rho. That eigenvector is
 * refined by Rayleigh quotient iteration in MPFR arithmetic, and the deficit
 * 1 - x^T rho x is evaluated at a working precision that is raised until it
 * resolves the result.
 */

#pragma once

#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "normone/linalg.hpp"

namespace normone::prolate {

using mp_real = boost::multiprecision::mpfr_float;

struct DeficitResult {
    double log10_deficit; ///< log10(1 - lambda_max)
    unsigned bits;        ///< working precision that resolved it
    int iterations;       ///< Rayleigh quotient steps at that precision
};

namespace detail {

class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned digits10) : saved_(mp_real::default_precision()) {
        mp_real::default_precision(digits10);
    }
    ~PrecisionGuard() { mp_real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard &) = delete;
    PrecisionGuard &operator=(const PrecisionGuard &) = delete;

  private:
    unsigned saved_;
};

/// Solves (T - sigma I) y = x for symmetric tridiagonal T with partial pivoting.
inline std::vector<mp_real> shifted_solve(const std::vector<mp_real> &diag,
                                          const std::vector<mp_real> &off, const mp_real &sigma,
                                          const std::vector<mp_real> &rhs, const mp_real &tiny) {
    const std::size_t n = diag.size();
    // Row i holds up to three nonzeros at columns i, i+1, i+2 after pivoting.
    std::vector<mp_real> a(n), b(n), c(n), r(rhs);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = diag[i] - sigma;
        b[i] = i + 1 < n ? off[i] : mp_real(0);
        c[i] = 0;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        mp_real na = off[i];
        mp_real nb = diag[i + 1] - sigma;
        mp_real nc = i + 2 < n ? off[i + 1] : mp_real(0);
        mp_real nr = r[i + 1];
        if (abs(na) > abs(a[i])) {
            std::swap(a[i], na);
            std::swap(b[i], nb);
            std::swap(c[i], nc);
            std::swap(r[i], nr);
        }
        if (a[i] == 0) a[i] = tiny;
        const mp_real f = na / a[i];
        a[i + 1] = nb - f * b[i];
        b[i + 1] = nc - f * c[i];
        if (i + 2 < n) c[i + 1] = 0;
        r[i + 1] = nr - f * r[i];
    }
    if (a[n - 1] == 0) a[n - 1] = tiny;
    std::vector<mp_real> y(n);
    for (std::size_t k = n; k-- > 0;) {
        mp_real s = r[k];
        if (k + 1 < n) s -= b[k] * y[k + 1];
        if (k + 2 < n) s -= c[k] * y[k + 2];
        y[k] = s / a[k];
    }
    return y;
}

inline mp_real dot(const std::vector<mp_real> &x, const std::vector<mp_real> &y) {
    mp_real s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline std::vector<mp_real> tridiag_apply(const std::vector<mp_real> &diag,
                                          const std::vector<mp_real> &off,
                                          const std::vector<mp_real> &x) {
    const std::size_t n = x.size();
    std::vector<mp_real> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = diag[i] * x[i];
        if (i > 0) y[i] += off[i - 1] * x[i - 1];
        if (i + 1 < n) y[i] += off[i] * x[i + 1];
    }
    return y;
}

struct Attempt {
    bool positive;
    double log2_deficit;
    double log10_deficit;
    int iterations;
};

inline Attempt deficit_at_precision(long d, double length, const RealVector &start, unsigned bits) {
    PrecisionGuard guard(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
    const auto n = static_cast<std::size_t>(d);
    const mp_real l = length;
    const mp_real pi_mp = boost::math::constants::pi<mp_real>();
    const mp_real cos_half = cos(l / 2);

    std::vector<mp_real> diag(n), off(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        const mp_real h = mp_real(static_cast<long>(d) - 1 - 2 * static_cast<long>(i)) / 2;
        diag[i] = h * h * cos_half;
        if (i + 1 < n)
            off[i] = mp_real(static_cast<long>((i + 1) * (n - 1 - i))) / 2;
    }

    std::vector<mp_real> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = start(static_cast<Eigen::Index>(i));
    {
        const mp_real norm = sqrt(dot(x, x));
        for (auto &v : x) v /= norm;
    }
    const mp_real eps = ldexp(mp_real(1), -static_cast<int>(bits));
    mp_real scale = 1;
    for (const auto &v : diag) scale = std::max(scale, mp_real(abs(v)));
    for (const auto &v : off) scale = std::max(scale, mp_real(abs(v)));
    const mp_real tiny = eps * scale;

    mp_real sigma = dot(x, tridiag_apply(diag, off, x));
    int it = 0;
    for (; it < 60; ++it) {
        auto y = shifted_solve(diag, off, sigma, x, tiny);
        const mp_real norm = sqrt(dot(y, y));
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        const auto tx = tridiag_apply(diag, off, x);
        const mp_real next = dot(x, tx);
        mp_real residual = 0;
        for (std::size_t i = 0; i < n; ++i) residual += (tx[i] - next * x[i]) * (tx[i] - next * x[i]);
        sigma = next;
        if (sqrt(residual) <= eps * scale * 64) break;
    }

    // rho is Toeplitz: r_k = sin(k l / 2) / (pi k).
    std::vector<mp_real> r(n);
    r[0] = l / (2 * pi_mp);
    for (std::size_t k = 1; k < n; ++k) r[k] = sin(mp_real(static_cast<long>(k)) * l / 2) / (pi_mp * static_cast<long>(k));
    mp_real quad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mp_real row = 0;
        for (std::size_t j = 0; j < n; ++j) row += r[i > j ? i - j : j - i] * x[j];
        quad += x[i] * row;
    }
    const mp_real deficit = mp_real(1) - quad;
    if (deficit <= 0) return {false, 0.0, 0.0, it};
    return {true, log2(deficit).convert_to<double>(), log10(deficit).convert_to<double>(), it};
}

} // namespace detail

/**
 * log10(1 - lambda_max(rho)) for a single arc of the given length.
 *
 * Precision starts at 256 bits and doubles until the deficit is positive
 * and exceeds the rounding floor 2^{-bits} d^2 by a factor 2^64.
 */
inline DeficitResult top_eigenvalue_deficit(long d, double length, unsigned max_bits = 1u << 16) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be positive");
    if (!(length > 0.0 && length < two_pi))
        fail(ErrorCode::InvalidArgument, "arc length must lie in (0, 2pi)");

    // Double-precision start vector from the tridiagonal commuting matrix.
    RealVector diag(d), off(std::max<long>(d - 1, 0));
    for (long i = 0; i < d; ++i) {
        const double h = (static_cast<double>(d) - 1.0 - 2.0 * static_cast<double>(i)) / 2.0;
        diag(i) = h * h * std::cos(length / 2.0);
        if (i + 1 < d) off(i) = static_cast<double>((i + 1) * (d - 1 - i)) / 2.0;
    }
    RealVector start = RealVector::Ones(d);
    if (d > 1) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success)
            fail(ErrorCode::EigenNonConvergence, "tridiagonal eigensolver did not converge");
        start = solver.eigenvectors().col(d - 1);
    }

    const double floor_bits = 2.0 * std::log2(static_cast<double>(d) + 1.0) + 64.0;
    for (unsigned bits = 256; bits <= max_bits; bits *= 2) {
        const auto attempt = detail::deficit_at_precision(d, length, start, bits);
        if (!attempt.positive) continue;
        if (-attempt.log2_deficit + floor_bits > static_cast<double>(bits)) continue;
        return {attempt.log10_deficit, bits, attempt.iterations};
    }
    fail(ErrorCode::EigenNonConvergence,
         "prolate deficit unresolved at " + std::to_string(max_bits) + " bits (d = " +
             std::to_string(d) + ")");
}

} // namespace normone::prolate
