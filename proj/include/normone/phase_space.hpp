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
 * The phase-space observable generated by the vacuum,
 *
 *     A(Z) = (1/pi) int_Z |z><z| dlambda(z),
 *
 * on the truncated number basis, with its number, angle and Cartesian margins.
 * Coherent states follow <n|z> = e^{-|z|^2/2} z^n / sqrt(n!).
 */

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "normone/effect.hpp"
#include "normone/quadrature.hpp"
#include "normone/regions.hpp"
#include "normone/special.hpp"
#include "normone/tcs.hpp"

namespace normone {

inline cplx coherent_overlap(long n, cplx z) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "number state index must be >= 0");
    const double r = std::abs(z);
    if (r == 0.0) return n == 0 ? 1.0 : 0.0;
    const double log_mag = -0.5 * r * r + static_cast<double>(n) * std::log(r) -
                           0.5 * special::log_factorial(n);
    const double phase = static_cast<double>(n) * std::arg(z);
    return std::exp(log_mag) * cplx(std::cos(phase), std::sin(phase));
}

/// First d Fock amplitudes of |z> (not renormalized).
inline ComplexVector coherent_state(cplx z, Eigen::Index d) {
    ComplexVector v(d);
    for (Eigen::Index n = 0; n < d; ++n) v(n) = coherent_overlap(static_cast<long>(n), z);
    return v;
}

/// Smallest d with d >= s^2 + 10 s + 10.
inline Eigen::Index coherent_truncation(double s) {
    return std::max<Eigen::Index>(2, static_cast<Eigen::Index>(std::ceil(s * s + 10.0 * s + 10.0)));
}

/**
 * int_{r1}^{r2} r^{n+m+1} e^{-r^2} dr / sqrt(n! m!).
 *
 * Even n + m reduces to an integer-order incomplete gamma function; odd
 * n + m is integrated numerically in log space.
 */
inline double radial_moment(long n, long m, double r1, double r2) {
    const long k = n + m;
    const double log_norm = 0.5 * (special::log_factorial(n) + special::log_factorial(m));
    if (k % 2 == 0) {
        const long order = k / 2 + 1;
        const double dp = special::gamma_p_difference(order, r1 * r1, r2 * r2);
        return 0.5 * std::exp(special::log_factorial(order - 1) - log_norm) * dp;
    }
    const double peak = std::sqrt(0.5 * static_cast<double>(k + 1));
    const double lo = r1;
    const double hi = std::min(r2, peak + 10.0);
    if (!(hi > lo)) return 0.0;
    const double kd = static_cast<double>(k + 1);
    auto f = [&](double r) {
        return r > 0.0 ? std::exp(kd * std::log(r) - r * r - log_norm) : 0.0;
    };
    std::vector<double> pts{lo};
    if (peak > lo && peak < hi) pts.push_back(peak);
    pts.push_back(hi);
    quad::Options opt;
    opt.abs_tol = 1e-15;
    opt.rel_tol = 1e-13;
    return quad::integrate(f, pts, opt).value;
}

/// Entries 2 arc_fourier(Theta, n - m) R_nm.
inline ComplexMatrix phase_space_matrix(const PolarRegion &z, Eigen::Index d) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be positive");
    ComplexMatrix a(d, d);
    for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index m = n; m < d; ++m) {
            const double rad = radial_moment(static_cast<long>(n), static_cast<long>(m), z.r1, z.r2);
            a(n, m) = 2.0 * arc_fourier(z.theta, static_cast<long>(n - m)) * rad;
            a(m, n) = std::conj(a(n, m));
        }
    return a;
}

inline Effect phase_space_effect(const PolarRegion &z, Eigen::Index d, const ToleranceConfig &cfg = {}) {
    return Effect::validate(phase_space_matrix(z, d), cfg);
}

/// Diagonal P(n + 1, r2^2) - P(n + 1, r1^2).
inline Effect number_margin(double r1, double r2, Eigen::Index d, const ToleranceConfig &cfg = {}) {
    if (!(r1 >= 0.0 && r1 < r2)) fail(ErrorCode::InvalidArgument, "radial interval needs 0 <= r1 < r2");
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n)
        a(n, n) = special::gamma_p_difference(static_cast<long>(n) + 1, r1 * r1, r2 * r2);
    return Effect::validate(a, cfg);
}

/// Entries arc_fourier(Theta, n - m) Gamma((n + m)/2 + 1) / sqrt(n! m!).
inline ComplexMatrix angle_margin_matrix(const ArcSet &theta, Eigen::Index d) {
    ComplexMatrix a(d, d);
    for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index m = n; m < d; ++m) {
            const double k = 0.5 * static_cast<double>(n + m);
            const double rad = std::exp(std::lgamma(k + 1.0) -
                                        0.5 * (special::log_factorial(static_cast<long>(n)) +
                                               special::log_factorial(static_cast<long>(m))));
            a(n, m) = arc_fourier(theta, static_cast<long>(n - m)) * rad;
            a(m, n) = std::conj(a(n, m));
        }
    return a;
}

inline Effect angle_margin(const ArcSet &theta, Eigen::Index d, const ToleranceConfig &cfg = {}) {
    return Effect::validate(angle_margin_matrix(theta, d), cfg);
}

struct AngleProbeRow {
    double s;
    Eigen::Index d;
    double probability;   ///< <alpha| A^theta(Theta) |alpha> on the truncated space
    double deficit;       ///< 1 - probability from the closed-form angle density
    double log10_deficit;
};

/**
 * Probabilities <alpha|A^theta(Theta)|alpha> for alpha = s e^{i theta0}.
 *
 * The truncated-matrix probability saturates at double resolution, so the
 * deficit int_{Theta'} g dtheta of the coherent angle density is reported
 * alongside it; it is what orders the large-s rows.
 */
inline std::vector<AngleProbeRow> angle_margin_norm1_probe(const ArcSet &theta, double theta0,
                                                           const std::vector<double> &amplitudes,
                                                           std::optional<Eigen::Index> d = std::nullopt) {
    if (!theta.interior_contains(theta0))
        fail(ErrorCode::InvalidArgument, "theta0 must be interior to an arc of Theta");
    std::vector<AngleProbeRow> rows;
    const ArcSet outside = theta.complement();
    for (double s : amplitudes) {
        if (!(s >= 0.0)) fail(ErrorCode::InvalidArgument, "amplitudes must be non-negative");
        Eigen::Index dim = coherent_truncation(s);
        if (d) {
            if (static_cast<double>(*d) < s * s + 10.0 * s)
                fail(ErrorCode::TruncationTooSmall,
                     "d = " + std::to_string(*d) + " is below s^2 + 10 s for s = " + std::to_string(s));
            dim = *d;
        }
        const cplx alpha = std::polar(s, theta0);
        const ComplexVector v = coherent_state(alpha, dim);
        const double prob = v.dot(angle_margin_matrix(theta, dim) * v).real();
        const double deficit = angle_mass(TCSParams::coherent(alpha), outside);
        rows.push_back({s, dim, prob, deficit, deficit > 0.0 ? std::log10(deficit) : -INFINITY});
    }
    return rows;
}

/// h(x) = (|f0|^2 * chi_X)(x / sqrt 2) with |f0|^2(t) = e^{-t^2} / sqrt(pi).
class CartesianSymbol {
  public:
    explicit CartesianSymbol(RealRegion x, double scale = 1.0 / std::sqrt(2.0), double width = 1.0)
        : x_(std::move(x)), scale_(scale), width_(width) {}

    double operator()(double x) const {
        const double u = x * scale_;
        double h = 0.0;
        for (const auto &i : x_.intervals())
            h += special::erf_mass(width_ * (u - i.b), width_ * (u - i.a));
        return h;
    }

    [[nodiscard]] const RealRegion &region() const noexcept { return x_; }

  private:
    RealRegion x_;
    double scale_;
    double width_;
};

inline CartesianSymbol cartesian_symbol(const RealRegion &x) { return CartesianSymbol(x); }

/**
 * Symbol of A(X x R) as a function of the position quadrature q, where
 * Re z = q / sqrt 2: (1/2)(erf(q - sqrt2 a) - erf(q - sqrt2 b)).
 */
inline CartesianSymbol strip_symbol(const RealRegion &x) {
    return CartesianSymbol(x, 1.0 / std::sqrt(2.0), std::sqrt(2.0));
}

/**
 * H_nm = int h(q) psi_n(q) psi_m(q) dq for the Hermite functions psi_n,
 * by composite 15-point Kronrod panels. The embedded 7-point Gauss sum gives
 * the error estimate; QuadratureFailure when it exceeds 1e-8.
 */
inline Eigen::MatrixXd hermite_matrix(const std::function<double(double)> &h, Eigen::Index d) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be positive");
    if (d > 300) fail(ErrorCode::InvalidArgument, "Hermite quadrature supports d <= 300");
    const double span = std::sqrt(2.0 * static_cast<double>(d) + 1.0) + 10.0;
    const double width = std::min(0.25, 3.0 / std::sqrt(2.0 * static_cast<double>(d) + 1.0));
    const auto panels = static_cast<Eigen::Index>(std::ceil(2.0 * span / width));
    const double step = 2.0 * span / static_cast<double>(panels);
    const Eigen::Index nodes = 15 * panels;

    Eigen::MatrixXd psi(d, nodes);
    Eigen::VectorXd wk(nodes), wg(nodes);
    const double c0 = std::pow(pi, -0.25);
    for (Eigen::Index p = 0; p < panels; ++p) {
        const double a = -span + step * static_cast<double>(p);
        const auto rule = quad::panel_rule(a, a + step);
        for (std::size_t j = 0; j < 15; ++j) {
            const Eigen::Index col = 15 * p + static_cast<Eigen::Index>(j);
            const double q = rule.x[j];
            const double hq = h(q);
            wk(col) = rule.wk[j] * hq;
            wg(col) = rule.wg[j] * hq;
            psi(0, col) = c0 * std::exp(-0.5 * q * q);
            if (d > 1) psi(1, col) = std::sqrt(2.0) * q * psi(0, col);
            for (Eigen::Index n = 1; n + 1 < d; ++n) {
                const double nd = static_cast<double>(n);
                psi(n + 1, col) = std::sqrt(2.0 / (nd + 1.0)) * q * psi(n, col) -
                                  std::sqrt(nd / (nd + 1.0)) * psi(n - 1, col);
            }
        }
    }
    const Eigen::MatrixXd hk = psi * wk.asDiagonal() * psi.transpose();
    const Eigen::MatrixXd hg = psi * wg.asDiagonal() * psi.transpose();
    const double err = (hk - hg).cwiseAbs().maxCoeff();
    if (err > 1e-8)
        fail(ErrorCode::QuadratureFailure, "Hermite matrix error estimate " + std::to_string(err));
    return 0.5 * (hk + hk.transpose());
}

/// <n| h(Q) |m> on the X axis; <n| h(P) |m> = i^{n - m} H_nm on the Y axis.
inline ComplexMatrix quadrature_function_matrix(const std::function<double(double)> &h, Eigen::Index d,
                                                Axis axis) {
    const Eigen::MatrixXd hr = hermite_matrix(h, d);
    ComplexMatrix out = hr.cast<cplx>();
    if (axis == Axis::Y) {
        static constexpr cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (Eigen::Index n = 0; n < d; ++n)
            for (Eigen::Index m = 0; m < d; ++m) out(n, m) *= powers[((n - m) % 4 + 4) % 4];
    }
    return out;
}

/// h(Q) (X axis) or h(P) (Y axis) for the margin symbol h of cartesian_symbol.
inline Effect cartesian_margin_effect(const RealRegion &x, Eigen::Index d, Axis axis = Axis::X,
                                      const ToleranceConfig &cfg = {}) {
    const CartesianSymbol h = cartesian_symbol(x);
    return Effect::validate(quadrature_function_matrix(h, d, axis), cfg);
}

/// A({z : Re z in X}) (X axis) or A({z : Im z in X}) (Y axis).
inline Effect phase_space_strip_effect(const RealRegion &x, Eigen::Index d, Axis axis = Axis::X,
                                       const ToleranceConfig &cfg = {}) {
    const CartesianSymbol h = strip_symbol(x);
    return Effect::validate(quadrature_function_matrix(h, d, axis), cfg);
}

} // namespace normone
