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
 * Two-photon coherent states |beta; mu, nu>, eigenvectors of mu a + nu a*
 * with |mu|^2 - |nu|^2 = 1, seen through the phase-space observable: the
 * overlap <z|beta; mu, nu>, the Q-density, the Cartesian marginals and the
 * angle density g(theta) = (1/pi) int_0^inf Q(r e^{i theta}) r dr.
 *
 * All quantities come from closed forms; no Fock-basis state is built.
 * With gamma = conj(mu) beta - nu conj(beta) and w = nu / mu,
 *
 *     Q(z) = exp(-|z - gamma|^2 - Re(w conj(z - gamma)^2)) / |mu|.
 */

#pragma once

#include <cmath>
#include <vector>

#include "normone/quadrature.hpp"
#include "normone/regions.hpp"
#include "normone/special.hpp"

namespace normone {

enum class Axis { X, Y };

class TCSParams {
  public:
    static TCSParams make(cplx beta, cplx mu, cplx nu) {
        if (std::abs(std::norm(mu) - std::norm(nu) - 1.0) > 1e-12)
            fail(ErrorCode::InvalidArgument, "TCS parameters need |mu|^2 - |nu|^2 = 1");
        return TCSParams(beta, mu, nu);
    }

    /// mu = 1 / sqrt(1 - |w|^2) (real), nu = w mu.
    static TCSParams from_w(cplx beta, cplx w) {
        if (!(std::abs(w) < 1.0)) fail(ErrorCode::InvalidArgument, "TCS needs |w| < 1");
        const double mu = 1.0 / std::sqrt(1.0 - std::norm(w));
        return TCSParams(beta, mu, w * mu);
    }

    static TCSParams coherent(cplx beta) { return TCSParams(beta, 1.0, 0.0); }

    [[nodiscard]] cplx beta() const noexcept { return beta_; }
    [[nodiscard]] cplx mu() const noexcept { return mu_; }
    [[nodiscard]] cplx nu() const noexcept { return nu_; }
    [[nodiscard]] cplx w() const { return nu_ / mu_; }
    [[nodiscard]] cplx gamma() const { return std::conj(mu_) * beta_ - nu_ * std::conj(beta_); }
    [[nodiscard]] double s() const { return std::abs(beta_); }
    [[nodiscard]] double phi() const { return std::arg(beta_); }
    [[nodiscard]] double theta_mu() const { return std::arg(mu_); }
    [[nodiscard]] double theta_nu() const { return std::arg(nu_); }

  private:
    TCSParams(cplx beta, cplx mu, cplx nu) : beta_(beta), mu_(mu), nu_(nu) {}
    cplx beta_, mu_, nu_;
};

/// <z | beta; mu, nu>, principal branch of sqrt(mu).
inline cplx tcs_overlap(const TCSParams &p, cplx z) {
    const cplx mu = p.mu(), nu = p.nu(), beta = p.beta();
    const cplx zb = std::conj(z);
    const cplx expo = -0.5 * std::norm(z) - 0.5 * std::norm(beta) - nu / (2.0 * mu) * zb * zb +
                      std::conj(nu) / (2.0 * mu) * beta * beta + zb * beta / mu;
    return std::exp(expo) / std::sqrt(mu);
}

inline double q_density(const TCSParams &p, cplx z) {
    const cplx d = z - p.gamma();
    const cplx db = std::conj(d);
    return std::exp(-std::norm(d) - (p.w() * db * db).real()) / std::abs(p.mu());
}

/// Precision c of the marginal Gaussian density sqrt(c/pi) exp(-c (x - centre)^2).
inline double marginal_precision(const TCSParams &p, Axis axis) {
    const cplx w = p.w();
    const double num = 1.0 - std::norm(w);
    return axis == Axis::X ? num / (1.0 - w.real()) : num / (1.0 + w.real());
}

inline double marginal_centre(const TCSParams &p, Axis axis) {
    return axis == Axis::X ? p.gamma().real() : p.gamma().imag();
}

inline double marginal_density(const TCSParams &p, Axis axis, double x) {
    const double c = marginal_precision(p, axis);
    const double u = x - marginal_centre(p, axis);
    return std::sqrt(c / pi) * std::exp(-c * u * u);
}

/// Probability that Re z (X axis) or Im z (Y axis) lands in the region.
inline double cartesian_marginal_prob(const TCSParams &p, Axis axis, const RealRegion &x) {
    const double rc = std::sqrt(marginal_precision(p, axis));
    const double centre = marginal_centre(p, axis);
    double prob = 0.0;
    for (const auto &i : x.intervals())
        prob += special::erf_mass(rc * (i.a - centre), rc * (i.b - centre));
    return prob;
}

/// (1 - Re w) / (2 (1 - |w|^2)) on X, (1 + Re w) / (2 (1 - |w|^2)) on Y.
inline double marginal_variance(const TCSParams &p, Axis axis) {
    return 0.5 / marginal_precision(p, axis);
}

inline double uncertainty_product(const TCSParams &p) {
    return marginal_variance(p, Axis::X) * marginal_variance(p, Axis::Y);
}

/**
 * g(theta) in closed form. Along the ray z = r e^{i theta} the exponent of Q
 * is -A r^2 + 2 B r - C, so
 *
 *     g = e^{-C} [1 + sqrt(pi) t erfcx(-t)] / (2 pi |mu| A),   t = B / sqrt(A),
 *
 * with A = 1 + |w| cos(2 theta + theta_mu - theta_nu) and
 * B = |beta| cos(theta + theta_mu - arg beta) / |mu|.
 */
inline double angle_density(const TCSParams &p, double theta) {
    const cplx u(std::cos(theta), std::sin(theta));
    const cplx ub = std::conj(u);
    const cplx gamma = p.gamma();
    const cplx gb = std::conj(gamma);
    const double a = 1.0 + (p.w() * ub * ub).real();
    const double b = (ub * p.beta() / p.mu()).real();
    const double c = std::norm(gamma) + (p.w() * gb * gb).real();
    const double t = b / std::sqrt(a);
    const double pre = 1.0 / (two_pi * std::abs(p.mu()) * a);
    const double sqrt_pi = std::sqrt(pi);
    if (t >= 0.0) {
        // erfcx(-t) = 2 e^{t^2} - erfcx(t); the growing part is combined with e^{-C}.
        return pre * (std::exp(-c) * (1.0 - sqrt_pi * t * special::erfcx(t)) +
                      2.0 * sqrt_pi * t * std::exp(t * t - c));
    }
    return pre * std::exp(-c) * special::one_minus_sqrtpi_x_erfcx(-t);
}

/// Mass of g over an arc set.
inline double angle_mass(const TCSParams &p, const ArcSet &x, double rel_tol = 1e-11) {
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = rel_tol;
    opt.max_intervals = 20000;
    double total = 0.0;
    for (const auto &arc : x.arcs())
        total += quad::integrate([&](double th) { return angle_density(p, th); }, arc.a, arc.b, opt).value;
    return total;
}

/// Angle where the squeezed vacuum density peaks (mod pi): the minimum of A.
inline double squeezed_peak_angle(double theta_mu, double theta_nu) {
    double a = 0.5 * (theta_nu - theta_mu) + 0.5 * pi;
    a = std::fmod(a, pi);
    if (a < 0.0) a += pi;
    return a;
}

struct ConcentrationRow {
    double parameter;  ///< s for the coherent family, |nu| for the squeezed one
    double total_mass; ///< int_0^{2pi} g
    double peak_mass;  ///< mass within the window around the (first) peak
    double second_peak_mass; ///< squeezed family: window around the peak + pi
};

/// Coherent family beta = s e^{i phi}: mass of g in (phi - window, phi + window).
inline std::vector<ConcentrationRow> coherent_concentration(double phi, const std::vector<double> &amplitudes,
                                                            double window) {
    std::vector<ConcentrationRow> rows;
    for (double s : amplitudes) {
        const auto p = TCSParams::coherent(std::polar(s, phi));
        const auto near = ArcSet::single(phi - window, phi + window);
        rows.push_back({s, angle_mass(p, near) + angle_mass(p, near.complement()),
                        angle_mass(p, near), 0.0});
    }
    return rows;
}

/// Squeezed vacua mu = sqrt(1 + |nu|^2) e^{i theta_mu}, nu = |nu| e^{i theta_nu}:
/// masses in windows around both predicted peaks.
inline std::vector<ConcentrationRow> squeezed_concentration(double theta_mu, double theta_nu,
                                                            const std::vector<double> &nu_abs,
                                                            double window) {
    std::vector<ConcentrationRow> rows;
    const double peak = squeezed_peak_angle(theta_mu, theta_nu);
    for (double n : nu_abs) {
        const auto p = TCSParams::make(0.0, std::polar(std::sqrt(1.0 + n * n), theta_mu),
                                       std::polar(n, theta_nu));
        const auto first = ArcSet::single(peak - window, peak + window);
        const auto second = first.shifted(pi);
        const double m1 = angle_mass(p, first);
        const double m2 = angle_mass(p, second);
        const auto rest = ArcSet::from_intervals({{peak + window, peak + pi - window},
                                                  {peak + pi + window, peak + two_pi - window}});
        rows.push_back({n, m1 + m2 + angle_mass(p, rest), m1, m2});
    }
    return rows;
}

} // namespace normone
