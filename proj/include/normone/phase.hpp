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
 * Phase-shift covariant phase observables on the truncated number basis.
 *
 * A phase observable is fixed by the Gram data g_nm = <xi_n, xi_m> of a
 * sequence of unit vectors; its effect on an arc set X has entries
 *
 *     E(X)_nm = g_nm (1 / 2pi) int_X e^{i(n - m)x} dx.
 *
 * The canonical phase has g_nm = 1. The elementary phase observables differ
 * from the identity Gram matrix in a single off-diagonal pair g_st = z.
 */

#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "normone/arcs.hpp"
#include "normone/effect.hpp"
#include "normone/povm.hpp"
#include "normone/prolate.hpp"

namespace normone {

struct Truncation {
    Eigen::Index d;

    explicit Truncation(Eigen::Index dim) : d(dim) {
        if (dim < 2) fail(ErrorCode::InvalidArgument, "truncation needs d >= 2");
    }
};

class GramKernel {
  public:
    enum class Kind { Canonical, Elementary, Explicit };

    static GramKernel canonical() { return GramKernel(Kind::Canonical); }

    /// Identity Gram matrix except g_st = z, g_ts = conj(z).
    static GramKernel elementary(long s, long t, cplx z) {
        if (s < 0 || t < 0 || s == t)
            fail(ErrorCode::InvalidArgument, "elementary kernel needs distinct indices s, t >= 0");
        if (!(std::abs(z) <= 1.0))
            fail(ErrorCode::GramNotPSD, "elementary kernel needs |z| <= 1");
        GramKernel k(Kind::Elementary);
        k.s_ = s;
        k.t_ = t;
        k.z_ = z;
        return k;
    }

    /// Unit diagonal, Hermitian and PSD within 1e-10.
    static GramKernel explicit_matrix(const ComplexMatrix &g) {
        constexpr double tol = 1e-10;
        if (g.rows() != g.cols() || g.rows() == 0)
            fail(ErrorCode::DimensionMismatch, "Gram matrix must be square and nonempty");
        if (hermiticity_defect(g) > tol)
            fail(ErrorCode::GramNotPSD, "Gram matrix is not Hermitian");
        for (Eigen::Index i = 0; i < g.rows(); ++i)
            if (std::abs(g(i, i) - 1.0) > tol)
                fail(ErrorCode::GramNotPSD, "Gram matrix diagonal must be 1");
        if (min_eigenvalue(hermitize(g)) < -tol)
            fail(ErrorCode::GramNotPSD, "Gram matrix is not positive semidefinite");
        GramKernel k(Kind::Explicit);
        k.matrix_ = hermitize(g);
        return k;
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] long s() const noexcept { return s_; }
    [[nodiscard]] long t() const noexcept { return t_; }
    [[nodiscard]] cplx z() const noexcept { return z_; }

    [[nodiscard]] cplx operator()(Eigen::Index n, Eigen::Index m) const {
        switch (kind_) {
        case Kind::Canonical: return 1.0;
        case Kind::Elementary:
            if (n == m) return 1.0;
            if (n == s_ && m == t_) return z_;
            if (n == t_ && m == s_) return std::conj(z_);
            return 0.0;
        case Kind::Explicit: return matrix_(n, m);
        }
        return 0.0;
    }

    /// The d x d principal block.
    [[nodiscard]] ComplexMatrix block(Eigen::Index d) const {
        if (kind_ == Kind::Explicit && d > matrix_.rows())
            fail(ErrorCode::InvalidArgument, "truncation exceeds the explicit Gram matrix");
        ComplexMatrix g(d, d);
        for (Eigen::Index n = 0; n < d; ++n)
            for (Eigen::Index m = 0; m < d; ++m) g(n, m) = (*this)(n, m);
        return g;
    }

  private:
    explicit GramKernel(Kind k) : kind_(k) {}

    Kind kind_;
    long s_ = 0, t_ = 1;
    cplx z_ = 0.0;
    ComplexMatrix matrix_;
};

/// Raw entries g_nm * arc_fourier(X, n - m), before effect validation.
inline ComplexMatrix phase_matrix(const GramKernel &g, const ArcSet &x, Truncation tr) {
    const Eigen::Index d = tr.d;
    std::vector<cplx> coeff(static_cast<std::size_t>(2 * d - 1));
    for (Eigen::Index k = -(d - 1); k <= d - 1; ++k)
        coeff[static_cast<std::size_t>(k + d - 1)] = arc_fourier(x, k);
    const ComplexMatrix gram = g.block(d);
    ComplexMatrix m(d, d);
    for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index j = 0; j < d; ++j)
            m(n, j) = gram(n, j) * coeff[static_cast<std::size_t>(n - j + d - 1)];
    return m;
}

inline Effect phase_effect(const GramKernel &g, const ArcSet &x, Truncation tr,
                           const ToleranceConfig &cfg = {}) {
    return Effect::validate(phase_matrix(g, x, tr), cfg);
}

inline Effect canonical_phase_effect(const ArcSet &x, Eigen::Index d, const ToleranceConfig &cfg = {}) {
    return phase_effect(GramKernel::canonical(), x, Truncation(d), cfg);
}

/// {E(X_1), ..., E(X_n)} for a partition of the circle into arc sets.
inline PartitionPOVM phase_povm(const GramKernel &g, std::span<const ArcSet> cells, Truncation tr,
                                const ToleranceConfig &cfg = {}) {
    std::vector<Effect> effects;
    std::vector<Outcome> outcomes;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        effects.push_back(phase_effect(g, cells[i], tr, cfg));
        outcomes.push_back({"X" + std::to_string(i), std::nullopt});
    }
    return PartitionPOVM::make(std::move(outcomes), std::move(effects), cfg);
}

struct ElementaryEigenvalues {
    double e_minus;
    double e_zero;
    double e_plus;
};

/// e_0 = l(X)/2pi and e_pm = e_0 +- |z| |arc_fourier(X, s - t)|.
inline ElementaryEigenvalues elementary_eigenvalues(long s, long t, cplx z, const ArcSet &x) {
    if (s == t) fail(ErrorCode::InvalidArgument, "elementary eigenvalues need s != t");
    if (!(std::abs(z) > 0.0 && std::abs(z) < 1.0))
        fail(ErrorCode::InvalidArgument, "elementary eigenvalues need 0 < |z| < 1");
    const double e0 = x.length() / two_pi;
    const double c = std::abs(z) * std::abs(arc_fourier(x, s - t));
    return {e0 - c, e0, e0 + c};
}

/// max |E(X + x)_nm - e^{i(n - m)x} E(X)_nm| over the truncated block.
inline double covariance_check(const GramKernel &g, const ArcSet &x, double shift, Truncation tr) {
    const ComplexMatrix base = phase_matrix(g, x, tr);
    const ComplexMatrix moved = phase_matrix(g, x.shifted(shift), tr);
    double worst = 0.0;
    for (Eigen::Index n = 0; n < tr.d; ++n)
        for (Eigen::Index m = 0; m < tr.d; ++m) {
            const double k = static_cast<double>(n - m);
            const cplx phase(std::cos(k * shift), std::sin(k * shift));
            worst = std::max(worst, std::abs(moved(n, m) - phase * base(n, m)));
        }
    return worst;
}

struct NormScanRow {
    Eigen::Index d;
    double norm;          ///< 1 - 10^log10_deficit, rounded to double
    double log10_deficit; ///< log10(1 - norm); -inf when the norm is exactly 1
    bool extended;        ///< deficit from the extended-precision route
};

/**
 * Norms of truncated canonical phase effects.
 *
 * Single arcs use the extended-precision prolate route, so deficits far
 * below double resolution stay ordered; other sets use the double
 * eigensolver and report log10 of whatever deficit it resolves.
 */
inline std::vector<NormScanRow> canonical_norm_scan(const ArcSet &x, std::span<const Eigen::Index> dims) {
    if (!(x.length() > 0.0)) fail(ErrorCode::InvalidArgument, "arc set has zero length");
    std::vector<NormScanRow> rows;
    for (Eigen::Index d : dims) {
        Truncation tr(d);
        if (x.is_full()) {
            rows.push_back({d, 1.0, -std::numeric_limits<double>::infinity(), false});
            continue;
        }
        if (x.is_single_arc()) {
            const auto r = prolate::top_eigenvalue_deficit(d, x.length());
            rows.push_back({d, 1.0 - std::pow(10.0, r.log10_deficit), r.log10_deficit, true});
            continue;
        }
        const double norm = operator_norm(canonical_phase_effect(x, tr.d));
        const double deficit = 1.0 - norm;
        rows.push_back({d, norm,
                        deficit > 0.0 ? std::log10(deficit) : -std::numeric_limits<double>::infinity(),
                        false});
    }
    return rows;
}

struct SpectrumFill {
    double min_eigenvalue;
    double max_eigenvalue;
    double max_gap; ///< largest distance between consecutive eigenvalues
};

inline SpectrumFill canonical_spectrum_fill(const ArcSet &x, Eigen::Index d) {
    if (!(x.length() > 0.0)) fail(ErrorCode::InvalidArgument, "arc set has zero length");
    const RealVector ev = eigenvalues_only(hermitize(phase_matrix(GramKernel::canonical(), x, Truncation(d))));
    double gap = 0.0;
    for (Eigen::Index k = 1; k < ev.size(); ++k) gap = std::max(gap, ev(k) - ev(k - 1));
    return {std::clamp(ev(0), 0.0, 1.0), std::clamp(ev(ev.size() - 1), 0.0, 1.0), gap};
}

struct RegularityScan {
    int regular;
    int irregular;
};

/// Classifies E_el([a, a + l)) over an n_start x n_length grid of arcs with
/// 0 < l < 2pi, by comparing e_pm against 1/2.
inline RegularityScan elementary_regularity_scan(long s, long t, cplx z, int n_start, int n_length) {
    RegularityScan out{0, 0};
    for (int i = 0; i < n_start; ++i)
        for (int j = 1; j <= n_length; ++j) {
            const double a = two_pi * i / n_start;
            const double l = two_pi * j / (n_length + 1);
            const auto e = elementary_eigenvalues(s, t, z, ArcSet::single(a, a + l));
            if (e.e_minus < 0.5 && e.e_plus > 0.5)
                ++out.regular;
            else
                ++out.irregular;
        }
    return out;
}

} // namespace normone
