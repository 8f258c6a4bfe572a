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
 * Effects: self-adjoint operators O <= A <= I on a finite-dimensional space.
 *
 * An Effect is immutable once validated. It owns its matrix and a shared,
 * immutable spectral decomposition, so copies are cheap and every spectral
 * calculus operation (norm, square root, complement, min(l, 1-l), ...) reuses
 * the same eigenbasis. Eigenvalues that land in [-tol, 0) or (1, 1 + tol]
 * through roundoff are clamped into [0, 1] during validation.
 */

#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "normone/linalg.hpp"

namespace normone {

class Effect {
  public:
    /// Symmetrizes, checks the spectrum and clamps it into [0, 1].
    static Effect validate(const ComplexMatrix &m, const ToleranceConfig &cfg = {}) {
        if (m.rows() != m.cols())
            fail(ErrorCode::DimensionMismatch, "effect matrix is not square");
        if (m.rows() == 0)
            fail(ErrorCode::InvalidArgument, "effect matrix is empty");
        if (!m.allFinite())
            fail(ErrorCode::InvalidArgument, "effect matrix has non-finite entries");
        const double defect = hermiticity_defect(m);
        if (defect > cfg.hermiticity_tol)
            fail(ErrorCode::NotHermitian,
                 "max |a_ij - conj(a_ji)| = " + std::to_string(defect));

        ComplexMatrix h = hermitize(m);
        auto spec = decompose(h);
        if (spec.min() < -cfg.psd_tol || spec.max() > 1.0 + cfg.psd_tol)
            fail(ErrorCode::SpectrumOutOfRange,
                 "spectrum [" + std::to_string(spec.min()) + ", " +
                     std::to_string(spec.max()) + "] leaves [0, 1]");

        bool clamped = false;
        for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
            double &l = spec.eigenvalues(k);
            if (l < 0.0) { l = 0.0; clamped = true; }
            if (l > 1.0) { l = 1.0; clamped = true; }
        }
        if (clamped)
            h = hermitize(spec.reconstruct());
        return Effect(std::move(h), std::make_shared<const SpectralDecomposition>(std::move(spec)),
                      cfg.psd_tol);
    }

    /// Build from an orthonormal eigenbasis and eigenvalues in [0, 1], any order.
    static Effect from_spectrum(SpectralDecomposition spec, double tol = ToleranceConfig{}.psd_tol) {
        for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k)
            spec.eigenvalues(k) = std::clamp(spec.eigenvalues(k), 0.0, 1.0);
        spec.sort_ascending();
        ComplexMatrix m = hermitize(spec.reconstruct());
        return Effect(std::move(m), std::make_shared<const SpectralDecomposition>(std::move(spec)), tol);
    }

    static Effect zero(Eigen::Index dim) {
        return from_diagonal(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
    }
    static Effect identity(Eigen::Index dim) {
        return from_diagonal(std::vector<double>(static_cast<std::size_t>(dim), 1.0));
    }
    static Effect from_diagonal(std::span<const double> diag, const ToleranceConfig &cfg = {}) {
        const auto n = static_cast<Eigen::Index>(diag.size());
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            m(i, i) = diag[static_cast<std::size_t>(i)];
        return validate(m, cfg);
    }
    static Effect from_diagonal(std::initializer_list<double> diag, const ToleranceConfig &cfg = {}) {
        return from_diagonal(std::span<const double>(diag.begin(), diag.size()), cfg);
    }

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] const SpectralDecomposition &spectrum() const noexcept { return *spectrum_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] double tol() const noexcept { return tol_; }
    [[nodiscard]] double min_eigenvalue() const { return spectrum_->min(); }
    [[nodiscard]] double max_eigenvalue() const { return spectrum_->max(); }

    [[nodiscard]] bool is_zero() const { return max_eigenvalue() <= tol_; }
    [[nodiscard]] bool is_identity() const { return min_eigenvalue() >= 1.0 - tol_; }

  private:
    Effect(ComplexMatrix m, std::shared_ptr<const SpectralDecomposition> s, double tol)
        : matrix_(std::move(m)), spectrum_(std::move(s)), tol_(tol) {}

    ComplexMatrix matrix_;
    std::shared_ptr<const SpectralDecomposition> spectrum_;
    double tol_;
};

inline Effect validate_effect(const ComplexMatrix &m, const ToleranceConfig &cfg = {}) {
    return Effect::validate(m, cfg);
}

/// Spectral radius, which for a positive operator is the largest eigenvalue.
inline double operator_norm(const Effect &a) { return std::max(0.0, a.max_eigenvalue()); }

/// A' = I - A, sharing A's eigenbasis (eigenvalue order reversed).
inline Effect complement(const Effect &a) {
    const auto &s = a.spectrum();
    const Eigen::Index n = s.dim();
    SpectralDecomposition out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = 1.0 - s.eigenvalues(n - 1 - k);
        out.eigenvectors.col(k) = s.eigenvectors.col(n - 1 - k);
    }
    return Effect::from_spectrum(std::move(out), a.tol());
}

inline Effect sqrt_effect(const Effect &a) {
    SpectralDecomposition out = a.spectrum();
    for (Eigen::Index k = 0; k < out.dim(); ++k)
        out.eigenvalues(k) = std::sqrt(std::max(0.0, out.eigenvalues(k)));
    return Effect::from_spectrum(std::move(out), a.tol());
}

inline void require_same_dim(const Effect &a, const Effect &b) {
    if (a.dim() != b.dim())
        fail(ErrorCode::DimensionMismatch,
             "effects of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

/// A <= B in the operator order: min eig(B - A) >= -psd_tol.
inline bool psd_leq(const Effect &a, const Effect &b, const ToleranceConfig &cfg = {}) {
    require_same_dim(a, b);
    return min_eigenvalue(hermitize(b.matrix() - a.matrix())) >= -cfg.psd_tol;
}

inline void require_nontrivial(const Effect &a, const ToleranceConfig &cfg) {
    if (a.max_eigenvalue() <= cfg.psd_tol)
        fail(ErrorCode::TrivialEffect, "effect is the null effect");
    if (a.min_eigenvalue() >= 1.0 - cfg.psd_tol)
        fail(ErrorCode::TrivialEffect, "effect is the identity");
}

/// Regular: the spectrum reaches strictly below and strictly above 1/2.
inline bool is_regular(const Effect &a, const ToleranceConfig &cfg = {}) {
    require_nontrivial(a, cfg);
    return a.min_eigenvalue() < 0.5 - cfg.psd_tol && a.max_eigenvalue() > 0.5 + cfg.psd_tol;
}

/// A and I - A restricted to the complement of the 0- and 1-eigenspaces.
inline std::pair<Effect, Effect> reduced_operators(const Effect &a, const ToleranceConfig &cfg = {}) {
    const double snap = cfg.eigenvalue_snap(a.dim());
    auto strip = [snap](double l) { return l <= snap || l >= 1.0 - snap; };
    SpectralDecomposition lower = a.spectrum();
    SpectralDecomposition upper = a.spectrum();
    for (Eigen::Index k = 0; k < lower.dim(); ++k) {
        const double l = a.spectrum().eigenvalues(k);
        lower.eigenvalues(k) = strip(l) ? 0.0 : l;
        upper.eigenvalues(k) = strip(l) ? 0.0 : 1.0 - l;
    }
    return {Effect::from_spectrum(std::move(lower), a.tol()),
            Effect::from_spectrum(std::move(upper), a.tol())};
}

/**
 * The infimum A ^ A' in the effect order, when it exists.
 *
 * It exists exactly when the reduced operators are comparable, and then it is
 * the spectral integral of min(l, 1 - l). Comparability is decided with a PSD
 * test on their difference at cfg.psd_tol.
 */
inline std::optional<Effect> infimum_with_complement(const Effect &a, const ToleranceConfig &cfg = {}) {
    auto [ra, rc] = reduced_operators(a, cfg);
    if (!psd_leq(ra, rc, cfg) && !psd_leq(rc, ra, cfg))
        return std::nullopt;
    const double snap = cfg.eigenvalue_snap(a.dim());
    SpectralDecomposition out = a.spectrum();
    for (Eigen::Index k = 0; k < out.dim(); ++k) {
        const double l = out.eigenvalues(k);
        out.eigenvalues(k) = (l <= snap || l >= 1.0 - snap) ? 0.0 : std::min(l, 1.0 - l);
    }
    return Effect::from_spectrum(std::move(out), a.tol());
}

struct RankOneBound {
    double lambda;
    Effect bound; ///< lambda * P[phi]
};

/// Greatest lower bound of an invertible effect A and the projector P[phi]:
/// lambda P[phi] with lambda = <phi, A^{-1} phi>^{-1}.
inline RankOneBound glb_with_rank1(const Effect &a, const ComplexVector &phi,
                                   const ToleranceConfig &cfg = {}) {
    if (phi.size() != a.dim())
        fail(ErrorCode::DimensionMismatch, "vector length does not match effect dimension");
    if (std::abs(phi.norm() - 1.0) > 1e-10)
        fail(ErrorCode::InvalidArgument, "phi is not a unit vector");
    const auto &s = a.spectrum();
    if (s.min() <= cfg.psd_tol)
        fail(ErrorCode::NotInvertible,
             "smallest eigenvalue " + std::to_string(s.min()) + " is not above psd_tol");
    const ComplexVector coeffs = s.eigenvectors.adjoint() * phi;
    double quad = 0.0;
    for (Eigen::Index k = 0; k < s.dim(); ++k)
        quad += std::norm(coeffs(k)) / s.eigenvalues(k);
    const double lambda = 1.0 / quad;
    return {lambda, Effect::validate(lambda * projector(phi), cfg)};
}

inline bool is_lower_bound(const Effect &c, const Effect &a, const Effect &b,
                           const ToleranceConfig &cfg = {}) {
    require_same_dim(c, a);
    require_same_dim(c, b);
    return psd_leq(c, a, cfg) && psd_leq(c, b, cfg);
}

} // namespace normone
