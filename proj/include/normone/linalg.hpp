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
 * Dense complex linear algebra used throughout: matrix aliases, tolerance
 * configuration and the Hermitian spectral decomposition that backs every
 * spectral-calculus operation on effects.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "normone/error.hpp"

namespace normone {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

struct ToleranceConfig {
    double hermiticity_tol = 1e-9;
    double psd_tol = 1e-9;
    double spectral_rtol = 1e-12;

    /// Distance below which an eigenvalue is treated as exactly 0 or 1.
    [[nodiscard]] double eigenvalue_snap(Eigen::Index dim) const {
        return spectral_rtol * static_cast<double>(std::max<Eigen::Index>(dim, 1));
    }
};

/// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    [[nodiscard]] Eigen::Index dim() const { return eigenvalues.size(); }
    [[nodiscard]] double min() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
    [[nodiscard]] double max() const {
        return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0;
    }

    /// f(A) = sum_k f(lambda_k) v_k v_k^*.
    template <class F>
    [[nodiscard]] ComplexMatrix apply(F &&f) const {
        RealVector mapped(eigenvalues.size());
        for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
            mapped(k) = f(eigenvalues(k));
        return eigenvectors * mapped.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
    }

    [[nodiscard]] ComplexMatrix reconstruct() const {
        return apply([](double x) { return x; });
    }

    /// Reorders eigenpairs so eigenvalues ascend (after a non-monotone map).
    void sort_ascending() {
        std::vector<Eigen::Index> order(static_cast<std::size_t>(dim()));
        for (Eigen::Index k = 0; k < dim(); ++k) order[static_cast<std::size_t>(k)] = k;
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
            return eigenvalues(i) < eigenvalues(j);
        });
        RealVector vals(dim());
        ComplexMatrix vecs(dim(), dim());
        for (std::size_t k = 0; k < order.size(); ++k) {
            vals(static_cast<Eigen::Index>(k)) = eigenvalues(order[k]);
            vecs.col(static_cast<Eigen::Index>(k)) = eigenvectors.col(order[k]);
        }
        eigenvalues = std::move(vals);
        eigenvectors = std::move(vecs);
    }
};

[[nodiscard]] inline ComplexMatrix hermitize(const ComplexMatrix &m) {
    return (m + m.adjoint()) * 0.5;
}

[[nodiscard]] inline double max_abs(const ComplexMatrix &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

/// max |a_ij - conj(a_ji)|
[[nodiscard]] inline double hermiticity_defect(const ComplexMatrix &m) {
    return max_abs(m - m.adjoint());
}

[[nodiscard]] inline SpectralDecomposition decompose(const ComplexMatrix &hermitian) {
    if (hermitian.rows() != hermitian.cols())
        fail(ErrorCode::DimensionMismatch, "matrix is not square");
    if (!hermitian.allFinite())
        fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::EigenNonConvergence,
             "Hermitian eigensolver did not converge (dim " +
                 std::to_string(hermitian.rows()) + ")");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

[[nodiscard]] inline RealVector eigenvalues_only(const ComplexMatrix &hermitian) {
    if (hermitian.rows() != hermitian.cols())
        fail(ErrorCode::DimensionMismatch, "matrix is not square");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::EigenNonConvergence, "Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

[[nodiscard]] inline double min_eigenvalue(const ComplexMatrix &hermitian) {
    auto ev = eigenvalues_only(hermitian);
    return ev.size() ? ev(0) : 0.0;
}

/// Rank-one projector |phi><phi| (phi is used as given, not normalized).
[[nodiscard]] inline ComplexMatrix projector(const ComplexVector &phi) {
    return phi * phi.adjoint();
}

} // namespace normone
