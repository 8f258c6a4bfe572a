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

// Independent reference computations for the test suites. Nothing here
// calls the library's own eigen-based predicates or quadrature.

#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Smallest eigenvalue through the general complex eigensolver.
inline double min_eig(const Mat &m) {
    Eigen::ComplexEigenSolver<Mat> es(m);
    double best = INFINITY;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        best = std::min(best, es.eigenvalues()(i).real());
    return best;
}

inline double max_eig(const Mat &m) {
    Eigen::ComplexEigenSolver<Mat> es(m);
    double best = -INFINITY;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        best = std::max(best, es.eigenvalues()(i).real());
    return best;
}

inline bool psd(const Mat &m, double tol = 1e-9) { return min_eig(0.5 * (m + m.adjoint())) >= -tol; }

/// max{t : A - t P PSD} by bisection on [0, hi].
inline double bisect_rank_one(const Mat &a, const Eigen::VectorXcd &phi, double hi = 1.0, double tol = 1e-13) {
    const Mat p = phi * phi.adjoint();
    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (min_eig(a - mid * p) >= 0.0) lo = mid;
        else hi = mid;
    }
    return lo;
}

inline double integrate(const std::function<double(double)> &f, double a, double b, double tol = 1e-13) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

/// Tensor Gauss-Legendre rule on [a, b] x [c, d] with n x n panels of 20 points.
inline double integrate_2d(const std::function<double(double, double)> &f, double a, double b, double c,
                           double d, int panels = 8) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const double hx = (b - a) / panels;
    const double hy = (d - c) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i)
        for (int j = 0; j < panels; ++j) {
            const double x0 = a + i * hx, y0 = c + j * hy;
            total += G::integrate(
                [&](double x) {
                    return G::integrate([&](double y) { return f(x, y); }, y0, y0 + hy);
                },
                x0, x0 + hx);
        }
    return total;
}

} // namespace oracle
