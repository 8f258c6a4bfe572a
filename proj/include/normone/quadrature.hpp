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
 * Globally adaptive 7/15-point Gauss-Kronrod quadrature on finite intervals.
 */

#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "normone/error.hpp"

namespace normone::quad {

// Kronrod abscissae (positive half, descending) and weights; the Gauss
// points are the odd-indexed abscissae plus the centre.
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

/// One panel: 15 nodes with Kronrod weights and 7-point Gauss weights
/// (zero where the node is not a Gauss node).
struct PanelRule {
    std::array<double, 15> x{};
    std::array<double, 15> wk{};
    std::array<double, 15> wg{};
};

inline PanelRule panel_rule(double a, double b) {
    PanelRule r;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    for (int j = 0; j < 7; ++j) {
        const double gw = (j % 2 == 1) ? gauss_w[static_cast<std::size_t>(j / 2)] : 0.0;
        r.x[static_cast<std::size_t>(2 * j)] = c - h * kronrod_x[static_cast<std::size_t>(j)];
        r.x[static_cast<std::size_t>(2 * j + 1)] = c + h * kronrod_x[static_cast<std::size_t>(j)];
        r.wk[static_cast<std::size_t>(2 * j)] = r.wk[static_cast<std::size_t>(2 * j + 1)] =
            h * kronrod_w[static_cast<std::size_t>(j)];
        r.wg[static_cast<std::size_t>(2 * j)] = r.wg[static_cast<std::size_t>(2 * j + 1)] = h * gw;
    }
    r.x[14] = c;
    r.wk[14] = h * kronrod_w[7];
    r.wg[14] = h * gauss_w[3];
    return r;
}

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

struct Result {
    double value;
    double error;
    int intervals;
};

namespace detail {
struct Segment {
    double a, b, value, error;
    bool operator<(const Segment &o) const { return error < o.error; }
};

template <class F>
Segment gk15(F &f, double a, double b) {
    const PanelRule r = panel_rule(a, b);
    double k = 0.0, g = 0.0;
    for (std::size_t i = 0; i < 15; ++i) {
        const double fx = f(r.x[i]);
        k += r.wk[i] * fx;
        g += r.wg[i] * fx;
    }
    return {a, b, k, std::abs(k - g)};
}
} // namespace detail

/**
 * Integrates f over [a, b], bisecting the worst segment until the summed
 * error estimate is below max(abs_tol, rel_tol * |I|). Throws
 * QuadratureFailure if the interval budget runs out first.
 */
template <class F>
Result integrate(F &&f, double a, double b, const Options &opt = {}) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        fail(ErrorCode::InvalidArgument, "quadrature limits must be finite");
    if (a == b) return {0.0, 0.0, 0};
    const double sign = b < a ? -1.0 : 1.0;
    if (b < a) std::swap(a, b);

    std::priority_queue<detail::Segment> heap;
    heap.push(detail::gk15(f, a, b));
    double total = heap.top().value;
    double error = heap.top().error;
    int count = 1;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (count >= opt.max_intervals)
            fail(ErrorCode::QuadratureFailure,
                 "no convergence on [" + std::to_string(a) + ", " + std::to_string(b) +
                     "], error estimate " + std::to_string(error));
        const detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            fail(ErrorCode::QuadratureFailure, "segment cannot be bisected further");
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Recompute the sum from the segments to shed accumulated updates.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(total))
        fail(ErrorCode::QuadratureFailure, "integrand produced a non-finite value");
    return {sign * total, error, count};
}

/// Integral split at the given interior breakpoints (sorted, inside [a, b]).
template <class F>
Result integrate(F &&f, const std::vector<double> &points, const Options &opt = {}) {
    Result out{0.0, 0.0, 0};
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto r = integrate(f, points[i], points[i + 1], opt);
        out.value += r.value;
        out.error += r.error;
        out.intervals += r.intervals;
    }
    return out;
}

} // namespace normone::quad
