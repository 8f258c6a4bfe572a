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
 * Seeded generators for randomized sweeps: Haar unitaries, effects with
 * prescribed spectra, unit vectors, POVMs and arc sets.
 */

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "normone/arcs.hpp"
#include "normone/povm.hpp"

namespace normone::rnd {

using Engine = std::mt19937_64;

inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Engine &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with R's phases removed.
inline ComplexMatrix unitary(Eigen::Index d, Engine &rng) {
    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(d, d, rng));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

inline ComplexVector unit_vector(Eigen::Index d, Engine &rng) {
    ComplexVector v = ginibre(d, 1, rng).col(0);
    return v / v.norm();
}

/// U diag(spectrum) U* for a Haar U.
inline Effect effect_with_spectrum(const std::vector<double> &spectrum, Engine &rng) {
    const auto d = static_cast<Eigen::Index>(spectrum.size());
    const ComplexMatrix u = unitary(d, rng);
    RealVector l(d);
    for (Eigen::Index k = 0; k < d; ++k) l(k) = spectrum[static_cast<std::size_t>(k)];
    return Effect::from_spectrum({l, u});
}

inline Effect effect(Eigen::Index d, Engine &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> s(static_cast<std::size_t>(d));
    for (auto &x : s) x = unit(rng);
    return effect_with_spectrum(s, rng);
}

/// Rank-partitioned projective measurement in a random basis.
inline PartitionPOVM projective_povm(Eigen::Index d, std::size_t outcomes, Engine &rng) {
    if (outcomes == 0 || static_cast<Eigen::Index>(outcomes) > d)
        fail(ErrorCode::InvalidArgument, "need 1 <= outcomes <= d");
    const ComplexMatrix u = unitary(d, rng);
    std::vector<ComplexMatrix> parts(outcomes, ComplexMatrix::Zero(d, d));
    for (Eigen::Index j = 0; j < d; ++j) {
        const std::size_t slot = j < static_cast<Eigen::Index>(outcomes)
                                     ? static_cast<std::size_t>(j)
                                     : std::uniform_int_distribution<std::size_t>(0, outcomes - 1)(rng);
        parts[slot] += projector(u.col(j));
    }
    std::vector<Effect> effects;
    for (const auto &p : parts) effects.push_back(Effect::validate(p));
    return PartitionPOVM::from_effects(std::move(effects));
}

/// A_i = S^{-1/2} B_i S^{-1/2} with B_i = G_i G_i* Wishart and S = sum B_i.
inline PartitionPOVM generic_povm(Eigen::Index d, std::size_t outcomes, Engine &rng) {
    std::vector<ComplexMatrix> b;
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    std::uniform_int_distribution<Eigen::Index> rank(1, d);
    for (std::size_t i = 0; i < outcomes; ++i) {
        const ComplexMatrix g = ginibre(d, rank(rng), rng);
        b.push_back(g * g.adjoint());
        s += b.back();
    }
    const auto spec = decompose(hermitize(s));
    const ComplexMatrix inv_root = spec.apply([](double l) { return 1.0 / std::sqrt(l); });
    std::vector<Effect> effects;
    for (const auto &bi : b) effects.push_back(Effect::validate(hermitize(inv_root * bi * inv_root)));
    return PartitionPOVM::from_effects(std::move(effects));
}

/// Up to max_arcs arcs with uniform endpoints; never empty, never full.
inline ArcSet arc_set(Engine &rng, int max_arcs = 3) {
    std::uniform_real_distribution<double> ang(0.0, two_pi);
    std::uniform_int_distribution<int> count(1, max_arcs);
    while (true) {
        const int n = count(rng);
        std::vector<double> pts;
        for (int i = 0; i < 2 * n; ++i) pts.push_back(ang(rng));
        std::sort(pts.begin(), pts.end());
        std::vector<std::pair<double, double>> iv;
        for (int i = 0; i < n; ++i) iv.emplace_back(pts[2 * i], pts[2 * i + 1]);
        ArcSet x = ArcSet::from_intervals(iv);
        if (x.length() > 1e-3 && x.length() < two_pi - 1e-3) return x;
    }
}

} // namespace normone::rnd
