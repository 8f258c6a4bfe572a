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

// Walks through the norm-1 property on a few observables and prints what
// each one reports.

#include <cstdio>

#include "normone/normone.hpp"

using namespace normone;

int main() {
    // A projective measurement: every nonzero effect is a projection.
    rnd::Engine rng(7);
    const auto sharp = rnd::projective_povm(4, 3, rng);
    const auto a = Effect::from_diagonal({0.3, 0.9});
    const auto unsharp = PartitionPOVM::from_effects({a, complement(a)});
    std::printf("projective POVM: norm-1 %s, smallest nonzero norm %.6f\n",
                has_norm1_property(sharp) ? "yes" : "no", norm1_report(sharp).min_nonzero_norm);
    std::printf("unsharp POVM:    norm-1 %s, smallest nonzero norm %.6f\n",
                has_norm1_property(unsharp) ? "yes" : "no", norm1_report(unsharp).min_nonzero_norm);

    // Canonical phase on the upper half circle: the truncated norm creeps to 1.
    const auto half = ArcSet::single(0.0, pi);
    const std::vector<Eigen::Index> dims{8, 32, 128};
    for (const auto &row : canonical_norm_scan(half, dims))
        std::printf("canonical phase E([0, pi)) at d = %3ld: log10(1 - norm) = %.3f\n",
                    static_cast<long>(row.d), row.log10_deficit);

    // An elementary phase observable never reaches 1.
    const auto e = elementary_eigenvalues(0, 1, 0.5, half);
    std::printf("elementary phase E([0, pi)): spectrum {%.6f, %.6f, %.6f}\n", e.e_minus, e.e_zero, e.e_plus);

    // Coherent states along the bisector drive the angle margin to 1.
    for (const auto &row : angle_margin_norm1_probe(half, pi / 2, {1.0, 4.0, 16.0}))
        std::printf("angle margin, |alpha| = %4.1f: 1 - probability = %.3e\n", row.s, row.deficit);

    // The Cartesian margin of a short interval stays far from 1.
    const double x_norm = operator_norm(cartesian_margin_effect(RealRegion::interval(-0.4, 0.4), 64));
    std::printf("position margin of (-0.4, 0.4): norm %.6f\n", x_norm);

    // Fat Cantor set: E(C) has norm 1/2 although C has positive measure.
    const FatCantorModel cantor(24);
    std::printf("fat Cantor multiplication observable: ||E(C)|| = %.1f\n",
                require_resolved(cantor_effect_norm(cantor, BorelDescriptor::cantor())));
    return 0;
}
