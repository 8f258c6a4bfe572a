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

#include <gtest/gtest.h>

#include <filesystem>

#include "normone/io.hpp"
#include "normone/phase.hpp"
#include "normone/phase_space.hpp"
#include "normone/povm.hpp"
#include "normone/random.hpp"
#include "support/oracles.hpp"

using namespace normone;

namespace {

PartitionPOVM two_point(const ComplexVector &v, double x0 = 0.0, double x1 = 1.0) {
    const auto p = Effect::validate(projector(v));
    return PartitionPOVM::make({{"a", x0}, {"b", x1}}, {p, complement(p)});
}

/// {A, I - A} with A = l P[phi] + (1 - l) P[psi}, phi orthogonal to psi.
PartitionPOVM mixed_pair(double l) {
    const auto a = Effect::from_diagonal({l, 1.0 - l});
    return PartitionPOVM::from_effects({a, complement(a)});
}

PartitionPOVM elementary_partition(Eigen::Index d = 8) {
    const auto g = GramKernel::elementary(0, 1, 0.5);
    const std::vector<ArcSet> cells{ArcSet::single(0, pi), ArcSet::single(pi, two_pi)};
    return phase_povm(g, cells, Truncation(d));
}

} // namespace

TEST(PartitionPOVM, RejectsEffectsNotSummingToIdentity) {
    EXPECT_THROW(PartitionPOVM::from_effects({Effect::from_diagonal({0.5, 0.5}), Effect::from_diagonal({0.4, 0.5})}),
                 Error);
    EXPECT_THROW(PartitionPOVM::from_effects({Effect::zero(2), Effect::identity(3)}), Error);
}

TEST(AlgebraEffect, EmptyAllAndComplement) {
    rnd::Engine rng(8);
    const auto p = rnd::generic_povm(3, 4, rng);
    EXPECT_LE(algebra_effect(p, std::vector<std::size_t>{}).matrix().cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((algebra_effect(p, std::vector<std::size_t>{0, 1, 2, 3}).matrix() - ComplexMatrix::Identity(3, 3))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);
    const auto sub = algebra_effect(p, std::vector<std::size_t>{0, 2});
    const auto rest = algebra_effect(p, std::vector<std::size_t>{1, 3});
    EXPECT_LE((complement(sub).matrix() - rest.matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(HasNorm1, Examples) {
    rnd::Engine rng(12);
    EXPECT_TRUE(has_norm1_property(two_point(rnd::unit_vector(3, rng))));
    EXPECT_FALSE(has_norm1_property(elementary_partition()));
    const auto half = Effect::from_diagonal({0.5, 0.5});
    EXPECT_FALSE(has_norm1_property(PartitionPOVM::from_effects({half, half})));
}

TEST(HasNorm1, ReportsWorstNorm) {
    const auto r = norm1_report(elementary_partition());
    EXPECT_FALSE(r.exact_verdict);
    EXPECT_NEAR(r.min_nonzero_norm, 0.5 + 0.5 / pi, 1e-12);
}

TEST(HasNorm1, TooManyOutcomes) {
    std::vector<Effect> effects(21, Effect::from_diagonal({1.0 / 21, 1.0 / 21}));
    try {
        has_norm1_property(PartitionPOVM::from_effects(effects));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::TooManyOutcomes);
    }
}

TEST(EpsilonDecider, Examples) {
    rnd::Engine rng(4);
    const ComplexVector phi = rnd::unit_vector(3, rng);
    const auto state = epsilon_decider(Effect::validate(projector(phi)), 0.01);
    EXPECT_NEAR(state.expectation(projector(phi)), 1.0, 1e-12);

    const auto e = phase_effect(GramKernel::elementary(0, 1, 0.5), ArcSet::single(0, pi), Truncation(8));
    const double e_plus = 0.5 + 0.5 / pi;
    try {
        epsilon_decider(e, 0.9 * (1.0 - e_plus));
        FAIL();
    } catch (const NotDecidableError &err) {
        EXPECT_NEAR(err.norm(), e_plus, 1e-12);
    }

    const auto can = canonical_phase_effect(ArcSet::single(0, pi), 128);
    const auto s = epsilon_decider(can, 0.1);
    EXPECT_GE(s.expectation(can.matrix()), 0.9);
}

TEST(EpsilonDecider, InvalidInputs) {
    EXPECT_THROW(epsilon_decider(Effect::zero(2), 0.1), Error);
    EXPECT_THROW(epsilon_decider(Effect::identity(2), 0.0), Error);
    EXPECT_THROW(epsilon_decider(Effect::identity(2), 1.0), Error);
}

TEST(EpsilonDecider, EquivalentToNorm1OnRandomPartitions) {
    rnd::Engine rng(77);
    for (int i = 0; i < 40; ++i) {
        const auto p = i % 2 ? rnd::projective_povm(4, 3, rng) : rnd::generic_povm(3, 3, rng);
        bool decidable = true;
        for_each_algebra_spectrum(p, [&](std::uint32_t mask, const RealVector &ev) {
            if (ev(ev.size() - 1) <= 1e-9) return;
            const auto a = algebra_effect(p, mask);
            for (double eps : {0.1, 0.01}) {
                try {
                    const auto phi = epsilon_decider(a, eps);
                    EXPECT_NEAR(phi.expectation(a.matrix()), operator_norm(a), 1e-12);
                } catch (const NotDecidableError &) {
                    decidable = false;
                }
            }
        });
        EXPECT_EQ(decidable, has_norm1_property(p));
    }
}

TEST(IsRegularPovm, Examples) {
    rnd::Engine rng(19);
    EXPECT_TRUE(is_regular_povm(two_point(rnd::unit_vector(2, rng))));
    const auto counter = mixed_pair(0.3);
    EXPECT_TRUE(is_regular_povm(counter));
    EXPECT_FALSE(has_norm1_property(counter));
    EXPECT_NEAR(operator_norm(counter.effect(0)), 0.7, 1e-15);
    EXPECT_FALSE(is_regular_povm(PartitionPOVM::from_effects(
        {Effect::from_diagonal({0.25, 0.25}), Effect::from_diagonal({0.75, 0.75})})));
}

TEST(Norm1ImpliesRegular, ExamplesAndRandomSweep) {
    rnd::Engine rng(101);
    EXPECT_TRUE(norm1_implies_regular_check(two_point(rnd::unit_vector(3, rng))));
    EXPECT_TRUE(norm1_implies_regular_check(mixed_pair(0.3)));
    EXPECT_TRUE(norm1_implies_regular_check(elementary_partition()));
    int norm1_seen = 0;
    for (int i = 0; i < 100; ++i) {
        const auto p = i % 2 ? rnd::projective_povm(2 + i % 4, 1 + i % 3, rng)
                             : rnd::generic_povm(2 + i % 3, 2 + i % 3, rng);
        EXPECT_TRUE(norm1_implies_regular_check(p));
        norm1_seen += has_norm1_property(p);
    }
    EXPECT_GT(norm1_seen, 0);
}

TEST(SpectrumEndpoints, Examples) {
    rnd::Engine rng(29);
    const ComplexMatrix u = rnd::unitary(3, rng);
    EXPECT_TRUE(spectrum_endpoints_check(Effect::validate(projector(u.col(1)))));
    EXPECT_TRUE(spectrum_endpoints_check(Effect::from_diagonal({0.0, 1.0, 0.5})));
    EXPECT_FALSE(spectrum_endpoints_check(Effect::from_diagonal({0.1, 1.0})));
    EXPECT_THROW(spectrum_endpoints_check(Effect::identity(2)), Error);
    const auto can = canonical_phase_effect(ArcSet::single(0, pi), 256);
    EXPECT_TRUE(spectrum_endpoints_check(can, EndpointMode::Asymptotic));
}

TEST(SpectrumEndpoints, HoldsForNorm1Algebras) {
    rnd::Engine rng(31);
    for (int i = 0; i < 30; ++i) {
        const auto p = rnd::projective_povm(4, 3, rng);
        ASSERT_TRUE(has_norm1_property(p));
        for_each_algebra_spectrum(p, [&](std::uint32_t mask, const RealVector &ev) {
            const bool trivial = ev(ev.size() - 1) <= 1e-9 || ev(0) >= 1 - 1e-9;
            if (trivial) return;
            const auto a = algebra_effect(p, mask);
            if (operator_norm(complement(a)) < 1 - 1e-9) return;
            EXPECT_TRUE(spectrum_endpoints_check(a));
        });
    }
}

TEST(Variance, Examples) {
    const ComplexVector e0 = ComplexVector::Unit(2, 0);
    EXPECT_NEAR(variance(two_point(e0), StateVector::from(e0)), 0.0, 1e-15);
    const std::vector<double> x{-1, 0, 1}, p{1.0 / 3, 1.0 / 3, 1.0 / 3};
    EXPECT_NEAR(variance(x, p), 2.0 / 3.0, 1e-15);
    const std::vector<double> point{0, 1, 0};
    EXPECT_EQ(variance(x, point), 0.0);
}

TEST(Variance, NonNegativeOnRandomStates) {
    rnd::Engine rng(53);
    for (int i = 0; i < 50; ++i) {
        auto p = rnd::generic_povm(3, 4, rng);
        std::vector<Outcome> o;
        for (std::size_t k = 0; k < p.size(); ++k) o.push_back({"x", static_cast<double>(k) - 1.5});
        const auto valued = PartitionPOVM::make(o, p.effects());
        EXPECT_GE(variance(valued, StateVector::from(rnd::unit_vector(3, rng))), 0.0);
    }
}

TEST(Variance, RequiresValues) {
    const auto half = Effect::from_diagonal({0.5, 0.5});
    EXPECT_THROW(variance(PartitionPOVM::from_effects({half, half}), StateVector::from(ComplexVector::Unit(2, 0))),
                 Error);
}

TEST(LuedersCoarseGraining, UnitalAndFixesCommutingB) {
    rnd::Engine rng(61);
    const auto c = rnd::generic_povm(3, 3, rng);
    EXPECT_LE((lueders_coarse_graining(c, Effect::identity(3)).matrix() - ComplexMatrix::Identity(3, 3))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);

    const auto proj = PartitionPOVM::from_effects({Effect::from_diagonal({1, 0, 0}), Effect::from_diagonal({0, 1, 1})});
    const auto b = Effect::from_diagonal({0.2, 0.5, 0.9});
    EXPECT_LE((lueders_coarse_graining(proj, b).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LuedersCoarseGraining, CanonicalHalfCirclesAgainstDenseArithmetic) {
    const Eigen::Index d = 64;
    const std::vector<ArcSet> cells{ArcSet::single(0, pi), ArcSet::single(pi, two_pi)};
    const auto c = phase_povm(GramKernel::canonical(), cells, Truncation(d));
    std::vector<double> ramp;
    for (Eigen::Index k = 0; k < d; ++k) ramp.push_back(static_cast<double>(k) / (d - 1));
    const auto b = Effect::from_diagonal(ramp);
    ComplexMatrix expected = ComplexMatrix::Zero(d, d);
    for (const auto &a : c.effects()) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix());
        const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        const ComplexMatrix root = es.eigenvectors() * lam.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
        expected += root * b.matrix() * root;
    }
    EXPECT_LE((lueders_coarse_graining(c, b).matrix() - expected).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LuedersCoarseGraining, OrderPreserving) {
    rnd::Engine rng(67);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const auto c = rnd::generic_povm(3, 3, rng);
        const auto b2 = rnd::effect(3, rng);
        const auto b1 = Effect::validate(unit(rng) * b2.matrix());
        const auto u1 = lueders_coarse_graining(c, b1);
        const auto u2 = lueders_coarse_graining(c, b2);
        EXPECT_TRUE(oracle::psd(u2.matrix() - u1.matrix()));
    }
}

TEST(CoarseGrainingLimit, ProjectiveGapIsZero) {
    const auto proj = PartitionPOVM::from_effects({Effect::from_diagonal({1, 1, 0}), Effect::from_diagonal({0, 0, 1})});
    rnd::Engine rng(71);
    const auto b = rnd::effect(3, rng);
    std::vector<StateVector> states;
    for (int k = 0; k < 4; ++k) {
        ComplexVector v = ComplexVector::Zero(3);
        v(0) = std::cos(0.3 * k);
        v(1) = std::sin(0.3 * k);
        states.push_back(StateVector::from(v));
    }
    for (const auto &step : coarse_graining_limit_check(proj, b, states, 0)) EXPECT_LE(step.gap, 1e-14);
}

TEST(CoarseGrainingLimit, CanonicalPhaseWithCoherentStates) {
    const Eigen::Index d = 96;
    const std::vector<ArcSet> cells{ArcSet::single(0, pi), ArcSet::single(pi, two_pi)};
    const auto c = phase_povm(GramKernel::canonical(), cells, Truncation(d));
    std::vector<double> ramp;
    for (Eigen::Index k = 0; k < d; ++k) ramp.push_back(static_cast<double>(k) / (d - 1));
    const auto b = Effect::from_diagonal(ramp);
    std::vector<StateVector> states;
    for (double s : {0.5, 1.0, 2.0, 3.0, 4.0, 5.0})
        states.push_back(StateVector::normalized(coherent_state(std::polar(s, pi / 2), d)));
    const auto steps = coarse_graining_limit_check(c, b, states, 0);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        EXPECT_LE(steps[k].gap, steps[k].bound + 1e-12);
        if (k > 0) EXPECT_LT(steps[k].gap, steps[k - 1].gap);
    }
    EXPECT_LT(steps.back().gap, 1e-2);
}

TEST(CoarseGrainingLimit, RejectsNonConcentratingSequence) {
    const auto proj = PartitionPOVM::from_effects({Effect::from_diagonal({1, 0}), Effect::from_diagonal({0, 1})});
    const std::vector<StateVector> states{StateVector::from(ComplexVector::Unit(2, 0)),
                                          StateVector::from(ComplexVector::Unit(2, 1))};
    try {
        coarse_graining_limit_check(proj, Effect::identity(2), states, 0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::SequenceNotConcentrating);
    }
}

TEST(PovmDirectory, RoundTrip) {
    rnd::Engine rng(83);
    auto p = rnd::generic_povm(3, 3, rng);
    std::vector<Outcome> o{{"low", -1.0}, {"mid", std::nullopt}, {"high", 2.5}};
    const auto valued = PartitionPOVM::make(o, p.effects());
    const auto dir = std::filesystem::temp_directory_path() / "normone_povm_roundtrip";
    std::filesystem::remove_all(dir);
    io::write_povm_dir(dir, valued);
    const auto back = io::read_povm_dir(dir);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back.outcome(0).label, "low");
    EXPECT_FALSE(back.outcome(1).value.has_value());
    EXPECT_DOUBLE_EQ(*back.outcome(2).value, 2.5);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_LE((back.effect(i).matrix() - valued.effect(i).matrix()).cwiseAbs().maxCoeff(), 1e-11);
    std::filesystem::remove_all(dir);
}

namespace {

/// Rank-one projective POVM in a random basis with the given outcome values.
PartitionPOVM valued_projective(const std::vector<double> &values, rnd::Engine &rng) {
    const auto d = static_cast<Eigen::Index>(values.size());
    const ComplexMatrix u = rnd::unitary(d, rng);
    std::vector<Outcome> o;
    std::vector<Effect> e;
    for (Eigen::Index k = 0; k < d; ++k) {
        o.push_back({"x" + std::to_string(k), values[static_cast<std::size_t>(k)]});
        e.push_back(Effect::validate(projector(u.col(k))));
    }
    return PartitionPOVM::make(o, e);
}

} // namespace

TEST(VarianceWitness, BoundAndDecreaseOnProjectiveModel) {
    rnd::Engine rng(97);
    const auto p = valued_projective({-2.0, -1.0, -0.05, 0.0, 0.04, 1.0, 2.0}, rng);
    double previous = INFINITY;
    for (double eta : {0.1, 0.01, 0.001}) {
        const auto w = variance_witness(p, eta);
        EXPECT_DOUBLE_EQ(w.centre, 0.0);
        EXPECT_GE(w.probability, 1.0 - eta);
        EXPECT_LE(w.variance, w.bound);
        EXPECT_NEAR(w.bound, 15.0 * eta * 8.0, 1e-12);
        EXPECT_LE(w.variance, previous);
        previous = w.variance;
    }
    EXPECT_GT(variance_witness(p, 0.1).variance, variance_witness(p, 0.01).variance);
}

TEST(VarianceWitness, RejectsUnsharpModel) {
    const auto a = Effect::from_diagonal({0.3, 0.7});
    const auto p = PartitionPOVM::make({{"a", -1.0}, {"b", 1.0}}, {a, complement(a)});
    EXPECT_THROW(variance_witness(p, 0.1), NotDecidableError);
}
