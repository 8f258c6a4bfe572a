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
 * Finite-partition POVMs and the predicates evaluated over the finite
 * algebra they generate: norm-1 property, epsilon-decidability, regularity,
 * the variance functional and the Lueders coarse-graining map.
 *
 * The algebra generated by an n-outcome partition has 2^n elements, one per
 * subset of outcomes; predicates enumerate all of them, so n is capped at 20.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "normone/effect.hpp"

namespace normone {

inline constexpr std::size_t max_enumerated_outcomes = 20;

class StateVector {
  public:
    /// Requires ||v|| = 1 within 1e-12.
    static StateVector from(ComplexVector v) {
        if (v.size() == 0)
            fail(ErrorCode::InvalidArgument, "state vector is empty");
        if (std::abs(v.norm() - 1.0) > 1e-12)
            fail(ErrorCode::InvalidArgument,
                 "state vector norm " + std::to_string(v.norm()) + " is not 1");
        return StateVector(std::move(v));
    }
    static StateVector normalized(ComplexVector v) {
        const double n = v.norm();
        if (!(n > 0.0))
            fail(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
        return StateVector(v / n);
    }

    [[nodiscard]] const ComplexVector &amplitudes() const noexcept { return v_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return v_.size(); }

    /// <phi, M phi>, real part (M is Hermitian in every caller).
    [[nodiscard]] double expectation(const ComplexMatrix &m) const {
        return v_.dot(m * v_).real();
    }

  private:
    explicit StateVector(ComplexVector v) : v_(std::move(v)) {}
    ComplexVector v_;
};

struct Outcome {
    std::string label;
    std::optional<double> value;
};

class PartitionPOVM {
  public:
    static PartitionPOVM make(std::vector<Outcome> outcomes, std::vector<Effect> effects,
                              const ToleranceConfig &cfg = {}) {
        if (effects.empty())
            fail(ErrorCode::InvalidArgument, "a POVM needs at least one outcome");
        if (outcomes.size() != effects.size())
            fail(ErrorCode::InvalidArgument, "label count does not match effect count");
        const Eigen::Index d = effects.front().dim();
        ComplexMatrix total = ComplexMatrix::Zero(d, d);
        for (const auto &e : effects) {
            if (e.dim() != d)
                fail(ErrorCode::DimensionMismatch, "POVM effects differ in dimension");
            total += e.matrix();
        }
        total -= ComplexMatrix::Identity(d, d);
        const auto ev = eigenvalues_only(hermitize(total));
        const double defect = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        if (defect > cfg.psd_tol)
            fail(ErrorCode::InvalidArgument,
                 "effects do not sum to the identity (defect " + std::to_string(defect) + ")");
        return PartitionPOVM(std::move(outcomes), std::move(effects));
    }

    /// Unvalued outcomes labelled "0", "1", ...
    static PartitionPOVM from_effects(std::vector<Effect> effects, const ToleranceConfig &cfg = {}) {
        std::vector<Outcome> outcomes;
        for (std::size_t i = 0; i < effects.size(); ++i)
            outcomes.push_back({std::to_string(i), std::nullopt});
        return make(std::move(outcomes), std::move(effects), cfg);
    }

    [[nodiscard]] std::size_t size() const noexcept { return effects_.size(); }
    [[nodiscard]] Eigen::Index dim() const { return effects_.front().dim(); }
    [[nodiscard]] const Effect &effect(std::size_t i) const { return effects_.at(i); }
    [[nodiscard]] const std::vector<Effect> &effects() const noexcept { return effects_; }
    [[nodiscard]] const Outcome &outcome(std::size_t i) const { return outcomes_.at(i); }
    [[nodiscard]] const std::vector<Outcome> &outcomes() const noexcept { return outcomes_; }
    [[nodiscard]] bool has_values() const {
        for (const auto &o : outcomes_)
            if (!o.value) return false;
        return true;
    }

  private:
    PartitionPOVM(std::vector<Outcome> o, std::vector<Effect> e)
        : outcomes_(std::move(o)), effects_(std::move(e)) {}

    std::vector<Outcome> outcomes_;
    std::vector<Effect> effects_;
};

/// E(union of the selected outcomes) = sum of their effects.
inline Effect algebra_effect(const PartitionPOVM &p, std::span<const std::size_t> subset,
                             const ToleranceConfig &cfg = {}) {
    ComplexMatrix sum = ComplexMatrix::Zero(p.dim(), p.dim());
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i : subset) {
        if (i >= p.size())
            fail(ErrorCode::InvalidArgument, "outcome index " + std::to_string(i) + " out of range");
        if (seen[i]) continue;
        seen[i] = true;
        sum += p.effect(i).matrix();
    }
    return Effect::validate(sum, cfg);
}

inline Effect algebra_effect(const PartitionPOVM &p, std::uint32_t mask, const ToleranceConfig &cfg = {}) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (mask & (std::uint32_t{1} << i)) subset.push_back(i);
    return algebra_effect(p, subset, cfg);
}

/**
 * Calls fn(mask, eigenvalues) for every nonempty subset of outcomes.
 *
 * Subsets are visited in Gray-code order so each step adds or removes a
 * single effect from the running sum.
 */
template <class Fn>
void for_each_algebra_spectrum(const PartitionPOVM &p, Fn &&fn) {
    const std::size_t n = p.size();
    if (n > max_enumerated_outcomes)
        fail(ErrorCode::TooManyOutcomes,
             std::to_string(n) + " outcomes exceed the enumeration cap of " +
                 std::to_string(max_enumerated_outcomes));
    ComplexMatrix sum = ComplexMatrix::Zero(p.dim(), p.dim());
    std::uint32_t gray = 0;
    const std::uint32_t count = std::uint32_t{1} << n;
    for (std::uint32_t i = 1; i < count; ++i) {
        const std::uint32_t next = i ^ (i >> 1);
        const std::uint32_t flipped = next ^ gray;
        const auto bit = static_cast<std::size_t>(std::countr_zero(flipped));
        if (next & flipped)
            sum += p.effect(bit).matrix();
        else
            sum -= p.effect(bit).matrix();
        gray = next;
        const RealVector ev = eigenvalues_only(hermitize(sum));
        fn(gray, ev);
    }
}

struct Norm1Report {
    bool exact_verdict;      ///< every nonzero effect has norm >= 1 - psd_tol
    double min_nonzero_norm; ///< smallest norm over nonzero algebra effects
    std::uint32_t worst_mask;
};

/// Norms over the whole generated algebra; truncated models read the
/// reported norm rather than the exact verdict.
inline Norm1Report norm1_report(const PartitionPOVM &p, const ToleranceConfig &cfg = {}) {
    Norm1Report r{true, 1.0, 0};
    for_each_algebra_spectrum(p, [&](std::uint32_t mask, const RealVector &ev) {
        const double norm = ev(ev.size() - 1);
        if (norm <= cfg.psd_tol) return;
        if (norm < r.min_nonzero_norm) {
            r.min_nonzero_norm = norm;
            r.worst_mask = mask;
        }
    });
    r.exact_verdict = r.min_nonzero_norm >= 1.0 - cfg.psd_tol;
    return r;
}

inline bool has_norm1_property(const PartitionPOVM &p, const ToleranceConfig &cfg = {}) {
    return norm1_report(p, cfg).exact_verdict;
}

/// Top eigenvector of A, provided <phi, A phi> = ||A|| reaches 1 - epsilon.
inline StateVector epsilon_decider(const Effect &a, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
    if (a.is_zero())
        fail(ErrorCode::TrivialEffect, "the null effect cannot be decided");
    const double norm = operator_norm(a);
    if (norm < 1.0 - epsilon)
        throw NotDecidableError(norm, epsilon);
    const auto &s = a.spectrum();
    return StateVector::normalized(s.eigenvectors.col(s.dim() - 1));
}

/// Every nontrivial effect of the generated algebra is regular.
inline bool is_regular_povm(const PartitionPOVM &p, const ToleranceConfig &cfg = {}) {
    bool regular = true;
    for_each_algebra_spectrum(p, [&](std::uint32_t, const RealVector &ev) {
        const double lo = ev(0);
        const double hi = ev(ev.size() - 1);
        const bool trivial = hi <= cfg.psd_tol || lo >= 1.0 - cfg.psd_tol;
        if (!trivial && !(lo < 0.5 - cfg.psd_tol && hi > 0.5 + cfg.psd_tol))
            regular = false;
    });
    return regular;
}

/// norm-1 => regular, evaluated on one POVM.
inline bool norm1_implies_regular_check(const PartitionPOVM &p, const ToleranceConfig &cfg = {}) {
    return !has_norm1_property(p, cfg) || is_regular_povm(p, cfg);
}

enum class EndpointMode { Exact, Asymptotic };

inline double default_endpoint_tol(EndpointMode mode) {
    return mode == EndpointMode::Exact ? 1e-9 : 0.05;
}

/// 0 and 1 both (approximately) in the spectrum of a nontrivial effect.
inline bool spectrum_endpoints_check(const Effect &a, double tol_endpoint,
                                     const ToleranceConfig &cfg = {}) {
    require_nontrivial(a, cfg);
    return a.min_eigenvalue() <= tol_endpoint && a.max_eigenvalue() >= 1.0 - tol_endpoint;
}

inline bool spectrum_endpoints_check(const Effect &a, EndpointMode mode = EndpointMode::Exact,
                                     const ToleranceConfig &cfg = {}) {
    return spectrum_endpoints_check(a, default_endpoint_tol(mode), cfg);
}

/// Variance of a discrete distribution; evaluated as sum p (x - mean)^2.
inline double variance(std::span<const double> values, std::span<const double> probabilities) {
    if (values.size() != probabilities.size())
        fail(ErrorCode::DimensionMismatch, "values and probabilities differ in length");
    double total = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        total += probabilities[i];
        mean += values[i] * probabilities[i];
    }
    if (!(total > 0.0))
        fail(ErrorCode::InvalidArgument, "probabilities sum to zero");
    mean /= total;
    double var = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        var += probabilities[i] * (values[i] - mean) * (values[i] - mean);
    return var / total;
}

inline std::vector<double> outcome_probabilities(const PartitionPOVM &p, const StateVector &phi) {
    if (phi.dim() != p.dim())
        fail(ErrorCode::DimensionMismatch, "state dimension does not match the POVM");
    std::vector<double> probs;
    probs.reserve(p.size());
    for (const auto &e : p.effects())
        probs.push_back(std::max(0.0, phi.expectation(e.matrix())));
    return probs;
}

inline double variance(const PartitionPOVM &p, const StateVector &phi) {
    if (!p.has_values())
        fail(ErrorCode::InvalidArgument, "variance needs a real value for every outcome");
    std::vector<double> values;
    for (const auto &o : p.outcomes()) values.push_back(*o.value);
    const auto probs = outcome_probabilities(p, phi);
    return variance(values, probs);
}

struct VarianceWitness {
    double centre;      ///< support point x
    double eta;         ///< window half-width
    double probability; ///< <phi, E((x - eta, x + eta)) phi>
    double variance;
    double bound; ///< 15 eta alpha^3
    StateVector state;
};

/**
 * Low-variance state for a valued norm-1 POVM: the top eigenvector of
 * E((x - eta, x + eta)) for the support point x nearest the midpoint of the
 * support. Throws NotDecidable when that window effect has norm below
 * 1 - eta.
 */
inline VarianceWitness variance_witness(const PartitionPOVM &p, double eta,
                                        const ToleranceConfig &cfg = {}) {
    if (!(eta > 0.0 && eta < 1.0))
        fail(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
    if (!p.has_values())
        fail(ErrorCode::InvalidArgument, "variance needs a real value for every outcome");
    std::vector<double> support;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.effect(i).max_eigenvalue() > cfg.psd_tol) support.push_back(*p.outcome(i).value);
    const auto [lo, hi] = std::minmax_element(support.begin(), support.end());
    const double mid = 0.5 * (*lo + *hi);
    const double alpha = std::max(std::abs(*lo), std::abs(*hi));
    const double x = *std::min_element(support.begin(), support.end(), [&](double a, double b) {
        return std::abs(a - mid) < std::abs(b - mid);
    });
    std::vector<std::size_t> window;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (std::abs(*p.outcome(i).value - x) < eta) window.push_back(i);
    const Effect a = algebra_effect(p, window, cfg);
    StateVector phi = epsilon_decider(a, eta);
    const double prob = phi.expectation(a.matrix());
    const double var = variance(p, phi);
    return {x, eta, prob, var, 15.0 * eta * alpha * alpha * alpha, std::move(phi)};
}

/// u_C(B) = sum_i A_i^{1/2} B A_i^{1/2}
inline Effect lueders_coarse_graining(const PartitionPOVM &c, const Effect &b,
                                      const ToleranceConfig &cfg = {}) {
    if (b.dim() != c.dim())
        fail(ErrorCode::DimensionMismatch, "B and the partition differ in dimension");
    ComplexMatrix out = ComplexMatrix::Zero(b.dim(), b.dim());
    for (const auto &a : c.effects()) {
        const ComplexMatrix root = sqrt_effect(a).matrix();
        out += root * b.matrix() * root;
    }
    return Effect::validate(hermitize(out), cfg);
}

struct CoarseGrainingStep {
    double concentration; ///< <psi, A_i psi>
    double gap;           ///< |<psi, u_C(B) psi> - <psi, A_i^{1/2} B A_i^{1/2} psi>|
    double bound;         ///< ||B|| sum_{j != i} ||A_j^{1/2} psi||
};

/**
 * Gap between u_C(B) and its i-th Lueders term along a state sequence that
 * concentrates on outcome i. Throws SequenceNotConcentrating when
 * <psi_k, A_i psi_k> decreases along the sequence.
 */
inline std::vector<CoarseGrainingStep>
coarse_graining_limit_check(const PartitionPOVM &c, const Effect &b,
                            std::span<const StateVector> states, std::size_t i,
                            const ToleranceConfig &cfg = {}) {
    if (i >= c.size())
        fail(ErrorCode::InvalidArgument, "outcome index out of range");
    if (states.empty())
        fail(ErrorCode::InvalidArgument, "empty state sequence");
    const Effect u = lueders_coarse_graining(c, b, cfg);
    std::vector<ComplexMatrix> roots;
    for (const auto &a : c.effects()) roots.push_back(sqrt_effect(a).matrix());
    const double b_norm = operator_norm(b);
    const ComplexMatrix term = roots[i] * b.matrix() * roots[i];

    std::vector<CoarseGrainingStep> out;
    for (const auto &psi : states) {
        if (psi.dim() != c.dim())
            fail(ErrorCode::DimensionMismatch, "state dimension does not match the partition");
        CoarseGrainingStep step{};
        step.concentration = psi.expectation(c.effect(i).matrix());
        if (!out.empty() && step.concentration < out.back().concentration - 1e-12)
            fail(ErrorCode::SequenceNotConcentrating,
                 "<psi, A_i psi> decreased from " + std::to_string(out.back().concentration) +
                     " to " + std::to_string(step.concentration));
        step.gap = std::abs(psi.expectation(u.matrix()) - psi.expectation(term));
        double tail = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (j != i) tail += (roots[j] * psi.amplitudes()).norm();
        step.bound = b_norm * tail;
        out.push_back(step);
    }
    return out;
}

} // namespace normone
