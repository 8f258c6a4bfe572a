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
 * Desk-scale measure models.
 *
 * FatCantorModel: the multiplication observable (E(X) psi)(x) = chi_X(x) f(x) psi(x)
 * on L^2[0, 1] with f = 1/2 on a fat Cantor set C and f = 1 elsewhere.
 * ||E(X)|| is the essential supremum of f chi_X, decided from exact
 * rational measures of X intersected with the depth-k approximants C_k.
 *
 * CyclicCovarianceModel: a Z_N-covariant observable E(X) = sum_{k in X} U(k) E0 U(k)*
 * with U(k) = diag(e^{2 pi i n k / N}).
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "normone/arcs.hpp"
#include "normone/effect.hpp"

namespace normone {

using Rational = boost::multiprecision::mpq_rational;

/// Smith-Volterra-Cantor construction: step j removes the open middle piece
/// of length 4^{-(j+1)} from each of the 2^j remaining intervals.
class FatCantorModel {
  public:
    static constexpr int max_depth = 62;

    explicit FatCantorModel(int depth) : depth_(depth) {
        if (depth < 0 || depth > max_depth)
            fail(ErrorCode::InvalidArgument, "Cantor depth must lie in [0, 62]");
        lengths_.push_back(Rational(1));
        Rational removed(1, 4);
        for (int j = 0; j < depth; ++j) {
            lengths_.push_back((lengths_.back() - removed) / 2);
            removed /= 4;
        }
    }

    [[nodiscard]] int depth() const noexcept { return depth_; }

    /// Length of each of the 2^j intervals of C_j.
    [[nodiscard]] const Rational &piece_length(int j) const { return lengths_.at(static_cast<std::size_t>(j)); }

    /// lambda(C_j) = 1/2 + 2^{-j-1}.
    [[nodiscard]] Rational measure_at(int j) const {
        return piece_length(j) * pow2(j);
    }
    [[nodiscard]] static Rational limit_measure() { return Rational(1, 2); }

    /// lambda(C_k) - lambda(C), the most the limit can lose against depth k.
    [[nodiscard]] Rational tail() const { return measure_at(depth_) - limit_measure(); }

    /// Exact lambda(U cap C_k) for a union of intervals with rational endpoints.
    [[nodiscard]] Rational intersection_measure(const std::vector<std::pair<Rational, Rational>> &u) const {
        Rational total = 0;
        for (const auto &[a, b] : u)
            if (a < b) total += piece_measure(a, b, Rational(0), 0);
        return total;
    }

    /// Closed intervals of C_k (2^k of them; only for small k).
    [[nodiscard]] std::vector<std::pair<Rational, Rational>> pieces(int k) const {
        if (k > depth_ || k > 20) fail(ErrorCode::InvalidArgument, "piece listing depth too large");
        std::vector<std::pair<Rational, Rational>> out{{Rational(0), Rational(1)}};
        for (int j = 0; j < k; ++j) {
            std::vector<std::pair<Rational, Rational>> next;
            for (const auto &[l, r] : out) {
                next.emplace_back(l, l + piece_length(j + 1));
                next.emplace_back(r - piece_length(j + 1), r);
            }
            out = std::move(next);
        }
        return out;
    }

  private:
    static Rational pow2(int j) {
        Rational p = 1;
        for (int i = 0; i < j; ++i) p *= 2;
        return p;
    }

    /// lambda([a, b] cap C_k cap piece starting at left on level j).
    [[nodiscard]] Rational piece_measure(const Rational &a, const Rational &b, const Rational &left, int j) const {
        const Rational right = left + piece_length(j);
        if (b <= left || a >= right) return 0;
        if (a <= left && b >= right) return piece_length(depth_) * pow2(depth_ - j);
        if (j == depth_) {
            const Rational lo = a > left ? a : left;
            const Rational hi = b < right ? b : right;
            return hi - lo;
        }
        return piece_measure(a, b, left, j + 1) +
               piece_measure(a, b, right - piece_length(j + 1), j + 1);
    }

    int depth_;
    std::vector<Rational> lengths_;
};

/// Borel sets handed to the Cantor observable.
struct BorelDescriptor {
    enum class Kind { IntervalUnion, CantorSet, UnionMinusCantor, UnionWithinCantor };
    Kind kind;
    std::vector<std::pair<Rational, Rational>> intervals; ///< inside [0, 1]

    static BorelDescriptor cantor() { return {Kind::CantorSet, {}}; }
    static BorelDescriptor make(Kind kind, std::vector<std::pair<Rational, Rational>> iv) {
        for (auto &[a, b] : iv) {
            if (b < a) fail(ErrorCode::InvalidArgument, "interval end precedes its start");
            if (a < 0) a = 0;
            if (b > 1) b = 1;
        }
        // Merge so lengths add up exactly.
        std::sort(iv.begin(), iv.end());
        std::vector<std::pair<Rational, Rational>> merged;
        for (const auto &p : iv) {
            if (p.first >= p.second) continue;
            if (!merged.empty() && p.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, p.second);
            else
                merged.push_back(p);
        }
        return {kind, std::move(merged)};
    }

    [[nodiscard]] Rational union_length() const {
        Rational l = 0;
        for (const auto &[a, b] : intervals) l += b - a;
        return l;
    }
};

/// "cantor", "empty", "union(a:b,...)", "minus(a:b,...)", "within(a:b,...)".
inline BorelDescriptor parse_borel_descriptor(std::string_view text) {
    text = detail::trim(text);
    if (text == "cantor") return BorelDescriptor::cantor();
    if (text == "empty") return BorelDescriptor::make(BorelDescriptor::Kind::IntervalUnion, {});
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')')
        fail(ErrorCode::ParseError, "descriptor '" + std::string(text) + "' not understood");
    const auto head = text.substr(0, open);
    BorelDescriptor::Kind kind;
    if (head == "union")
        kind = BorelDescriptor::Kind::IntervalUnion;
    else if (head == "minus")
        kind = BorelDescriptor::Kind::UnionMinusCantor;
    else if (head == "within")
        kind = BorelDescriptor::Kind::UnionWithinCantor;
    else
        fail(ErrorCode::ParseError, "unknown descriptor kind '" + std::string(head) + "'");
    std::vector<std::pair<Rational, Rational>> iv;
    for (auto piece : detail::split(text.substr(open + 1, text.size() - open - 2), ',')) {
        piece = detail::trim(piece);
        if (piece.empty()) continue;
        const auto colon = piece.find(':');
        if (colon == std::string_view::npos)
            fail(ErrorCode::ParseError, "interval '" + std::string(piece) + "' lacks ':'");
        // Decimal endpoints are taken at their exact binary value.
        const Rational a(detail::parse_number(piece.substr(0, colon)));
        const Rational b(detail::parse_number(piece.substr(colon + 1)));
        if (b < a) fail(ErrorCode::ParseError, "interval '" + std::string(piece) + "' is reversed");
        iv.emplace_back(a, b);
    }
    return BorelDescriptor::make(kind, std::move(iv));
}

struct CantorNorm {
    std::optional<double> norm; ///< empty when depth k cannot decide
    Rational lower;             ///< bracket on the measure that decides it
    Rational upper;
};

/**
 * ||E(X)|| = ess sup f chi_X: 1 if lambda(X \ C) > 0, else 1/2 if
 * lambda(X cap C) > 0, else 0. lambda(U cap C) is bracketed by
 * [lambda(U cap C_k) - tail, lambda(U cap C_k)].
 */
inline CantorNorm cantor_effect_norm(const FatCantorModel &m, const BorelDescriptor &x) {
    using Kind = BorelDescriptor::Kind;
    if (x.kind == Kind::CantorSet) {
        const Rational half = FatCantorModel::limit_measure();
        return {0.5, half, half};
    }
    const Rational len = x.union_length();
    const Rational at_k = m.intersection_measure(x.intervals);
    Rational lo = at_k - m.tail();
    if (lo < 0) lo = 0;
    const Rational hi = at_k;
    switch (x.kind) {
    case Kind::IntervalUnion:
    case Kind::UnionMinusCantor: {
        // Deciding measure: lambda(U \ C) in [len - hi, len - lo].
        const Rational out_lo = len - hi;
        const Rational out_hi = len - lo;
        if (out_lo > 0) return {1.0, out_lo, out_hi};
        if (out_hi == 0) {
            // U \ C is null; for a union that leaves U cap C.
            if (x.kind == Kind::UnionMinusCantor || len == 0) return {0.0, out_lo, out_hi};
            return {0.5, out_lo, out_hi};
        }
        return {std::nullopt, out_lo, out_hi};
    }
    case Kind::UnionWithinCantor:
        if (lo > 0) return {0.5, lo, hi};
        if (hi == 0) return {0.0, lo, hi};
        return {std::nullopt, lo, hi};
    case Kind::CantorSet: break;
    }
    return {std::nullopt, lo, hi};
}

inline double require_resolved(const CantorNorm &n) {
    if (!n.norm)
        fail(ErrorCode::DepthInsufficient,
             "measure bracket [" + n.lower.str() + ", " + n.upper.str() + "] straddles 0");
    return *n.norm;
}

/// Random open unions in [0, 1] must all have norm 1, while C itself has 1/2.
inline bool cantor_norm1_on_opens_check(const FatCantorModel &m, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, 4);
    for (int i = 0; i < samples; ++i) {
        std::vector<std::pair<Rational, Rational>> iv;
        const int n = count(rng);
        for (int j = 0; j < n; ++j) {
            double a = unit(rng), b = unit(rng);
            if (a > b) std::swap(a, b);
            if (b - a < 1e-6) b = std::min(1.0, a + 1e-3);
            iv.emplace_back(Rational(a), Rational(b));
        }
        const auto x = BorelDescriptor::make(BorelDescriptor::Kind::IntervalUnion, iv);
        if (require_resolved(cantor_effect_norm(m, x)) != 1.0) return false;
    }
    const auto whole = BorelDescriptor::make(BorelDescriptor::Kind::IntervalUnion, {{Rational(0), Rational(1)}});
    return require_resolved(cantor_effect_norm(m, BorelDescriptor::cantor())) == 0.5 &&
           require_resolved(cantor_effect_norm(m, whole)) == 1.0;
}

struct HaarCheck {
    Rational lhs; ///< counting measure |X|
    Rational rhs; ///< (1 / alpha(Z_N)) sum_w alpha(w - X)
};

/// The Haar identity on Z_N for a finite measure alpha and subset X.
inline HaarCheck haar_identity_check(int n, const std::vector<Rational> &alpha, const std::set<int> &x) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "group order must be positive");
    if (static_cast<int>(alpha.size()) != n)
        fail(ErrorCode::DimensionMismatch, "alpha needs one weight per group element");
    Rational total = 0;
    for (const auto &a : alpha) {
        if (a < 0) fail(ErrorCode::InvalidArgument, "alpha must be non-negative");
        total += a;
    }
    if (total == 0) fail(ErrorCode::ZeroTotalMeasure, "alpha(Z_N) = 0");
    for (int e : x)
        if (e < 0 || e >= n) fail(ErrorCode::InvalidArgument, "subset element out of range");
    Rational sum = 0;
    for (int w = 0; w < n; ++w)
        for (int e : x) sum += alpha[static_cast<std::size_t>(((w - e) % n + n) % n)];
    return {Rational(static_cast<long>(x.size())), sum / total};
}

class CyclicCovarianceModel {
  public:
    /// Seed (1/N) * ones, the discrete canonical phase.
    static CyclicCovarianceModel discrete_phase(int n, Eigen::Index d) {
        if (d < 1 || d > n) fail(ErrorCode::InvalidArgument, "need 1 <= d <= N");
        return make(n, ComplexMatrix::Constant(d, d, cplx(1.0 / n, 0.0)));
    }

    static CyclicCovarianceModel make(int n, const ComplexMatrix &seed, const ToleranceConfig &cfg = {}) {
        if (n < 1) fail(ErrorCode::InvalidArgument, "group order must be positive");
        if (seed.rows() > n) fail(ErrorCode::InvalidArgument, "dimension exceeds group order");
        CyclicCovarianceModel m(n, Effect::validate(seed, cfg));
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) all[static_cast<std::size_t>(k)] = k;
        const ComplexMatrix total = m.raw_effect(all) - ComplexMatrix::Identity(seed.rows(), seed.rows());
        if (max_abs(total) > cfg.psd_tol)
            fail(ErrorCode::InvalidArgument, "orbit of the seed does not sum to the identity");
        return m;
    }

    [[nodiscard]] int order() const noexcept { return n_; }
    [[nodiscard]] Eigen::Index dim() const { return seed_.dim(); }

    [[nodiscard]] ComplexMatrix unitary(int k) const {
        ComplexMatrix u = ComplexMatrix::Zero(dim(), dim());
        for (Eigen::Index j = 0; j < dim(); ++j) {
            const double ang = two_pi * static_cast<double>(j) * static_cast<double>(k % n_) / n_;
            u(j, j) = cplx(std::cos(ang), std::sin(ang));
        }
        return u;
    }

    /// Sum over k in X of U(k) E0 U(k)*; duplicates count once.
    [[nodiscard]] ComplexMatrix raw_effect(const std::vector<int> &x) const {
        std::set<int> members;
        for (int k : x) {
            if (k < 0 || k >= n_) fail(ErrorCode::InvalidArgument, "subset element out of range");
            members.insert(k);
        }
        ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
        for (int k : members) {
            const ComplexMatrix u = unitary(k);
            out += u * seed_.matrix() * u.adjoint();
        }
        return out;
    }

    [[nodiscard]] Effect effect(const std::vector<int> &x, const ToleranceConfig &cfg = {}) const {
        return Effect::validate(raw_effect(x), cfg);
    }

  private:
    CyclicCovarianceModel(int n, Effect seed) : n_(n), seed_(std::move(seed)) {}

    int n_;
    Effect seed_;
};

/// E(X) = O exactly when X is empty (counting measure has no nonempty null sets).
inline bool covariant_null_check(const CyclicCovarianceModel &m, const std::vector<int> &x,
                                 const ToleranceConfig &cfg = {}) {
    const bool is_null = operator_norm(m.effect(x, cfg)) <= cfg.psd_tol;
    return is_null == std::set<int>(x.begin(), x.end()).empty();
}

/// max over j, k of |U(j) E({k}) U(j)* - E({k + j})|.
inline double cyclic_covariance_deviation(const CyclicCovarianceModel &m) {
    double worst = 0.0;
    for (int j = 0; j < m.order(); ++j) {
        const ComplexMatrix u = m.unitary(j);
        for (int k = 0; k < m.order(); ++k) {
            const ComplexMatrix lhs = u * m.raw_effect({k}) * u.adjoint();
            const ComplexMatrix rhs = m.raw_effect({(k + j) % m.order()});
            worst = std::max(worst, max_abs(lhs - rhs));
        }
    }
    return worst;
}

struct ExhaustionResult {
    std::vector<double> inner_norms;
    double outer_norm;
};

/// Norms of E over an increasing sequence of inner regions, and of E(X).
template <class Region>
ExhaustionResult compact_exhaustion_norm(const std::function<Effect(const Region &)> &ctor,
                                         const Region &x, const std::vector<Region> &inner) {
    ExhaustionResult r;
    for (const auto &k : inner) r.inner_norms.push_back(operator_norm(ctor(k)));
    r.outer_norm = operator_norm(ctor(x));
    return r;
}

/// Inner arcs X shrunk by each delta (delta decreasing).
inline std::vector<ArcSet> arc_exhaustion(const ArcSet &x, const std::vector<double> &deltas) {
    std::vector<ArcSet> out;
    for (double d : deltas) out.push_back(x.shrunk(d));
    return out;
}

} // namespace normone
