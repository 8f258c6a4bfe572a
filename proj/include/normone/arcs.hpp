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
 * Finite unions of half-open arcs on the circle [0, 2pi), their Fourier
 * coefficients and a small parser for "a:b,c:d" strings.
 */

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normone/linalg.hpp"

namespace normone {

struct Arc {
    double a; ///< inclusive start
    double b; ///< exclusive end
    [[nodiscard]] double length() const { return b - a; }
};

/// Sorted, pairwise disjoint arcs inside [0, 2pi). Touching arcs are merged.
class ArcSet {
  public:
    ArcSet() = default;

    /// Accepts arbitrary [a, b) with a <= b; reduces mod 2pi, splits arcs that
    /// wrap past 2pi and merges overlaps. Arcs of length >= 2pi cover the circle.
    static ArcSet from_intervals(const std::vector<std::pair<double, double>> &intervals) {
        std::vector<Arc> raw;
        for (auto [a, b] : intervals) {
            if (!(std::isfinite(a) && std::isfinite(b)))
                fail(ErrorCode::InvalidArgument, "arc endpoints must be finite");
            if (b < a)
                fail(ErrorCode::InvalidArgument, "arc end precedes its start");
            if (b == a) continue;
            if (b - a >= two_pi) {
                raw.push_back({0.0, two_pi});
                continue;
            }
            double start = std::fmod(a, two_pi);
            if (start < 0.0) start += two_pi;
            if (start >= two_pi) start = 0.0;
            const double end = start + (b - a);
            if (end <= two_pi) {
                raw.push_back({start, end});
            } else {
                raw.push_back({start, two_pi});
                raw.push_back({0.0, end - two_pi});
            }
        }
        std::sort(raw.begin(), raw.end(), [](const Arc &x, const Arc &y) { return x.a < y.a; });
        ArcSet out;
        for (const auto &arc : raw) {
            if (!out.arcs_.empty() && arc.a <= out.arcs_.back().b)
                out.arcs_.back().b = std::max(out.arcs_.back().b, arc.b);
            else
                out.arcs_.push_back(arc);
        }
        return out;
    }

    static ArcSet single(double a, double b) { return from_intervals({{a, b}}); }
    static ArcSet full() { return single(0.0, two_pi); }

    [[nodiscard]] const std::vector<Arc> &arcs() const noexcept { return arcs_; }
    [[nodiscard]] bool empty() const noexcept { return arcs_.empty(); }
    [[nodiscard]] bool is_full() const {
        return arcs_.size() == 1 && arcs_[0].a == 0.0 && arcs_[0].b >= two_pi;
    }

    [[nodiscard]] double length() const {
        double l = 0.0;
        for (const auto &arc : arcs_) l += arc.length();
        return l;
    }

    /// True when the set is one arc of the circle, possibly wrapping through 0.
    [[nodiscard]] bool is_single_arc() const {
        if (arcs_.size() == 1) return true;
        return arcs_.size() == 2 && arcs_[0].a == 0.0 && arcs_[1].b >= two_pi;
    }

    /// X + x (mod 2pi).
    [[nodiscard]] ArcSet shifted(double x) const {
        std::vector<std::pair<double, double>> iv;
        for (const auto &arc : arcs_) iv.emplace_back(arc.a + x, arc.b + x);
        return from_intervals(iv);
    }

    [[nodiscard]] ArcSet complement() const {
        std::vector<std::pair<double, double>> iv;
        double cursor = 0.0;
        for (const auto &arc : arcs_) {
            if (arc.a > cursor) iv.emplace_back(cursor, arc.a);
            cursor = arc.b;
        }
        if (cursor < two_pi) iv.emplace_back(cursor, two_pi);
        return from_intervals(iv);
    }

    [[nodiscard]] bool contains(double theta) const {
        double t = std::fmod(theta, two_pi);
        if (t < 0.0) t += two_pi;
        for (const auto &arc : arcs_)
            if (t >= arc.a && t < arc.b) return true;
        return false;
    }

    /// theta lies at distance > margin from the boundary of the set.
    [[nodiscard]] bool interior_contains(double theta, double margin = 0.0) const {
        if (is_full()) return true;
        return contains(theta) && boundary_distance(theta) > margin;
    }

    /// Closed sub-arcs [a + delta, b - delta] (as half-open arcs of the same
    /// measure); arcs shorter than 2 delta disappear.
    [[nodiscard]] ArcSet shrunk(double delta) const {
        if (is_full() || delta <= 0.0) return *this;
        std::vector<std::pair<double, double>> iv;
        for (const auto &arc : single_arcs())
            if (arc.b - arc.a > 2.0 * delta) iv.emplace_back(arc.a + delta, arc.b - delta);
        return from_intervals(iv);
    }

  private:
    /// Arcs with a wrap through 0 rejoined, so shrinking acts on true arcs.
    [[nodiscard]] std::vector<Arc> single_arcs() const {
        std::vector<Arc> out = arcs_;
        if (out.size() >= 2 && out.front().a == 0.0 && out.back().b >= two_pi) {
            out.back().b = two_pi + out.front().b;
            out.erase(out.begin());
        }
        return out;
    }

    [[nodiscard]] double boundary_distance(double theta) const {
        double best = two_pi;
        for (const auto &arc : single_arcs())
            for (double e : {arc.a, arc.b}) {
                double d = std::fmod(std::abs(theta - e), two_pi);
                best = std::min({best, d, two_pi - d});
            }
        return best;
    }

    std::vector<Arc> arcs_;
};

/// (1 / 2pi) int_X e^{ik x} dx
inline cplx arc_fourier(const ArcSet &x, long k) {
    if (k == 0) return {x.length() / two_pi, 0.0};
    const double kd = static_cast<double>(k);
    cplx sum{0.0, 0.0};
    for (const auto &arc : x.arcs()) {
        const double mid = 0.5 * (arc.a + arc.b);
        const double half = 0.5 * (arc.b - arc.a);
        sum += std::sin(kd * half) / (pi * kd) * cplx(std::cos(kd * mid), std::sin(kd * mid));
    }
    return sum;
}

namespace detail {
inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline double parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) fail(ErrorCode::ParseError, "empty number");
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                     : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}
} // namespace detail

/// Angles like "1.5", "pi", "-pi/4", "3pi/2", "2*pi". With pi_units a bare
/// number is read as a multiple of pi.
inline double parse_angle(std::string_view text, bool pi_units = false) {
    std::string_view s = detail::trim(text);
    const auto at = s.find("pi");
    if (at == std::string_view::npos) {
        const double v = detail::parse_number(s);
        return pi_units ? v * pi : v;
    }
    std::string_view coef = detail::trim(s.substr(0, at));
    std::string_view rest = detail::trim(s.substr(at + 2));
    if (!coef.empty() && coef.back() == '*') coef = detail::trim(coef.substr(0, coef.size() - 1));
    double c = 1.0;
    if (coef == "-")
        c = -1.0;
    else if (!coef.empty() && coef != "+")
        c = detail::parse_number(coef);
    double den = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') fail(ErrorCode::ParseError, "bad angle: '" + std::string(s) + "'");
        den = detail::parse_number(rest.substr(1));
        if (den == 0.0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
    }
    return c * pi / den;
}

/// "a1:b1,a2:b2" -> ArcSet.
inline ArcSet parse_arc_set(std::string_view text, bool pi_units = false) {
    std::vector<std::pair<double, double>> iv;
    for (auto piece : detail::split(text, ',')) {
        piece = detail::trim(piece);
        if (piece.empty()) continue;
        const auto colon = piece.find(':');
        if (colon == std::string_view::npos)
            fail(ErrorCode::ParseError, "arc '" + std::string(piece) + "' lacks ':'");
        const double a = parse_angle(piece.substr(0, colon), pi_units);
        const double b = parse_angle(piece.substr(colon + 1), pi_units);
        if (b < a) fail(ErrorCode::ParseError, "arc '" + std::string(piece) + "' is reversed");
        iv.emplace_back(a, b);
    }
    return ArcSet::from_intervals(iv);
}

} // namespace normone
