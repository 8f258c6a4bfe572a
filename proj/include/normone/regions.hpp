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
 * Outcome regions of the phase-space observable: finite unions of real
 * intervals (Cartesian margins) and polar rectangles [r1, r2) x Theta.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normone/arcs.hpp"

namespace normone {

/// Sorted, disjoint intervals on the real line; endpoints may be infinite.
class RealRegion {
  public:
    struct Interval {
        double a, b;
    };

    RealRegion() = default;

    static RealRegion from_intervals(std::vector<Interval> iv) {
        for (const auto &i : iv) {
            if (std::isnan(i.a) || std::isnan(i.b))
                fail(ErrorCode::InvalidArgument, "interval endpoint is NaN");
            if (i.b < i.a) fail(ErrorCode::InvalidArgument, "interval end precedes its start");
        }
        std::erase_if(iv, [](const Interval &i) { return i.a == i.b; });
        std::sort(iv.begin(), iv.end(), [](const Interval &x, const Interval &y) { return x.a < y.a; });
        RealRegion out;
        for (const auto &i : iv) {
            if (!out.iv_.empty() && i.a <= out.iv_.back().b)
                out.iv_.back().b = std::max(out.iv_.back().b, i.b);
            else
                out.iv_.push_back(i);
        }
        return out;
    }

    static RealRegion interval(double a, double b) { return from_intervals({{a, b}}); }
    static RealRegion full() {
        const double inf = std::numeric_limits<double>::infinity();
        return interval(-inf, inf);
    }

    [[nodiscard]] const std::vector<Interval> &intervals() const noexcept { return iv_; }
    [[nodiscard]] bool empty() const noexcept { return iv_.empty(); }
    [[nodiscard]] bool bounded() const {
        return iv_.empty() || (std::isfinite(iv_.front().a) && std::isfinite(iv_.back().b));
    }
    [[nodiscard]] double measure() const {
        double m = 0.0;
        for (const auto &i : iv_) m += i.b - i.a;
        return m;
    }

    [[nodiscard]] RealRegion complement() const {
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<Interval> out;
        double cursor = -inf;
        for (const auto &i : iv_) {
            if (i.a > cursor) out.push_back({cursor, i.a});
            cursor = i.b;
        }
        if (cursor < inf) out.push_back({cursor, inf});
        return from_intervals(out);
    }

    [[nodiscard]] RealRegion shifted(double x) const {
        std::vector<Interval> out;
        for (const auto &i : iv_) out.push_back({i.a + x, i.b + x});
        return from_intervals(out);
    }

  private:
    std::vector<Interval> iv_;
};

inline double parse_real_endpoint(std::string_view s) {
    s = detail::trim(s);
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return detail::parse_number(s);
}

/// "a:b,c:d" with "inf" / "-inf" accepted as endpoints.
inline RealRegion parse_real_region(std::string_view text) {
    std::vector<RealRegion::Interval> iv;
    for (auto piece : detail::split(text, ',')) {
        piece = detail::trim(piece);
        if (piece.empty()) continue;
        const auto colon = piece.find(':');
        if (colon == std::string_view::npos)
            fail(ErrorCode::ParseError, "interval '" + std::string(piece) + "' lacks ':'");
        const double a = parse_real_endpoint(piece.substr(0, colon));
        const double b = parse_real_endpoint(piece.substr(colon + 1));
        if (b < a) fail(ErrorCode::ParseError, "interval '" + std::string(piece) + "' is reversed");
        iv.push_back({a, b});
    }
    return RealRegion::from_intervals(std::move(iv));
}

/// [r1, r2) x Theta in polar coordinates; r2 may be infinite.
struct PolarRegion {
    double r1;
    double r2;
    ArcSet theta;

    static PolarRegion make(double r1, double r2, ArcSet theta) {
        if (!(r1 >= 0.0 && r1 < r2))
            fail(ErrorCode::InvalidArgument, "polar region needs 0 <= r1 < r2");
        return {r1, r2, std::move(theta)};
    }
    static PolarRegion disk(double r) { return make(0.0, r, ArcSet::full()); }
    static PolarRegion plane() {
        return make(0.0, std::numeric_limits<double>::infinity(), ArcSet::full());
    }

    /// Lebesgue measure (r2^2 - r1^2) l(Theta) / 2.
    [[nodiscard]] double area() const { return 0.5 * (r2 * r2 - r1 * r1) * theta.length(); }
};

/// "r1:r2@a1:b1,a2:b2"; the angular part defaults to the full circle.
inline PolarRegion parse_polar_region(std::string_view text, bool pi_units = false) {
    const auto at = text.find('@');
    const std::string_view radial = detail::trim(text.substr(0, at));
    const auto colon = radial.find(':');
    if (colon == std::string_view::npos)
        fail(ErrorCode::ParseError, "radial part '" + std::string(radial) + "' lacks ':'");
    const double r1 = parse_real_endpoint(radial.substr(0, colon));
    const double r2 = parse_real_endpoint(radial.substr(colon + 1));
    ArcSet theta = at == std::string_view::npos ? ArcSet::full()
                                                : parse_arc_set(text.substr(at + 1), pi_units);
    if (!(r1 >= 0.0 && r1 < r2))
        fail(ErrorCode::ParseError, "radial interval '" + std::string(radial) + "' is invalid");
    return PolarRegion::make(r1, r2, std::move(theta));
}

} // namespace normone
