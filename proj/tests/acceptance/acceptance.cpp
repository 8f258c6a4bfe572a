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
 * Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
 *
 * Every check compares the library against an independent reference
 * (general complex eigensolver, bisection, Boost quadrature) or an exact
 * identity. A criterion that throws is reported as FAIL with the message.
 */

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "normone/normone.hpp"
#include "support/oracles.hpp"

using namespace normone;

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failed checks for one criterion.
class Check {
  public:
    void expect(bool ok, const std::string &what) {
        ++count_;
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        failed_ += !ok;
    }
    [[nodiscard]] bool ok() const { return failed_ == 0; }
    [[nodiscard]] std::string summary() const {
        std::ostringstream s;
        s << count_ - failed_ << "/" << count_ << " checks";
        for (const auto &f : failures_) s << "; " << f;
        return s.str();
    }

  private:
    int count_ = 0;
    int failed_ = 0;
    std::vector<std::string> failures_;
};

std::string num(double x) { return io::format_number(x); }

struct Criterion {
    const char *id;
    const char *title;
    double time_limit; ///< seconds; 0 for none
    std::function<void(Check &)> body;
};

std::vector<double> sorted_eigenvalues(const ComplexMatrix &m) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m);
    std::vector<double> ev;
    for (Eigen::Index k = 0; k < m.rows(); ++k) ev.push_back(es.eigenvalues()(k).real());
    std::sort(ev.begin(), ev.end());
    return ev;
}

void ac1(Check &c) {
    rnd::Engine rng(1001);
    std::uniform_int_distribution<long> idx(0, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        long s = idx(rng), t = idx(rng);
        if (s == t) t = s + 1;
        const cplx z = std::polar(0.02 + 0.96 * unit(rng), two_pi * unit(rng));
        const auto x = rnd::arc_set(rng, 3);
        const Eigen::Index d = std::max(s, t) + 5;
        const auto e = elementary_eigenvalues(s, t, z, x);
        const auto ev = sorted_eigenvalues(phase_effect(GramKernel::elementary(s, t, z), x, Truncation(d)).matrix());
        double err = std::max(std::abs(ev.front() - e.e_minus), std::abs(ev.back() - e.e_plus));
        for (std::size_t k = 1; k + 1 < ev.size(); ++k) err = std::max(err, std::abs(ev[k] - e.e_zero));
        c.expect(err <= 1e-10, "case " + std::to_string(i) + " error " + num(err));
    }
}

void ac2(Check &c) {
    const auto x = ArcSet::single(0.0, pi);
    const std::vector<Eigen::Index> dims{8, 16, 32, 64, 128, 256, 512};
    const auto rows = canonical_norm_scan(x, dims);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto &r = rows[k];
        // A finite log10 deficit is a norm strictly below 1.
        c.expect(std::isfinite(r.log10_deficit), "d=" + std::to_string(r.d) + " deficit not resolved");
        c.expect(r.norm <= 1.0, "d=" + std::to_string(r.d) + " norm above 1");
        if (k > 0) {
            c.expect(r.log10_deficit < rows[k - 1].log10_deficit,
                     "norm not strictly increasing at d=" + std::to_string(r.d));
            c.expect(r.norm >= rows[k - 1].norm, "double norm decreased at d=" + std::to_string(r.d));
        }
    }
    c.expect(rows.back().norm >= 0.99, "final norm " + num(rows.back().norm));
    const auto f64 = canonical_spectrum_fill(x, 64);
    const auto f512 = canonical_spectrum_fill(x, 512);
    c.expect(f512.min_eigenvalue <= 0.01, "min eigenvalue " + num(f512.min_eigenvalue));
    c.expect(f512.max_gap < f64.max_gap, "gap " + num(f512.max_gap) + " vs " + num(f64.max_gap));
}

/// Reduced-operator comparability computed from the general eigensolver.
bool infimum_oracle(const Effect &a, double snap) {
    bool low = true, high = true;
    for (double l : sorted_eigenvalues(a.matrix())) {
        if (l <= snap || l >= 1.0 - snap) continue;
        low = low && l <= 0.5 + snap;
        high = high && l >= 0.5 - snap;
    }
    return low || high;
}

double lowest(const ComplexMatrix &m) {
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

/// max{t : t M <= A and t M <= B} by bisection.
double lower_bound_scale(const ComplexMatrix &m, const ComplexMatrix &a, const ComplexMatrix &b) {
    double lo = 0.0, hi = 1.0 / std::max(1e-300, oracle::max_eig(m));
    while (hi - lo > 1e-11 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (lowest(a - mid * m) >= 0.0 && lowest(b - mid * m) >= 0.0) lo = mid;
        else hi = mid;
    }
    return lo;
}

void ac3(Check &c) {
    rnd::Engine rng(1003);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int exists = 0, absent = 0, interior = 0;
    for (int i = 0; i < 200; ++i) {
        const Eigen::Index d = 1 + i % 6;
        std::vector<double> spec;
        for (Eigen::Index k = 0; k < d; ++k) {
            switch (i % 4) {
            case 0: spec.push_back(unit(rng)); break;
            case 1: spec.push_back(0.5 * unit(rng)); break;
            case 2: spec.push_back(0.5 + 0.5 * unit(rng)); break;
            default: spec.push_back(k == 0 ? 0.0 : k == 1 ? 1.0 : unit(rng)); break;
            }
        }
        if (i % 4 == 3 && d <= 2) spec.back() = 0.25 + 0.5 * unit(rng);
        const auto a = rnd::effect_with_spectrum(spec, rng);
        const auto ac = complement(a);
        const auto inf = infimum_with_complement(a);
        const std::string tag = "case " + std::to_string(i);
        c.expect(inf.has_value() == infimum_oracle(a, 1e-9), tag + " existence disagrees with oracle");
        double edge = 1.0;
        for (double l : spec) edge = std::min({edge, std::abs(l), std::abs(1.0 - l)});
        if (edge > 1e-9) {
            c.expect(inf.has_value() == !is_regular(a), tag + " exists != irregular");
            ++interior;
        }
        if (!inf) {
            ++absent;
            continue;
        }
        ++exists;
        c.expect(is_lower_bound(*inf, a, ac), tag + " not a lower bound");
        for (int j = 0; j < 50; ++j) {
            const ComplexMatrix g = rnd::ginibre(d, 1 + j % static_cast<int>(d), rng);
            const ComplexMatrix m = g * g.adjoint();
            const ComplexMatrix lb = lower_bound_scale(m, a.matrix(), ac.matrix()) * m;
            if (!oracle::psd(inf->matrix() - lb)) {
                c.expect(false, tag + " bound " + std::to_string(j) + " not dominated");
                break;
            }
        }
    }
    c.expect(exists > 20 && absent > 20, "coverage exists=" + std::to_string(exists) + " absent=" + std::to_string(absent));
    c.expect(interior > 100, "interior cases " + std::to_string(interior));
}

void ac4(Check &c) {
    rnd::Engine rng(1004);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Index d = 2 + i % 5;
        std::vector<double> spec;
        for (Eigen::Index k = 0; k < d; ++k) spec.push_back(0.05 + 0.95 * unit(rng));
        const auto a = rnd::effect_with_spectrum(spec, rng);
        const ComplexVector phi = rnd::unit_vector(d, rng);
        const double lambda = glb_with_rank1(a, phi).lambda;
        const double ref = oracle::bisect_rank_one(a.matrix(), phi);
        c.expect(std::abs(lambda - ref) <= 1e-10, "case " + std::to_string(i) + " " + num(lambda) + " vs " + num(ref));
    }
}

void ac5(Check &c) {
    rnd::Engine rng(1005);
    const double alpha = 2.0;
    const std::vector<double> values{-2.0, -1.3, -0.6, -0.05, 0.0, 0.03, 0.45, 1.1, 2.0};
    const auto d = static_cast<Eigen::Index>(values.size());
    const ComplexMatrix u = rnd::unitary(d, rng);
    std::vector<Outcome> outcomes;
    std::vector<Effect> effects;
    for (Eigen::Index k = 0; k < d; ++k) {
        outcomes.push_back({"x" + std::to_string(k), values[static_cast<std::size_t>(k)]});
        effects.push_back(Effect::validate(projector(u.col(k))));
    }
    const auto p = PartitionPOVM::make(outcomes, effects);
    c.expect(has_norm1_property(p), "model lacks the norm-1 property");
    std::vector<double> variances;
    for (double eta : {0.1, 0.01}) {
        const auto w = variance_witness(p, eta);
        const double bound = 15.0 * eta * alpha * alpha * alpha;
        c.expect(w.variance <= bound, "eta=" + num(eta) + " variance " + num(w.variance));
        c.expect(w.probability >= 1.0 - eta, "eta=" + num(eta) + " probability " + num(w.probability));
        c.expect(std::abs(variance(p, w.state) - w.variance) <= 1e-12, "eta=" + num(eta) + " variance mismatch");
        variances.push_back(w.variance);
    }
    c.expect(variances[1] < variances[0], "variance did not decrease");
}

/// (1/pi) int_Z <n|z><z|m> over [r1, r2] x arcs, by tensor Gauss-Legendre.
cplx polar_entry(const PolarRegion &z, long n, long m) {
    const double fact = std::sqrt(std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
    const double k = static_cast<double>(n - m);
    double re = 0.0, im = 0.0;
    for (const auto &arc : z.theta.arcs()) {
        auto radial = [&](double r) { return std::pow(r, n + m + 1) * std::exp(-r * r) / fact; };
        re += oracle::integrate_2d([&](double r, double t) { return radial(r) * std::cos(k * t); }, z.r1, z.r2,
                                   arc.a, arc.b, 4);
        im += oracle::integrate_2d([&](double r, double t) { return radial(r) * std::sin(k * t); }, z.r1, z.r2,
                                   arc.a, arc.b, 4);
    }
    return cplx(re, im) / pi;
}

void ac6(Check &c) {
    rnd::Engine rng(1006);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Eigen::Index d = 6;
    for (int i = 0; i < 10; ++i) {
        const double r1 = 1.5 * unit(rng);
        const auto z = PolarRegion::make(r1, r1 + 0.2 + 1.3 * unit(rng), rnd::arc_set(rng, 2));
        const ComplexMatrix a = phase_space_effect(z, d).matrix();
        double err = 0.0;
        for (long n = 0; n < d; ++n)
            for (long m = 0; m < d; ++m) err = std::max(err, std::abs(a(n, m) - polar_entry(z, n, m)));
        c.expect(err <= 1e-6, "region " + std::to_string(i) + " error " + num(err));
        const ComplexMatrix cap = z.area() / pi * ComplexMatrix::Identity(d, d);
        c.expect(oracle::psd(cap - a, 1e-12), "region " + std::to_string(i) + " above area/pi");
    }
    for (double r : {0.2, 0.5, 0.9, 1.4, 3.0}) {
        const double norm = oracle::max_eig(phase_space_effect(PolarRegion::disk(r), 30).matrix());
        c.expect(norm <= r * r + 1e-12, "disk " + num(r) + " norm " + num(norm));
    }
}

void ac7(Check &c) {
    const auto rows = angle_margin_norm1_probe(ArcSet::single(0.0, pi), pi / 2, {1.0, 2.0, 4.0, 8.0, 16.0});
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto &r = rows[k];
        const std::string tag = "s=" + num(r.s);
        c.expect(r.d >= static_cast<Eigen::Index>(r.s * r.s + 10 * r.s), tag + " truncation below heuristic");
        c.expect(std::abs(r.probability - (1.0 - r.deficit)) <= 1e-10, tag + " probability vs deficit");
        if (k > 0) {
            // Probabilities beyond double resolution are ordered by their deficits.
            c.expect(r.deficit < rows[k - 1].deficit, tag + " probability not strictly increasing");
            c.expect(r.probability >= rows[k - 1].probability - 1e-13, tag + " double probability decreased");
        }
    }
    c.expect(rows.back().probability > 0.99, "final probability " + num(rows.back().probability));
    const double cap = 0.8 / std::sqrt(pi);
    for (Eigen::Index d : {4, 8, 16, 32, 64, 128}) {
        const double norm = oracle::max_eig(cartesian_margin_effect(RealRegion::interval(-0.4, 0.4), d).matrix());
        c.expect(norm <= cap, "d=" + std::to_string(d) + " cartesian norm " + num(norm));
    }
}

TCSParams random_tcs(rnd::Engine &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = 1.2 * unit(rng);
    const cplx beta = std::polar(2.0 * unit(rng), two_pi * unit(rng));
    return TCSParams::make(beta, std::polar(std::cosh(r), two_pi * unit(rng)),
                           std::polar(std::sinh(r), two_pi * unit(rng)));
}

double plane_moment(const TCSParams &p, const std::function<double(cplx)> &f) {
    const cplx g = p.gamma();
    const double half = 14.0;
    return oracle::integrate_2d([&](double x, double y) { return f(cplx(x, y)) * q_density(p, cplx(x, y)); },
                                g.real() - half, g.real() + half, g.imag() - half, g.imag() + half, 14) /
           pi;
}

void ac8(Check &c) {
    rnd::Engine rng(1008);
    for (int i = 0; i < 20; ++i) {
        const auto p = random_tcs(rng);
        for (Axis axis : {Axis::X, Axis::Y}) {
            auto coord = [axis](cplx z) { return axis == Axis::X ? z.real() : z.imag(); };
            const double mean = plane_moment(p, coord);
            const double var = plane_moment(p, [&](cplx z) { return (coord(z) - mean) * (coord(z) - mean); });
            c.expect(std::abs(var - marginal_variance(p, axis)) <= 1e-7, "variance case " + std::to_string(i));
            c.expect(marginal_variance(p, axis) > 0.25, "variance not above 1/4");
        }
    }
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) {
            const double prod = uncertainty_product(TCSParams::from_w(0.0, std::polar(0.975 * i / 39.0, two_pi * j / 40.0)));
            c.expect(i == 0 ? std::abs(prod - 0.25) <= 1e-12 : prod - 0.25 > 1e-12,
                     "product at grid " + std::to_string(i) + "," + std::to_string(j));
        }
    std::vector<TCSParams> params{TCSParams::make(cplx(1.0, 0.5), std::polar(std::cosh(0.8), 0.4),
                                                  std::polar(std::sinh(0.8), 1.3))};
    while (params.size() < 5) params.push_back(random_tcs(rng));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto &p = params[i];
        const double reach = std::abs(p.gamma()) + 14.0;
        double err = 0.0;
        for (int k = 0; k < 64; ++k) {
            const double th = two_pi * k / 64.0;
            const cplx u = std::polar(1.0, th);
            const double ref =
                oracle::integrate([&](double r) { return q_density(p, r * u) * r; }, 0.0, reach, 1e-14) / pi;
            err = std::max(err, std::abs(angle_density(p, th) - ref));
        }
        c.expect(err <= 1e-7, "angle density set " + std::to_string(i) + " error " + num(err));
        const double mass = oracle::integrate([&](double th) { return angle_density(p, th); }, 0.0, two_pi);
        c.expect(std::abs(mass - 1.0) <= 1e-8, "angle density mass " + num(mass));
    }
    const auto coh = coherent_concentration(1.0, {2.0, 5.0, 10.0}, 0.3);
    for (std::size_t k = 1; k < coh.size(); ++k)
        c.expect(coh[k].peak_mass > coh[k - 1].peak_mass, "coherent mass not increasing");
    c.expect(coh.back().peak_mass > 0.99, "coherent mass " + num(coh.back().peak_mass));
    const auto sq = squeezed_concentration(0.4, 1.3, {1.0, 3.0, 10.0, 30.0}, 0.3);
    for (std::size_t k = 0; k < sq.size(); ++k) {
        c.expect(std::abs(sq[k].peak_mass - sq[k].second_peak_mass) <= 1e-9, "squeezed peaks unequal");
        c.expect(sq[k].peak_mass < 0.5, "squeezed peak above 1/2");
        if (k > 0) c.expect(sq[k].peak_mass > sq[k - 1].peak_mass, "squeezed mass not increasing");
    }
    c.expect(sq.back().peak_mass > 0.45, "squeezed mass " + num(sq.back().peak_mass));
}

void ac9(Check &c) {
    const FatCantorModel m(24);
    c.expect(require_resolved(cantor_effect_norm(m, BorelDescriptor::cantor())) == 0.5, "norm of E(C)");
    c.expect(cantor_norm1_on_opens_check(m, 100, 1009), "open sets without norm 1");
    rnd::Engine rng(1009);
    std::uniform_int_distribution<int> order(1, 64), num_d(0, 9), den(1, 9), coin(0, 1);
    for (int i = 0; i < 200; ++i) {
        const int n = order(rng);
        std::vector<Rational> alpha;
        for (int k = 0; k < n; ++k) alpha.emplace_back(num_d(rng), den(rng));
        alpha[static_cast<std::size_t>(i % n)] += 1;
        std::set<int> x;
        for (int k = 0; k < n; ++k)
            if (coin(rng)) x.insert(k);
        const auto r = haar_identity_check(n, alpha, x);
        c.expect(r.lhs == r.rhs, "haar case " + std::to_string(i));
    }
    const auto cyc = CyclicCovarianceModel::discrete_phase(8, 8);
    for (int mask = 0; mask < 256; ++mask) {
        std::vector<int> x;
        for (int k = 0; k < 8; ++k)
            if (mask & (1 << k)) x.push_back(k);
        c.expect(covariant_null_check(cyc, x), "subset mask " + std::to_string(mask));
    }
}

void ac10(Check &c) {
    rnd::Engine rng(1010);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto p = i % 2 ? rnd::projective_povm(2 + i % 4, 1 + i % 3, rng)
                             : rnd::generic_povm(2 + i % 3, 2 + i % 3, rng);
        c.expect(norm1_implies_regular_check(p), "povm case " + std::to_string(i));
    }
    for (int i = 0; i < 100; ++i) {
        const auto a = rnd::effect(1 + i % 6, rng);
        const double root = oracle::max_eig(sqrt_effect(a).matrix());
        const double norm = oracle::max_eig(a.matrix());
        c.expect(std::abs(root * root - norm) <= 1e-12, "sqrt case " + std::to_string(i));
    }
    for (int i = 0; i < 100; ++i) {
        const auto x = rnd::arc_set(rng, 3);
        const double shift = two_pi * unit(rng);
        const Eigen::Index d = 4 + i % 13;
        const GramKernel g = i % 2 ? GramKernel::canonical()
                                   : GramKernel::elementary(i % 3, 3 + i % 4, std::polar(0.05 + 0.9 * unit(rng), two_pi * unit(rng)));
        const double dev = covariance_check(g, x, shift, Truncation(d));
        c.expect(dev <= 1e-12, "covariance case " + std::to_string(i) + " " + num(dev));
    }
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "elementary phase spectrum", 5.0, ac1},
        {"AC2", "canonical phase norm convergence", 60.0, ac2},
        {"AC3", "infimum existence and maximality", 10.0, ac3},
        {"AC4", "rank-one greatest lower bound", 0.0, ac4},
        {"AC5", "variance bound", 0.0, ac5},
        {"AC6", "phase-space observable", 0.0, ac6},
        {"AC7", "angle-margin norm-1 probe", 0.0, ac7},
        {"AC8", "two-photon coherent states", 0.0, ac8},
        {"AC9", "measure models", 0.0, ac9},
        {"AC10", "invariant sweeps", 0.0, ac10},
    };
    const auto start = Clock::now();
    int failed = 0;
    for (const auto &cr : criteria) {
        Check c;
        const auto t0 = Clock::now();
        try {
            cr.body(c);
        } catch (const std::exception &e) {
            c.expect(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (cr.time_limit > 0.0) c.expect(secs < cr.time_limit, "runtime " + num(secs) + " s");
        failed += !c.ok();
        std::printf("%s %s: %s (%.2f s, %s)\n", cr.id, cr.title, c.ok() ? "PASS" : "FAIL", secs, c.summary().c_str());
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("acceptance: %zu criteria, %d failed, %.2f s\n", criteria.size(), failed, total);
    return failed == 0 ? 0 : 1;
}
