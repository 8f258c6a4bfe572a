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
 * Batch front end: one subcommand per table, CSV on stdout or a file.
 *
 * Exit codes: 0 success, 1 validation or parse error, 2 numerical failure.
 * NORMONE_OUTPUT_DIR, when set, sends output to $NORMONE_OUTPUT_DIR/<sub>.csv
 * unless --out is given.
 */

#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normone/normone.hpp"

namespace normone::cli {

inline constexpr const char *output_dir_env = "NORMONE_OUTPUT_DIR";

namespace detail {

using normone::detail::parse_number;
using normone::detail::split;
using normone::detail::trim;

/// "0.5", "-2i", "0.3+0.2i", "1-i", "i".
inline cplx parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) fail(ErrorCode::ParseError, "empty complex number");
    if (s.back() != 'i') return parse_number(s);
    s.remove_suffix(1);
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t cut = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    auto imag_part = [](std::string_view t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_number(t);
    };
    if (cut == std::string_view::npos) return cplx(0.0, imag_part(s));
    return cplx(parse_number(s.substr(0, cut)), imag_part(s.substr(cut)));
}

inline std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    for (auto piece : split(text, ',')) {
        piece = trim(piece);
        if (!piece.empty()) out.push_back(parse_number(piece));
    }
    if (out.empty()) fail(ErrorCode::ParseError, "empty list '" + std::string(text) + "'");
    return out;
}

inline std::vector<cplx> parse_complex_list(std::string_view text) {
    std::vector<cplx> out;
    for (auto piece : split(text, ',')) {
        piece = trim(piece);
        if (!piece.empty()) out.push_back(parse_complex(piece));
    }
    if (out.empty()) fail(ErrorCode::ParseError, "empty list '" + std::string(text) + "'");
    return out;
}

inline std::vector<Eigen::Index> parse_dims(std::string_view text) {
    std::vector<Eigen::Index> out;
    for (double v : parse_list(text)) {
        if (v != std::floor(v) || v < 2)
            fail(ErrorCode::InvalidArgument, "dimensions must be integers >= 2");
        out.push_back(static_cast<Eigen::Index>(v));
    }
    return out;
}

inline std::vector<int> parse_subset(std::string_view text) {
    std::vector<int> out;
    for (auto piece : split(text, ',')) {
        piece = trim(piece);
        if (piece.empty()) continue;
        const double v = parse_number(piece);
        if (v != std::floor(v)) fail(ErrorCode::ParseError, "subset elements must be integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

inline Axis parse_axis(const std::string &s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    fail(ErrorCode::ParseError, "axis must be x or y");
}

} // namespace detail

/// Flags shared by every subcommand.
struct RunConfig {
    std::uint64_t seed = 1;
    std::string out;
    bool pi_units = false;
    ToleranceConfig tol;
};

class Runner {
  public:
    Runner(std::ostream &out, std::ostream &err) : out_(out), err_(err) {}

    int run(std::vector<std::string> args) {
        CLI::App app{"normone: norm-1 property of quantum observables, as CSV tables"};
        app.require_subcommand(1);
        app.set_help_all_flag("--help-all", "Help for every subcommand");
        register_all(app);
        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::CallForHelp &) {
            out_ << help_text(app);
            return 0;
        } catch (const CLI::CallForAllHelp &) {
            out_ << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::ParseError &e) {
            err_ << "error: " << e.what() << '\n';
            return 1;
        }
        try {
            emit();
            return 0;
        } catch (const Error &e) {
            err_ << "error: " << e.what() << '\n';
            return e.is_numerical() ? 2 : 1;
        } catch (const std::exception &e) {
            err_ << "error: " << e.what() << '\n';
            return 1;
        }
    }

  private:
    using Body = std::function<void(io::CsvWriter &)>;

    CLI::App *add(CLI::App &app, const std::string &name, const std::string &operation,
                  const std::string &what) {
        CLI::App *sub = app.add_subcommand(name, what + "\nDrives " + operation + ".");
        sub->add_option("--seed", cfg_.seed, "Seed for randomized rows, echoed in the header")
            ->capture_default_str();
        sub->add_option("--out", cfg_.out, "Output file (default stdout, or $" + std::string(output_dir_env) +
                                               "/" + name + ".csv)");
        sub->add_flag("--pi-units", cfg_.pi_units, "Read bare angle endpoints as multiples of pi");
        sub->add_option("--hermiticity-tol", cfg_.tol.hermiticity_tol, "Hermiticity tolerance")
            ->capture_default_str();
        sub->add_option("--psd-tol", cfg_.tol.psd_tol, "PSD tolerance")->capture_default_str();
        sub->add_option("--spectral-rtol", cfg_.tol.spectral_rtol, "Relative spectral tolerance")
            ->capture_default_str();
        sub->callback([this, sub, name] { active_ = name; (void)sub; });
        return sub;
    }

    std::string help_text(CLI::App &app) {
        for (CLI::App *sub : app.get_subcommands()) return sub->help();
        return app.help();
    }

    void emit() {
        std::ostringstream buffer;
        io::CsvWriter w(buffer);
        w.comment("normone " + active_ + " seed=" + std::to_string(cfg_.seed));
        bodies_.at(active_)(w);
        std::string target = cfg_.out;
        if (target.empty())
            if (const char *dir = std::getenv(output_dir_env); dir && *dir)
                target = (std::filesystem::path(dir) / (active_ + ".csv")).string();
        if (target.empty()) {
            out_ << buffer.str();
            return;
        }
        const auto parent = std::filesystem::path(target).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        std::ofstream file(target);
        if (!file) fail(ErrorCode::InvalidArgument, "cannot write " + target);
        file << buffer.str();
    }

    Effect effect_from(const std::string &diag, const std::string &matrix) const {
        if (diag.empty() == matrix.empty())
            fail(ErrorCode::InvalidArgument, "give exactly one of --diag or --matrix");
        if (!diag.empty()) return Effect::from_diagonal(detail::parse_list(diag));
        return Effect::validate(io::read_matrix_file(matrix), cfg_.tol);
    }

    void register_all(CLI::App &app) {
        phase_norms(app);
        phase_spectrum(app);
        infimum(app);
        glb_rank1(app);
        povm_check(app);
        margins(app);
        angle_probe(app);
        tcs_table(app);
        angle_density_cmd(app);
        cantor(app);
        covariance(app);
        variance_demo(app);
    }

    void phase_norms(CLI::App &app) {
        auto o = std::make_shared<std::tuple<std::string, std::string, std::string, long, long, std::string>>(
            "canonical", "0:pi", "8,16,32,64,128", 0, 1, "0.5");
        auto *s = add(app, "phase-norms", "phase_obs::canonical_norm_scan (canonical) and phase_effect (elementary)",
                      "Norms of truncated phase effects E(X) over a list of dimensions.");
        s->add_option("--kind", std::get<0>(*o), "canonical | elementary")->capture_default_str();
        s->add_option("--arc", std::get<1>(*o), "Arc set a:b,c:d")->capture_default_str();
        s->add_option("--dims", std::get<2>(*o), "Dimensions d")->capture_default_str();
        s->add_option("--s", std::get<3>(*o), "Elementary kernel index s")->capture_default_str();
        s->add_option("--t", std::get<4>(*o), "Elementary kernel index t")->capture_default_str();
        s->add_option("--z", std::get<5>(*o), "Elementary kernel entry z (e.g. 0.3+0.4i)")->capture_default_str();
        bodies_["phase-norms"] = [this, o](io::CsvWriter &w) {
            const auto &[kind, arc, dims_text, st, tt, z] = *o;
            const ArcSet x = parse_arc_set(arc, cfg_.pi_units);
            const auto dims = detail::parse_dims(dims_text);
            w.header({"d", "norm", "log10_deficit", "method"});
            if (kind == "canonical") {
                for (const auto &r : canonical_norm_scan(x, dims))
                    w.cell(static_cast<long>(r.d)).cell(r.norm).cell(r.log10_deficit)
                        .cell(std::string(r.extended ? "prolate-mpfr" : "eigensolver")).end_row();
            } else if (kind == "elementary") {
                const auto g = GramKernel::elementary(st, tt, detail::parse_complex(z));
                for (Eigen::Index d : dims) {
                    const double n = operator_norm(phase_effect(g, x, Truncation(d), cfg_.tol));
                    w.cell(static_cast<long>(d)).cell(n).cell(n < 1.0 ? std::log10(1.0 - n) : -INFINITY)
                        .cell(std::string("eigensolver")).end_row();
                }
            } else {
                fail(ErrorCode::InvalidArgument, "--kind must be canonical or elementary");
            }
        };
    }

    void phase_spectrum(CLI::App &app) {
        auto o = std::make_shared<std::tuple<std::string, std::string, std::string, long, long, std::string>>(
            "canonical", "0:pi", "32,64,128,256", 0, 1, "0.5");
        auto *s = add(app, "phase-spectrum",
                      "phase_obs::canonical_spectrum_fill (canonical) and elementary_eigenvalues (elementary)",
                      "Spectrum statistics of phase effects: range and largest gap, or the elementary triple.");
        s->add_option("--kind", std::get<0>(*o), "canonical | elementary")->capture_default_str();
        s->add_option("--arc", std::get<1>(*o), "Arc set a:b,c:d")->capture_default_str();
        s->add_option("--dims", std::get<2>(*o), "Dimensions d")->capture_default_str();
        s->add_option("--s", std::get<3>(*o), "Elementary kernel index s")->capture_default_str();
        s->add_option("--t", std::get<4>(*o), "Elementary kernel index t")->capture_default_str();
        s->add_option("--z", std::get<5>(*o), "Elementary kernel entry z")->capture_default_str();
        bodies_["phase-spectrum"] = [this, o](io::CsvWriter &w) {
            const auto &[kind, arc, dims_text, st, tt, z] = *o;
            const ArcSet x = parse_arc_set(arc, cfg_.pi_units);
            const auto dims = detail::parse_dims(dims_text);
            if (kind == "canonical") {
                w.header({"d", "min_eigenvalue", "max_eigenvalue", "max_gap"});
                for (Eigen::Index d : dims) {
                    const auto f = canonical_spectrum_fill(x, d);
                    w.cell(static_cast<long>(d)).cell(f.min_eigenvalue).cell(f.max_eigenvalue).cell(f.max_gap).end_row();
                }
            } else if (kind == "elementary") {
                const cplx zc = detail::parse_complex(z);
                const auto e = elementary_eigenvalues(st, tt, zc, x);
                const auto g = GramKernel::elementary(st, tt, zc);
                w.header({"d", "e_minus", "e_zero", "e_plus", "solver_min", "solver_max"});
                for (Eigen::Index d : dims) {
                    const auto a = phase_effect(g, x, Truncation(d), cfg_.tol);
                    w.cell(static_cast<long>(d)).cell(e.e_minus).cell(e.e_zero).cell(e.e_plus)
                        .cell(a.min_eigenvalue()).cell(a.max_eigenvalue()).end_row();
                }
            } else {
                fail(ErrorCode::InvalidArgument, "--kind must be canonical or elementary");
            }
        };
    }

    void infimum(CLI::App &app) {
        auto o = std::make_shared<std::pair<std::string, std::string>>();
        auto *s = add(app, "infimum", "effect_core::infimum_with_complement",
                      "Greatest lower bound A ^ (I - A), or 'does not exist'.");
        s->add_option("--diag", o->first, "Diagonal effect, e.g. 0.3,0.8");
        s->add_option("--matrix", o->second, "Matrix CSV file (d reals or d re,im pairs per row)");
        bodies_["infimum"] = [this, o](io::CsvWriter &w) {
            const Effect a = effect_from(o->first, o->second);
            const auto c = infimum_with_complement(a, cfg_.tol);
            w.header({"result", "n", "m", "re", "im"});
            if (!c) {
                w.cell(std::string("does not exist")).cell(std::string()).cell(std::string())
                    .cell(std::string()).cell(std::string()).end_row();
                return;
            }
            for (Eigen::Index n = 0; n < c->dim(); ++n)
                for (Eigen::Index m = 0; m < c->dim(); ++m)
                    w.cell(std::string("exists")).cell(static_cast<long>(n)).cell(static_cast<long>(m))
                        .cell(c->matrix()(n, m).real()).cell(c->matrix()(n, m).imag()).end_row();
        };
    }

    void glb_rank1(CLI::App &app) {
        auto o = std::make_shared<std::array<std::string, 4>>();
        auto *s = add(app, "glb-rank1", "effect_core::glb_with_rank1",
                      "lambda = <phi, A^-1 phi>^-1 for the greatest lower bound of A and P[phi].");
        s->add_option("--diag", (*o)[0], "Diagonal effect");
        s->add_option("--matrix", (*o)[1], "Matrix CSV file");
        s->add_option("--phi", (*o)[2], "Vector phi, comma separated complex entries (normalized)")->required();
        bodies_["glb-rank1"] = [this, o](io::CsvWriter &w) {
            const Effect a = effect_from((*o)[0], (*o)[1]);
            const auto entries = detail::parse_complex_list((*o)[2]);
            ComplexVector phi(static_cast<Eigen::Index>(entries.size()));
            for (std::size_t k = 0; k < entries.size(); ++k) phi(static_cast<Eigen::Index>(k)) = entries[k];
            if (!(phi.norm() > 0.0)) fail(ErrorCode::InvalidArgument, "phi is the zero vector");
            phi /= phi.norm();
            const auto r = glb_with_rank1(a, phi, cfg_.tol);
            w.header({"lambda", "bound_norm", "is_lower_bound"});
            const Effect p = Effect::validate(projector(phi), cfg_.tol);
            w.cell(r.lambda).cell(operator_norm(r.bound)).cell(is_lower_bound(r.bound, a, p, cfg_.tol)).end_row();
        };
    }

    void povm_check(CLI::App &app) {
        struct Opt {
            std::string dir, kind = "projective", eps = "0.1,0.01";
            long count = 5, dim = 3, outcomes = 3;
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "povm-check",
                      "povm_core::norm1_report, is_regular_povm and norm1_implies_regular_check",
                      "Norm-1, epsilon-decidability and regularity verdicts for partition POVMs.");
        s->add_option("--povm", o->dir, "POVM directory with manifest.txt (label,value,filename)");
        s->add_option("--kind", o->kind, "Random family when --povm is absent: projective | generic")
            ->capture_default_str();
        s->add_option("--count", o->count, "Number of random POVMs")->capture_default_str();
        s->add_option("--dim", o->dim, "Dimension of random POVMs")->capture_default_str();
        s->add_option("--outcomes", o->outcomes, "Outcomes of random POVMs")->capture_default_str();
        s->add_option("--epsilon", o->eps, "Epsilons for the decidability column")->capture_default_str();
        bodies_["povm-check"] = [this, o](io::CsvWriter &w) {
            std::vector<PartitionPOVM> povms;
            if (!o->dir.empty()) {
                povms.push_back(io::read_povm_dir(o->dir, cfg_.tol));
            } else {
                if (o->count < 1 || o->dim < 1 || o->outcomes < 1)
                    fail(ErrorCode::InvalidArgument, "count, dim and outcomes must be positive");
                rnd::Engine rng(cfg_.seed);
                for (long i = 0; i < o->count; ++i) {
                    if (o->kind == "projective")
                        povms.push_back(rnd::projective_povm(o->dim, static_cast<std::size_t>(o->outcomes), rng));
                    else if (o->kind == "generic")
                        povms.push_back(rnd::generic_povm(o->dim, static_cast<std::size_t>(o->outcomes), rng));
                    else
                        fail(ErrorCode::InvalidArgument, "--kind must be projective or generic");
                }
            }
            const auto eps = detail::parse_list(o->eps);
            std::vector<std::string> cols{"index", "outcomes", "dim", "norm1", "min_nonzero_norm", "regular",
                                          "norm1_implies_regular"};
            for (double e : eps) cols.push_back("decidable_eps_" + io::format_number(e));
            w.header(cols);
            for (std::size_t i = 0; i < povms.size(); ++i) {
                const auto &p = povms[i];
                const auto rep = norm1_report(p, cfg_.tol);
                w.cell(static_cast<long>(i)).cell(static_cast<long>(p.size())).cell(static_cast<long>(p.dim()))
                    .cell(rep.exact_verdict).cell(rep.min_nonzero_norm).cell(is_regular_povm(p, cfg_.tol))
                    .cell(norm1_implies_regular_check(p, cfg_.tol));
                for (double e : eps) w.cell(rep.min_nonzero_norm >= 1.0 - e);
                w.end_row();
            }
        };
    }

    void margins(CLI::App &app) {
        struct Opt {
            std::string kind = "angle", region = "0:pi", dims = "8,16,32", axis = "x";
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "margins",
                      "phase_space_obs::number_margin, angle_margin, cartesian_margin_effect and phase_space_effect",
                      "Norms and vacuum probabilities of phase-space effects and their margins.");
        s->add_option("--kind", o->kind, "number | angle | cartesian | strip | polar")->capture_default_str();
        s->add_option("--region", o->region,
                      "number: r1:r2; angle: arc set; cartesian/strip: a:b,c:d; polar: r1:r2@arcs")
            ->capture_default_str();
        s->add_option("--dims", o->dims, "Dimensions d")->capture_default_str();
        s->add_option("--axis", o->axis, "x | y for cartesian and strip")->capture_default_str();
        bodies_["margins"] = [this, o](io::CsvWriter &w) {
            const auto dims = detail::parse_dims(o->dims);
            std::function<Effect(Eigen::Index)> make;
            double bound = NAN;
            if (o->kind == "number") {
                const RealRegion r = parse_real_region(o->region);
                if (r.intervals().size() != 1) fail(ErrorCode::InvalidArgument, "number margin needs one interval");
                const auto iv = r.intervals().front();
                make = [this, iv](Eigen::Index d) { return number_margin(iv.a, iv.b, d, cfg_.tol); };
                if (iv.a == 0.0) bound = std::min(1.0, iv.b * iv.b);
            } else if (o->kind == "angle") {
                const ArcSet x = parse_arc_set(o->region, cfg_.pi_units);
                make = [this, x](Eigen::Index d) { return angle_margin(x, d, cfg_.tol); };
            } else if (o->kind == "cartesian" || o->kind == "strip") {
                const RealRegion x = parse_real_region(o->region);
                const Axis axis = detail::parse_axis(o->axis);
                const bool strip = o->kind == "strip";
                make = [this, x, axis, strip](Eigen::Index d) {
                    return strip ? phase_space_strip_effect(x, d, axis, cfg_.tol)
                                 : cartesian_margin_effect(x, d, axis, cfg_.tol);
                };
            } else if (o->kind == "polar") {
                const PolarRegion z = parse_polar_region(o->region, cfg_.pi_units);
                make = [this, z](Eigen::Index d) { return phase_space_effect(z, d, cfg_.tol); };
                bound = std::min(1.0, z.area() / pi);
            } else {
                fail(ErrorCode::InvalidArgument, "--kind must be number, angle, cartesian, strip or polar");
            }
            w.header({"d", "norm", "min_eigenvalue", "vacuum_probability", "norm_bound"});
            for (Eigen::Index d : dims) {
                const Effect e = make(d);
                w.cell(static_cast<long>(d)).cell(operator_norm(e)).cell(e.min_eigenvalue())
                    .cell(e.matrix()(0, 0).real()).cell(bound).end_row();
            }
        };
    }

    void angle_probe(CLI::App &app) {
        struct Opt {
            std::string arc = "0:pi", theta0 = "pi/2", amps = "1,2,4,8,16";
            long d = 0;
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "angle-probe", "phase_space_obs::angle_margin_norm1_probe",
                      "<alpha|A^theta(Theta)|alpha> for coherent alpha = s e^{i theta0}, with the exact deficit.");
        s->add_option("--arc", o->arc, "Arc set Theta")->capture_default_str();
        s->add_option("--theta0", o->theta0, "Direction inside Theta")->capture_default_str();
        s->add_option("--amplitudes", o->amps, "Amplitudes s")->capture_default_str();
        s->add_option("--d", o->d, "Fixed truncation (default s^2 + 10 s + 10 per row)");
        bodies_["angle-probe"] = [this, o](io::CsvWriter &w) {
            const ArcSet x = parse_arc_set(o->arc, cfg_.pi_units);
            const double theta0 = parse_angle(o->theta0, cfg_.pi_units);
            std::optional<Eigen::Index> d;
            if (o->d > 0) d = o->d;
            w.header({"s", "d", "probability", "deficit", "log10_deficit"});
            for (const auto &r : angle_margin_norm1_probe(x, theta0, detail::parse_list(o->amps), d))
                w.cell(r.s).cell(static_cast<long>(r.d)).cell(r.probability).cell(r.deficit)
                    .cell(r.log10_deficit).end_row();
        };
    }

    void tcs_table(CLI::App &app) {
        struct Opt {
            std::string w = "0", beta = "0";
            long grid = 0;
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "tcs-table", "tcs::marginal_variance and tcs::uncertainty_product",
                      "Marginal variances and uncertainty product of two-photon coherent states.");
        s->add_option("--w", o->w, "Values of w = nu/mu, e.g. 0,0.5,0.5i")->capture_default_str();
        s->add_option("--beta", o->beta, "Displacement beta")->capture_default_str();
        s->add_option("--grid", o->grid, "Use an n x n polar grid of w in the unit disk instead of --w");
        bodies_["tcs-table"] = [this, o](io::CsvWriter &w) {
            const cplx beta = detail::parse_complex(o->beta);
            std::vector<cplx> ws;
            if (o->grid > 0) {
                for (long i = 0; i < o->grid; ++i)
                    for (long j = 0; j < o->grid; ++j)
                        ws.push_back(std::polar(0.975 * static_cast<double>(i) / std::max(1L, o->grid - 1),
                                                two_pi * static_cast<double>(j) / o->grid));
            } else {
                ws = detail::parse_complex_list(o->w);
            }
            w.header({"re_beta", "im_beta", "re_mu", "im_mu", "re_nu", "im_nu", "var_x", "var_y", "product"});
            for (cplx wv : ws) {
                const auto p = TCSParams::from_w(beta, wv);
                w.cell(beta.real()).cell(beta.imag()).cell(p.mu().real()).cell(p.mu().imag())
                    .cell(p.nu().real()).cell(p.nu().imag()).cell(marginal_variance(p, Axis::X))
                    .cell(marginal_variance(p, Axis::Y)).cell(uncertainty_product(p)).end_row();
            }
        };
    }

    void angle_density_cmd(CLI::App &app) {
        struct Opt {
            std::string beta = "0", w = "0", family, params = "2,5,10", phi = "1", theta_mu = "0",
                        theta_nu = "0";
            long points = 64;
            double window = 0.3;
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "angle-density", "tcs::angle_density and the concentration limits",
                      "Angle density g(theta) of a TCS, or concentration masses along a family.");
        s->add_option("--beta", o->beta, "Displacement beta")->capture_default_str();
        s->add_option("--w", o->w, "w = nu/mu")->capture_default_str();
        s->add_option("--points", o->points, "Grid points on [0, 2pi)")->capture_default_str();
        s->add_option("--family", o->family, "coherent | squeezed: emit concentration rows instead");
        s->add_option("--params", o->params, "Amplitudes s (coherent) or |nu| (squeezed)")->capture_default_str();
        s->add_option("--phi", o->phi, "Coherent direction")->capture_default_str();
        s->add_option("--theta-mu", o->theta_mu, "Squeezed arg mu")->capture_default_str();
        s->add_option("--theta-nu", o->theta_nu, "Squeezed arg nu")->capture_default_str();
        s->add_option("--window", o->window, "Half-width of the peak windows")->capture_default_str();
        bodies_["angle-density"] = [this, o](io::CsvWriter &w) {
            if (o->family.empty()) {
                if (o->points < 1) fail(ErrorCode::InvalidArgument, "--points must be positive");
                const auto p = TCSParams::from_w(detail::parse_complex(o->beta), detail::parse_complex(o->w));
                w.header({"theta", "g"});
                for (long k = 0; k < o->points; ++k) {
                    const double th = two_pi * static_cast<double>(k) / o->points;
                    w.cell(th).cell(angle_density(p, th)).end_row();
                }
                return;
            }
            if (!(o->window > 0.0 && o->window < pi / 2))
                fail(ErrorCode::InvalidArgument, "--window must lie in (0, pi/2)");
            const auto params = detail::parse_list(o->params);
            std::vector<ConcentrationRow> rows;
            double peak = 0.0;
            if (o->family == "coherent") {
                peak = parse_angle(o->phi, cfg_.pi_units);
                rows = coherent_concentration(peak, params, o->window);
            } else if (o->family == "squeezed") {
                const double tm = parse_angle(o->theta_mu, cfg_.pi_units);
                const double tn = parse_angle(o->theta_nu, cfg_.pi_units);
                peak = squeezed_peak_angle(tm, tn);
                rows = squeezed_concentration(tm, tn, params, o->window);
            } else {
                fail(ErrorCode::InvalidArgument, "--family must be coherent or squeezed");
            }
            w.header({"parameter", "peak_angle", "total_mass", "peak_mass", "second_peak_mass"});
            for (const auto &r : rows)
                w.cell(r.parameter).cell(peak).cell(r.total_mass).cell(r.peak_mass).cell(r.second_peak_mass).end_row();
        };
    }

    void cantor(CLI::App &app) {
        struct Opt {
            int depth = 24;
            std::string set = "cantor";
            long samples = 0;
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "cantor", "measure_models::cantor_effect_norm and cantor_norm1_on_opens_check",
                      "Norm of E(X) for the fat-Cantor multiplication observable, decided by exact brackets.");
        s->add_option("--depth", o->depth, "Construction depth k")->capture_default_str();
        s->add_option("--set", o->set, "cantor | empty | union(a:b,..) | minus(a:b,..) | within(a:b,..)")
            ->capture_default_str();
        s->add_option("--samples", o->samples, "Also check this many random open unions (seeded)");
        bodies_["cantor"] = [this, o](io::CsvWriter &w) {
            const FatCantorModel m(o->depth);
            const auto x = parse_borel_descriptor(o->set);
            const auto n = cantor_effect_norm(m, x);
            std::optional<bool> opens;
            if (o->samples > 0)
                opens = cantor_norm1_on_opens_check(m, static_cast<int>(o->samples), cfg_.seed);
            std::vector<std::string> cols{"depth", "set", "norm", "bracket_lower", "bracket_upper"};
            if (opens) cols.push_back("opens_norm1");
            w.header(cols);
            w.cell(o->depth).cell("\"" + o->set + "\"").cell(n.norm ? *n.norm : NAN)
                .cell(n.lower.convert_to<double>()).cell(n.upper.convert_to<double>());
            if (opens) w.cell(*opens);
            w.end_row();
            require_resolved(n);
        };
    }

    void covariance(CLI::App &app) {
        struct Opt {
            int n = 8;
            long d = 0;
            std::string subset = "0", alpha;
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "covariance-check",
                      "measure_models::covariant_null_check, cyclic_covariance_deviation and haar_identity_check",
                      "Cyclic covariant observable on Z_N: E(X) for a subset, covariance and the Haar identity.");
        s->add_option("--N", o->n, "Group order N")->capture_default_str();
        s->add_option("--d", o->d, "Hilbert dimension (default N)");
        s->add_option("--subset", o->subset, "Subset X, e.g. 0,2,5")->capture_default_str();
        s->add_option("--alpha", o->alpha, "Integer weights alpha on Z_N for the Haar identity");
        bodies_["covariance-check"] = [this, o](io::CsvWriter &w) {
            const Eigen::Index d = o->d > 0 ? o->d : o->n;
            const auto m = CyclicCovarianceModel::discrete_phase(o->n, d);
            const auto x = detail::parse_subset(o->subset);
            const double norm = operator_norm(m.effect(x, cfg_.tol));
            std::vector<std::string> cols{"N", "d", "subset_size", "norm", "null_iff_empty", "covariance_deviation"};
            std::optional<HaarCheck> haar;
            if (!o->alpha.empty()) {
                std::vector<Rational> alpha;
                for (double a : detail::parse_list(o->alpha)) {
                    if (a != std::floor(a)) fail(ErrorCode::ParseError, "alpha weights must be integers");
                    alpha.emplace_back(static_cast<long>(a));
                }
                haar = haar_identity_check(o->n, alpha, std::set<int>(x.begin(), x.end()));
                cols.insert(cols.end(), {"haar_lhs", "haar_rhs"});
            }
            w.header(cols);
            w.cell(o->n).cell(static_cast<long>(d)).cell(static_cast<long>(std::set<int>(x.begin(), x.end()).size()))
                .cell(norm).cell(covariant_null_check(m, x, cfg_.tol)).cell(cyclic_covariance_deviation(m));
            if (haar) w.cell(haar->lhs.str()).cell(haar->rhs.str());
            w.end_row();
        };
    }

    void variance_demo(CLI::App &app) {
        struct Opt {
            double alpha = 2.0;
            std::string etas = "0.1,0.01,0.001";
            long outcomes = 9;
        };
        auto o = std::make_shared<Opt>();
        auto *s = add(app, "variance-demo", "povm_core::variance_witness and variance",
                      "Low-variance states of a seeded projective real POVM supported in [-alpha, alpha].");
        s->add_option("--alpha", o->alpha, "Support bound alpha")->capture_default_str();
        s->add_option("--etas", o->etas, "Window half-widths eta in (0, 1)")->capture_default_str();
        s->add_option("--outcomes", o->outcomes, "Number of outcomes (and dimension)")->capture_default_str();
        bodies_["variance-demo"] = [this, o](io::CsvWriter &w) {
            if (!(o->alpha > 0.0)) fail(ErrorCode::InvalidArgument, "--alpha must be positive");
            if (o->outcomes < 2 || o->outcomes > 64) fail(ErrorCode::InvalidArgument, "--outcomes must lie in [2, 64]");
            rnd::Engine rng(cfg_.seed);
            // Seeded values in [-alpha, alpha] with the endpoints and a cluster near 0.
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            std::vector<double> values{-o->alpha, o->alpha, 0.0};
            while (static_cast<long>(values.size()) < o->outcomes) {
                const double scale = values.size() % 2 ? 0.08 : 1.0;
                values.push_back(o->alpha * scale * unit(rng));
            }
            const auto d = static_cast<Eigen::Index>(values.size());
            const ComplexMatrix u = rnd::unitary(d, rng);
            std::vector<Outcome> outcomes;
            std::vector<Effect> effects;
            for (Eigen::Index k = 0; k < d; ++k) {
                outcomes.push_back({"x" + std::to_string(k), values[static_cast<std::size_t>(k)]});
                effects.push_back(Effect::validate(projector(u.col(k)), cfg_.tol));
            }
            const auto p = PartitionPOVM::make(outcomes, effects, cfg_.tol);
            w.header({"eta", "centre", "probability", "variance", "bound"});
            for (double eta : detail::parse_list(o->etas)) {
                const auto r = variance_witness(p, eta, cfg_.tol);
                w.cell(eta).cell(r.centre).cell(r.probability).cell(r.variance).cell(r.bound).end_row();
            }
        };
    }

    std::ostream &out_;
    std::ostream &err_;
    RunConfig cfg_;
    std::string active_;
    std::map<std::string, Body> bodies_;
};

/// Runs one invocation; args exclude the program name.
inline int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    Runner r(out, err);
    return r.run(std::move(args));
}

} // namespace normone::cli
