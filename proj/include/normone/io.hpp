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
 * CSV interchange: numbers at 12 significant digits, matrices as one line
 * per row of "re,im" pairs, and POVM directories (matrix files plus a
 * manifest.txt of "label,value,filename" lines).
 */

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "normone/arcs.hpp"
#include "normone/povm.hpp"

namespace normone::io {

inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream &out) : out_(out) {}

    void comment(const std::string &text) { out_ << "# " << text << '\n'; }

    void header(const std::vector<std::string> &columns) { row_strings(columns); }

    CsvWriter &cell(const std::string &s) {
        pending_.push_back(s);
        return *this;
    }
    CsvWriter &cell(double x) { return cell(format_number(x)); }
    CsvWriter &cell(long x) { return cell(std::to_string(x)); }
    CsvWriter &cell(int x) { return cell(std::to_string(x)); }
    CsvWriter &cell(bool b) { return cell(std::string(b ? "true" : "false")); }
    void end_row() {
        row_strings(pending_);
        pending_.clear();
    }

  private:
    void row_strings(const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    std::ostream &out_;
    std::vector<std::string> pending_;
};

inline void write_matrix(std::ostream &out, const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << format_number(m(i, j).real()) << ','
                << format_number(m(i, j).imag());
        out << '\n';
    }
}

/// Each line holds either d reals or d "re,im" pairs.
inline ComplexMatrix read_matrix(std::istream &in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<double> row;
        for (auto cell : detail::split(t, ',')) row.push_back(detail::parse_number(cell));
        rows.push_back(std::move(row));
    }
    const auto d = static_cast<Eigen::Index>(rows.size());
    if (d == 0) fail(ErrorCode::ParseError, "matrix file is empty");
    ComplexMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto &row = rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) == 2 * d) {
            for (Eigen::Index j = 0; j < d; ++j)
                m(i, j) = cplx(row[static_cast<std::size_t>(2 * j)], row[static_cast<std::size_t>(2 * j + 1)]);
        } else if (static_cast<Eigen::Index>(row.size()) == d) {
            for (Eigen::Index j = 0; j < d; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
        } else {
            fail(ErrorCode::ParseError, "matrix row " + std::to_string(i) + " has " +
                                            std::to_string(row.size()) + " values, expected " +
                                            std::to_string(d) + " or " + std::to_string(2 * d));
        }
    }
    return m;
}

inline ComplexMatrix read_matrix_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
    return read_matrix(in);
}

inline PartitionPOVM read_povm_dir(const std::filesystem::path &dir, const ToleranceConfig &cfg = {}) {
    std::ifstream manifest(dir / "manifest.txt");
    if (!manifest) fail(ErrorCode::ParseError, "no manifest.txt in " + dir.string());
    std::vector<Outcome> outcomes;
    std::vector<Effect> effects;
    std::string line;
    while (std::getline(manifest, line)) {
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto parts = detail::split(t, ',');
        if (parts.size() != 3)
            fail(ErrorCode::ParseError, "manifest line '" + std::string(t) + "' needs label,value,filename");
        Outcome o{std::string(detail::trim(parts[0])), std::nullopt};
        if (!detail::trim(parts[1]).empty()) o.value = detail::parse_number(parts[1]);
        outcomes.push_back(std::move(o));
        effects.push_back(Effect::validate(read_matrix_file(dir / std::string(detail::trim(parts[2]))), cfg));
    }
    return PartitionPOVM::make(std::move(outcomes), std::move(effects), cfg);
}

inline void write_povm_dir(const std::filesystem::path &dir, const PartitionPOVM &p) {
    std::filesystem::create_directories(dir);
    std::ofstream manifest(dir / "manifest.txt");
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::string file = "effect_" + std::to_string(i) + ".csv";
        const auto &o = p.outcome(i);
        manifest << o.label << ',' << (o.value ? format_number(*o.value) : "") << ',' << file << '\n';
        std::ofstream out(dir / file);
        write_matrix(out, p.effect(i).matrix());
    }
}

} // namespace normone::io
