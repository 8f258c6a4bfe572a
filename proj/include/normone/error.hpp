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
 * Exception types shared by every module.
 *
 * Each failure carries an ErrorCode so callers (the CLI in particular) can
 * map it onto an exit status without string matching. Numerical failures
 * (eigensolver, quadrature, insufficient depth) are distinguished from
 * input validation failures via is_numerical().
 */

#pragma once

#include <stdexcept>
#include <string>

namespace normone {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    NotHermitian,
    SpectrumOutOfRange,
    TrivialEffect,
    NotInvertible,
    TooManyOutcomes,
    NotDecidable,
    GramNotPSD,
    SequenceNotConcentrating,
    TruncationTooSmall,
    ZeroTotalMeasure,
    ParseError,
    EigenNonConvergence,
    QuadratureFailure,
    DepthInsufficient,
};

inline const char *to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::TrivialEffect: return "TrivialEffect";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::TooManyOutcomes: return "TooManyOutcomes";
    case ErrorCode::NotDecidable: return "NotDecidable";
    case ErrorCode::GramNotPSD: return "GramNotPSD";
    case ErrorCode::SequenceNotConcentrating: return "SequenceNotConcentrating";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::ZeroTotalMeasure: return "ZeroTotalMeasure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EigenNonConvergence: return "EigenNonConvergence";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

    /// True for failures of a numerical method rather than of the input.
    [[nodiscard]] bool is_numerical() const noexcept {
        return code_ == ErrorCode::EigenNonConvergence ||
               code_ == ErrorCode::QuadratureFailure ||
               code_ == ErrorCode::DepthInsufficient;
    }

  private:
    ErrorCode code_;
};

/// Raised by the epsilon decider; carries the norm that fell short.
class NotDecidableError : public Error {
  public:
    NotDecidableError(double norm, double epsilon)
        : Error(ErrorCode::NotDecidable,
                "effect norm " + std::to_string(norm) +
                    " is below 1 - epsilon = " + std::to_string(1.0 - epsilon)),
          norm_(norm) {}

    [[nodiscard]] double norm() const noexcept { return norm_; }

  private:
    double norm_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) {
    throw Error(code, what);
}

} // namespace normone
