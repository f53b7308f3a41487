// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splitscore {

/// Stable error categories. The CLI maps each to a distinct exit code and
/// prints `category: message` on stderr.
enum class errc {
    alpha_out_of_range,
    incompatible_measure,
    non_positive_variance,
    invalid_size,
    empty_split,
    empty_input,
    insufficient_tests,
    invalid_level,
    degenerate_baseline,
    parse_error,
    duplicate_test_id,
    io_error,
    precision_unreachable,
    missing_true_delta,
};

constexpr std::string_view to_string(errc code) {
    switch (code) {
        case errc::alpha_out_of_range: return "AlphaOutOfRange";
        case errc::incompatible_measure: return "IncompatibleMeasure";
        case errc::non_positive_variance: return "NonPositiveVariance";
        case errc::invalid_size: return "InvalidSize";
        case errc::empty_split: return "EmptySplit";
        case errc::empty_input: return "EmptyInput";
        case errc::insufficient_tests: return "InsufficientTests";
        case errc::invalid_level: return "InvalidLevel";
        case errc::degenerate_baseline: return "DegenerateBaseline";
        case errc::parse_error: return "ParseError";
        case errc::duplicate_test_id: return "DuplicateTestId";
        case errc::io_error: return "IoError";
        case errc::precision_unreachable: return "PrecisionUnreachable";
        case errc::missing_true_delta: return "MissingTrueDelta";
    }
    return "UnknownError";
}

/// Exit code used by the CLI for a given category (0 = success, 1 = unexpected).
constexpr int exit_code(errc code) { return 2 + static_cast<int>(code); }

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void throw_error(errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace splitscore
