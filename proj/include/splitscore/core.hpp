// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "splitscore/errors.hpp"

namespace splitscore {

/// One A/B test's full-sample estimate. Sampling variances are treated as
/// known throughout; `true_delta` is populated only for simulated data.
struct TestSummary {
    std::string test_id;
    double delta_hat = 0.0;
    double tau_sq = 0.0;
    std::optional<double> true_delta;
};

inline void validate(const TestSummary& test) {
    if (!(test.tau_sq > 0.0) || !std::isfinite(test.tau_sq)) {
        throw_error(errc::non_positive_variance,
                    "tau_sq must be positive and finite for test '" + test.test_id + "'");
    }
    if (!std::isfinite(test.delta_hat)) {
        throw_error(errc::parse_error, "delta_hat must be finite for test '" + test.test_id + "'");
    }
    if (test.true_delta && !std::isfinite(*test.true_delta)) {
        throw_error(errc::parse_error, "true_delta must be finite for test '" + test.test_id + "'");
    }
}

/// Sample-split settings: training fraction, number of random partitions,
/// and the master seed all randomness derives from.
struct SplitConfig {
    double alpha = 0.5;
    int num_partitions = 30;
    std::uint64_t master_seed = 0;
};

inline void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw_error(errc::alpha_out_of_range, "alpha must lie in the open interval (0, 1), got " +
                                                  std::to_string(alpha));
    }
}

inline void validate(const SplitConfig& config) {
    validate_alpha(config.alpha);
    if (config.num_partitions < 1) {
        throw_error(errc::invalid_size, "num_partitions must be >= 1, got " +
                                            std::to_string(config.num_partitions));
    }
}

/// Training/evaluation estimates for one random partition of one test.
/// Variances are deterministic functions of the parent variance and alpha,
/// never re-estimated from data.
struct SplitPair {
    int partition_index = 0;  // s in [1..S]
    double delta_hat_a = 0.0;
    double tau_sq_a = 0.0;
    double delta_hat_b = 0.0;
    double tau_sq_b = 0.0;
};

enum class MethodologyKind {
    identity,
    fixed_shrinkage,
    bayes_shrinkage,
    threshold_rule,
    bayes_sign_rule,
};

enum class OutputClass { estimate, decision };

/// A plug-in methodology: a deterministic map from (delta_hat, tau_sq) to an
/// estimate or a 0/1 launch decision. The built-in kinds cover shrinkage
/// estimators and threshold decision rules; arbitrary deterministic maps can
/// be supplied to the scoring pipeline as callables (see methodologies.hpp).
struct MethodologySpec {
    MethodologyKind kind = MethodologyKind::identity;
    double parameter = 0.0;  // w, sigma_sq, or c depending on kind

    static MethodologySpec identity() { return {MethodologyKind::identity, 0.0}; }
    static MethodologySpec fixed_shrinkage(double w) { return {MethodologyKind::fixed_shrinkage, w}; }
    static MethodologySpec bayes_shrinkage(double sigma_sq) {
        return {MethodologyKind::bayes_shrinkage, sigma_sq};
    }
    static MethodologySpec threshold_rule(double c) { return {MethodologyKind::threshold_rule, c}; }
    static MethodologySpec bayes_sign_rule(double sigma_sq) {
        return {MethodologyKind::bayes_sign_rule, sigma_sq};
    }

    OutputClass output_class() const {
        switch (kind) {
            case MethodologyKind::identity:
            case MethodologyKind::fixed_shrinkage:
            case MethodologyKind::bayes_shrinkage:
                return OutputClass::estimate;
            case MethodologyKind::threshold_rule:
            case MethodologyKind::bayes_sign_rule:
                return OutputClass::decision;
        }
        return OutputClass::estimate;
    }

    friend bool operator==(const MethodologySpec&, const MethodologySpec&) = default;
};

inline void validate(const MethodologySpec& spec) {
    switch (spec.kind) {
        case MethodologyKind::identity:
            break;
        case MethodologyKind::fixed_shrinkage:
            if (!(spec.parameter > 0.0 && spec.parameter <= 1.0)) {
                throw_error(errc::parse_error, "fixed_shrinkage weight must lie in (0, 1]");
            }
            break;
        case MethodologyKind::bayes_shrinkage:
        case MethodologyKind::bayes_sign_rule:
            if (!(spec.parameter > 0.0) || !std::isfinite(spec.parameter)) {
                throw_error(errc::non_positive_variance,
                            "prior variance sigma_sq must be positive and finite");
            }
            break;
        case MethodologyKind::threshold_rule:
            if (!(spec.parameter >= 0.0) || !std::isfinite(spec.parameter)) {
                throw_error(errc::parse_error, "launch threshold c must be >= 0");
            }
            break;
    }
}

enum class PerformanceMeasure {
    bias,
    squared_error,
    decision_value,
    launch_only_decision_value,
};

constexpr std::string_view to_string(PerformanceMeasure measure) {
    switch (measure) {
        case PerformanceMeasure::bias: return "bias";
        case PerformanceMeasure::squared_error: return "squared-error";
        case PerformanceMeasure::decision_value: return "decision-value";
        case PerformanceMeasure::launch_only_decision_value: return "launch-only";
    }
    return "unknown";
}

inline PerformanceMeasure parse_measure(std::string_view text) {
    if (text == "bias") return PerformanceMeasure::bias;
    if (text == "squared-error" || text == "squared_error") return PerformanceMeasure::squared_error;
    if (text == "decision-value" || text == "decision_value") return PerformanceMeasure::decision_value;
    if (text == "launch-only" || text == "launch_only" || text == "launch-only-decision-value" ||
        text == "launch_only_decision_value") {
        return PerformanceMeasure::launch_only_decision_value;
    }
    throw_error(errc::parse_error, "unknown performance measure '" + std::string(text) + "'");
}

constexpr bool requires_decision(PerformanceMeasure measure) {
    return measure == PerformanceMeasure::decision_value ||
           measure == PerformanceMeasure::launch_only_decision_value;
}

inline bool compatible(PerformanceMeasure measure, OutputClass output_class) {
    return requires_decision(measure) == (output_class == OutputClass::decision);
}

namespace detail {
inline std::string format_param(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}
}  // namespace detail

/// Canonical text form, used by the CLI and in serialized reports:
/// identity | fixed:w=<v> | bayes:sigma_sq=<v> | threshold:c=<v> |
/// bayes-sign:sigma_sq=<v>
inline std::string to_string(const MethodologySpec& spec) {
    switch (spec.kind) {
        case MethodologyKind::identity: return "identity";
        case MethodologyKind::fixed_shrinkage: return "fixed:w=" + detail::format_param(spec.parameter);
        case MethodologyKind::bayes_shrinkage:
            return "bayes:sigma_sq=" + detail::format_param(spec.parameter);
        case MethodologyKind::threshold_rule:
            return "threshold:c=" + detail::format_param(spec.parameter);
        case MethodologyKind::bayes_sign_rule:
            return "bayes-sign:sigma_sq=" + detail::format_param(spec.parameter);
    }
    throw_error(errc::parse_error, "unknown methodology kind");
}

inline MethodologySpec parse_methodology(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    std::string_view args = (colon == std::string_view::npos) ? std::string_view{}
                                                              : text.substr(colon + 1);
    auto param_value = [&](std::string_view expected_name) {
        const auto eq = args.find('=');
        if (eq == std::string_view::npos || args.substr(0, eq) != expected_name) {
            throw_error(errc::parse_error, "methodology '" + std::string(head) + "' expects " +
                                               std::string(expected_name) + "=<value>");
        }
        const std::string value(args.substr(eq + 1));
        try {
            std::size_t pos = 0;
            const double parsed = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
            return parsed;
        } catch (const std::exception&) {
            throw_error(errc::parse_error, "bad numeric value '" + value + "' in methodology spec");
        }
    };

    MethodologySpec spec;
    if (head == "identity") {
        if (!args.empty()) throw_error(errc::parse_error, "identity takes no parameters");
        spec = MethodologySpec::identity();
    } else if (head == "fixed") {
        spec = MethodologySpec::fixed_shrinkage(param_value("w"));
    } else if (head == "bayes") {
        spec = MethodologySpec::bayes_shrinkage(param_value("sigma_sq"));
    } else if (head == "threshold") {
        spec = MethodologySpec::threshold_rule(param_value("c"));
    } else if (head == "bayes-sign" || head == "bayes_sign") {
        spec = MethodologySpec::bayes_sign_rule(param_value("sigma_sq"));
    } else {
        throw_error(errc::parse_error, "unknown methodology '" + std::string(head) + "'");
    }
    validate(spec);
    return spec;
}

/// The validated (config, methodology, measure) triple; returned unchanged by
/// validate_run_config so validation is idempotent by construction.
struct RunSettings {
    SplitConfig split;
    MethodologySpec methodology;
    PerformanceMeasure measure = PerformanceMeasure::squared_error;
};

inline RunSettings validate_run_config(const SplitConfig& config, const MethodologySpec& methodology,
                                       PerformanceMeasure measure) {
    validate(config);
    validate(methodology);
    if (!compatible(measure, methodology.output_class())) {
        throw_error(errc::incompatible_measure,
                    std::string("measure '") + std::string(to_string(measure)) +
                        "' is incompatible with methodology '" + to_string(methodology) + "'");
    }
    return RunSettings{config, methodology, measure};
}

}  // namespace splitscore
