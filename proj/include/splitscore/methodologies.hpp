// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>

#include "splitscore/core.hpp"
#include "splitscore/errors.hpp"

namespace splitscore {

/// Output of a methodology on one training split: a real estimate, or
/// exactly 0.0 / 1.0 for launch decisions.
struct MethodologyOutput {
    double value = 0.0;
    OutputClass output_class = OutputClass::estimate;
};

/// Applies a plug-in methodology to a training-split estimate. Pure function
/// of its arguments; decisions use strict inequality, so ties never launch.
inline MethodologyOutput apply(const MethodologySpec& spec, double delta_hat, double tau_sq) {
    if (!(tau_sq > 0.0) || !std::isfinite(tau_sq)) {
        throw_error(errc::non_positive_variance, "methodology requires tau_sq > 0");
    }
    switch (spec.kind) {
        case MethodologyKind::identity:
            return {delta_hat, OutputClass::estimate};
        case MethodologyKind::fixed_shrinkage:
            return {spec.parameter * delta_hat, OutputClass::estimate};
        case MethodologyKind::bayes_shrinkage: {
            const double weight = spec.parameter / (spec.parameter + tau_sq);
            return {weight * delta_hat, OutputClass::estimate};
        }
        case MethodologyKind::threshold_rule:
            return {delta_hat > std::sqrt(tau_sq) * spec.parameter ? 1.0 : 0.0,
                    OutputClass::decision};
        case MethodologyKind::bayes_sign_rule: {
            const double posterior_mean = spec.parameter / (spec.parameter + tau_sq) * delta_hat;
            return {posterior_mean > 0.0 ? 1.0 : 0.0, OutputClass::decision};
        }
    }
    throw_error(errc::parse_error, "unknown methodology kind");
}

/// Extension point: any deterministic map (delta_hat, tau_sq) -> output can be
/// scored by the evaluation pipeline, not only the built-in kinds.
using MethodologyFn = std::function<MethodologyOutput(double delta_hat, double tau_sq)>;

inline MethodologyFn to_function(const MethodologySpec& spec) {
    validate(spec);
    return [spec](double delta_hat, double tau_sq) { return apply(spec, delta_hat, tau_sq); };
}

}  // namespace splitscore
