// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "splitscore/core.hpp"
#include "splitscore/errors.hpp"
#include "splitscore/rng.hpp"

namespace splitscore {

/// Joint law of the training/evaluation estimates for one random partition,
/// conditional on the parent test's full-sample estimate. The covariance is
/// rank-one singular: the two estimates are perfectly negatively correlated
/// because they must aggregate back to the parent estimate.
struct ConditionalSplitLaw {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double cov_ab = 0.0;
};

/// Deterministic split variances (tau^2/alpha, tau^2/(1-alpha)).
inline std::pair<double, double> split_variances(double tau_sq, double alpha) {
    validate_alpha(alpha);
    if (!(tau_sq > 0.0)) throw_error(errc::non_positive_variance, "tau_sq must be positive");
    return {tau_sq / alpha, tau_sq / (1.0 - alpha)};
}

inline ConditionalSplitLaw conditional_law(const TestSummary& test, double alpha) {
    validate_alpha(alpha);
    validate(test);
    const double tau_sq = test.tau_sq;
    return ConditionalSplitLaw{test.delta_hat, test.delta_hat, tau_sq / alpha - tau_sq,
                               tau_sq / (1.0 - alpha) - tau_sq, -tau_sq};
}

/// Builds the split pair for partition index s (1-based) from a single
/// standard normal draw. The training estimate is sampled from its marginal
/// and the evaluation estimate is set by the exact aggregation constraint
/// alpha*a + (1-alpha)*b = parent, which makes the reconstruction identity
/// hold to rounding error on every draw.
inline SplitPair make_split_pair(const TestSummary& test, double alpha, int partition_index,
                                 double standard_normal) {
    const double tau_sq = test.tau_sq;
    const double sd_a = std::sqrt(tau_sq * (1.0 - alpha) / alpha);
    const double delta_a = test.delta_hat + sd_a * standard_normal;
    const double delta_b = (test.delta_hat - alpha * delta_a) / (1.0 - alpha);
    return SplitPair{partition_index, delta_a, tau_sq / alpha, delta_b, tau_sq / (1.0 - alpha)};
}

/// Identifies which replication/test a stream belongs to, so that draws are
/// reproducible regardless of iteration order or worker count.
struct StreamKey {
    std::uint64_t replication = 0;
    std::uint64_t test_index = 0;
};

/// Draws S split pairs for one test directly from the conditional law,
/// without unit-level data. Partition s uses position s-1 of the test's
/// split stream, so a prefix of partitions is stable as S grows.
inline std::vector<SplitPair> draw_split_pairs(const TestSummary& test, const SplitConfig& config,
                                               StreamKey key = {}) {
    validate(config);
    validate(test);
    RngStream stream(config.master_seed,
                     make_stream_id(stream_domain::split, key.replication, key.test_index));
    std::vector<SplitPair> pairs;
    pairs.reserve(static_cast<std::size_t>(config.num_partitions));
    for (int s = 1; s <= config.num_partitions; ++s) {
        pairs.push_back(make_split_pair(test, config.alpha, s,
                                        stream.normal_at(static_cast<std::uint64_t>(s) - 1)));
    }
    return pairs;
}

}  // namespace splitscore
