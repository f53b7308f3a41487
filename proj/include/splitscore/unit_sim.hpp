// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "splitscore/core.hpp"
#include "splitscore/errors.hpp"
#include "splitscore/plugin_sampler.hpp"
#include "splitscore/rng.hpp"

namespace splitscore {

/// Synthetic unit-level outcomes for one balanced A/B test.
struct UnitPanel {
    std::string parent_test_id;
    int n_per_arm = 0;
    std::vector<double> treatment;
    std::vector<double> control;
};

/// Simulates unit outcomes so that the difference-in-means estimator has
/// sampling variance exactly tau_sq: per-unit variance is tau_sq*n/2 in each
/// arm, and the treatment mean is shifted by true_delta.
inline UnitPanel simulate_units(double true_delta, double tau_sq, int n_per_arm,
                                RngStream& stream, std::string parent_test_id = {}) {
    if (n_per_arm < 2) throw_error(errc::invalid_size, "n_per_arm must be >= 2");
    if (!(tau_sq > 0.0)) throw_error(errc::non_positive_variance, "tau_sq must be positive");
    const double unit_sd = std::sqrt(tau_sq * n_per_arm / 2.0);
    UnitPanel panel;
    panel.parent_test_id = std::move(parent_test_id);
    panel.n_per_arm = n_per_arm;
    panel.treatment.resize(static_cast<std::size_t>(n_per_arm));
    panel.control.resize(static_cast<std::size_t>(n_per_arm));
    for (auto& y : panel.treatment) y = true_delta + unit_sd * stream.next_normal();
    for (auto& y : panel.control) y = unit_sd * stream.next_normal();
    return panel;
}

/// Difference in means over the full panel.
inline double full_sample_estimate(const UnitPanel& panel) {
    const double sum_t = std::accumulate(panel.treatment.begin(), panel.treatment.end(), 0.0);
    const double sum_c = std::accumulate(panel.control.begin(), panel.control.end(), 0.0);
    return (sum_t - sum_c) / panel.n_per_arm;
}

namespace detail {

/// Sum of a simple random sample of `take` values, chosen by a partial
/// Fisher-Yates pass over an index scratch buffer.
inline double sample_sum(const std::vector<double>& values, int take, RngStream& stream,
                         std::vector<std::uint32_t>& scratch) {
    const auto n = static_cast<std::uint32_t>(values.size());
    scratch.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) scratch[i] = i;
    double sum = 0.0;
    for (int k = 0; k < take; ++k) {
        const auto j = static_cast<std::uint32_t>(k) +
                       static_cast<std::uint32_t>(stream.next_below(n - static_cast<std::uint32_t>(k)));
        std::swap(scratch[static_cast<std::uint32_t>(k)], scratch[j]);
        sum += values[scratch[static_cast<std::uint32_t>(k)]];
    }
    return sum;
}

}  // namespace detail

/// Randomly partitions each arm with fraction alpha to split a (deterministic
/// per-arm count, rounded half to even) and re-estimates both splits.
/// Split variances come from the deterministic formula, never from data.
inline SplitPair partition_and_estimate(const UnitPanel& panel, double alpha, double parent_tau_sq,
                                        int partition_index, RngStream& stream) {
    validate_alpha(alpha);
    const int n = panel.n_per_arm;
    const int take = static_cast<int>(std::nearbyint(alpha * n));
    if (take < 1 || take > n - 1) {
        throw_error(errc::empty_split, "alpha*n rounds to an empty split in some arm");
    }
    const double sum_t = std::accumulate(panel.treatment.begin(), panel.treatment.end(), 0.0);
    const double sum_c = std::accumulate(panel.control.begin(), panel.control.end(), 0.0);

    std::vector<std::uint32_t> scratch;
    const double sum_ta = detail::sample_sum(panel.treatment, take, stream, scratch);
    const double sum_ca = detail::sample_sum(panel.control, take, stream, scratch);

    const double delta_a = (sum_ta - sum_ca) / take;
    const double delta_b = ((sum_t - sum_ta) - (sum_c - sum_ca)) / (n - take);
    const auto [tau_sq_a, tau_sq_b] = split_variances(parent_tau_sq, alpha);
    return SplitPair{partition_index, delta_a, tau_sq_a, delta_b, tau_sq_b};
}

/// S random repartitions of the same panel. Partitions share the underlying
/// units, so they are dependent across s by construction.
inline std::vector<SplitPair> repartition_series(const UnitPanel& panel, const SplitConfig& config,
                                                 double parent_tau_sq, StreamKey key = {}) {
    validate(config);
    std::vector<SplitPair> pairs;
    pairs.reserve(static_cast<std::size_t>(config.num_partitions));
    for (int s = 1; s <= config.num_partitions; ++s) {
        RngStream stream(config.master_seed,
                         make_stream_id(stream_domain::unit_shuffle, key.replication,
                                        key.test_index, static_cast<std::uint64_t>(s)));
        pairs.push_back(partition_and_estimate(panel, config.alpha, parent_tau_sq, s, stream));
    }
    return pairs;
}

/// Debug dump (unit_id, arm, outcome); not a stable format.
inline void dump_panel(const UnitPanel& panel, std::ostream& out) {
    out << "unit_id,arm,outcome\n";
    char buf[64];
    for (std::size_t i = 0; i < panel.treatment.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", panel.treatment[i]);
        out << 't' << i << ",treatment," << buf << '\n';
    }
    for (std::size_t i = 0; i < panel.control.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", panel.control[i]);
        out << 'c' << i << ",control," << buf << '\n';
    }
}

}  // namespace splitscore
