// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace splitscore {

/// Execution settings threaded through the pipeline. `replication` salts the
/// stream derivation so outer replication loops get disjoint randomness.
struct ExecPolicy {
    int workers = 1;
    std::uint64_t replication = 0;
};

/// Runs fn(begin, end) over contiguous chunks of [0, n). Work is assigned
/// statically by index, so results must be written by index; with that
/// discipline the output is identical for every worker count.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
    if (n <= 0) return;
    if (workers < 1) workers = 1;
    const auto chunks = static_cast<std::int64_t>(workers) < n ? workers
                                                               : static_cast<int>(n);
    if (chunks == 1) {
        fn(std::int64_t{0}, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(chunks) - 1);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run_chunk = [&](std::int64_t begin, std::int64_t end) {
        try {
            fn(begin, end);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    const std::int64_t base = n / chunks;
    const std::int64_t extra = n % chunks;
    std::int64_t begin = 0;
    for (int c = 0; c < chunks; ++c) {
        const std::int64_t len = base + (c < extra ? 1 : 0);
        const std::int64_t end = begin + len;
        if (c == chunks - 1) {
            run_chunk(begin, end);
        } else {
            threads.emplace_back(run_chunk, begin, end);
        }
        begin = end;
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace splitscore
