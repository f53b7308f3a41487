// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "splitscore/math.hpp"

namespace splitscore {

/// Philox4x32-10 block function (Salmon et al., SC 2011).
/// Counter-based: the output is a pure function of (counter, key), so any
/// position in any stream can be generated independently of draw order.
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        const std::uint64_t prod0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t prod1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
        const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Stream-id layout: [63:60] domain, [59:44] replication, [43:20] test,
/// [19:0] partition. Every random quantity in the system is addressed by a
/// stream id plus a position, which makes results independent of iteration
/// order and worker count.
namespace stream_domain {
inline constexpr std::uint64_t dataset = 1;
inline constexpr std::uint64_t split = 2;
inline constexpr std::uint64_t unit_outcomes = 3;
inline constexpr std::uint64_t unit_shuffle = 4;
}  // namespace stream_domain

inline std::uint64_t make_stream_id(std::uint64_t domain, std::uint64_t replication,
                                    std::uint64_t test_index, std::uint64_t partition = 0) {
    if (domain >= (1ull << 4)) throw std::out_of_range("stream domain exceeds 4 bits");
    if (replication >= (1ull << 16)) throw std::out_of_range("replication index exceeds 16 bits");
    if (test_index >= (1ull << 24)) throw std::out_of_range("test index exceeds 24 bits");
    if (partition >= (1ull << 20)) throw std::out_of_range("partition index exceeds 20 bits");
    return (domain << 60) | (replication << 44) | (test_index << 20) | partition;
}

/// One logical random stream: a 64-bit id under a 64-bit master seed, with
/// 2^64 addressable uint64 positions. Draws may be taken sequentially or by
/// absolute position; both give the same values for the same position.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          stream_id_(stream_id) {}

    std::uint64_t u64_at(std::uint64_t index) {
        const std::uint64_t block = index >> 1;
        if (!has_block_ || block != cached_block_) load_block(block);
        return words_[index & 1];
    }

    /// Uniform draw in the open interval (0, 1), 53 random bits.
    double unit_double_at(std::uint64_t index) {
        return (static_cast<double>(u64_at(index) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exact inverse-CDF standard normal draw at the given position.
    double normal_at(std::uint64_t index) { return normal_quantile(unit_double_at(index)); }

    std::uint64_t next_u64() { return u64_at(cursor_++); }
    double next_unit_double() { return unit_double_at(cursor_++); }
    double next_normal() { return normal_at(cursor_++); }
    double next_normal(double mean, double sd) { return mean + sd * next_normal(); }

    /// Unbiased uniform integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    std::uint64_t stream_id() const { return stream_id_; }

  private:
    void load_block(std::uint64_t block) {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
            static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
        const auto out = philox4x32_10(ctr, key_);
        words_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        words_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
        cached_block_ = block;
        has_block_ = true;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
    std::uint64_t cursor_ = 0;
    std::uint64_t cached_block_ = 0;
    bool has_block_ = false;
    std::array<std::uint64_t, 2> words_{};
};

}  // namespace splitscore
