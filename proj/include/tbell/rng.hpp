#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tbell {

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
///
/// Output block k of stream (seed, stream_id) is the encryption of the
/// 128-bit counter (k, stream_id) under key seed, so distinct streams can
/// never overlap and a stream is reproducible from (seed, stream_id) alone.
/// The protocol engine derives one stream per throw_id, which makes sharded
/// and serial execution emit identical records.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = block(block_index_++);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unbiased integer in [0, n); rejection-sampled.
    std::uint32_t uniform_below(std::uint32_t n) {
        const std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() / n * n;
        std::uint32_t x;
        do {
            x = next_u32();
        } while (x >= limit);
        return x % n;
    }

    /// Raw Philox4x32-10 block for counter (ctr0..3) and key (k0,k1).
    static std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                                   std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = kMult0 * static_cast<std::uint64_t>(ctr[0]);
            const std::uint64_t p1 = kMult1 * static_cast<std::uint64_t>(ctr[2]);
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

  private:
    std::array<std::uint32_t, 4> block(std::uint64_t k) const {
        return philox4x32({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32),
                           static_cast<std::uint32_t>(stream_),
                           static_cast<std::uint32_t>(stream_ >> 32)},
                          key_);
    }

    static constexpr std::uint32_t kMult0 = 0xD2511F53u;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

}  // namespace tbell
