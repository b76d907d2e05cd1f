#pragma once

#include <cstdint>

namespace nsb {

// SplitMix64 stream (Steele/Lea/Vigna constants). Chosen because it is a
// fixed, documented 64-bit algorithm: transcripts and sampled boxes are
// identical across platforms and compilers for a given seed.
//
// Substreams: substream(k) hashes the current state together with k through
// the same finalizer, giving independent streams for parallel restarts and
// sweep points without coordinating the parent stream.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n). Rejection on the top of the range.
    std::uint64_t next_below(std::uint64_t n);

    // One fair bit.
    int next_bit() { return static_cast<int>(next_u64() >> 63); }

    // 53-bit uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // 53 uniform bits as an integer, for exact threshold comparisons.
    std::uint64_t next_u53() { return next_u64() >> 11; }

    // Independent child stream for worker index k; deterministic in (state, k).
    Rng substream(std::uint64_t k) const {
        std::uint64_t z = state_ ^ ((k + 1) * 0xD2B74407B1CE6E93ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return Rng(z ^ (z >> 31));
    }

  private:
    std::uint64_t state_;
};

}  // namespace nsb
