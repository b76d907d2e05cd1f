#include "core/rng.hpp"

namespace nsb {

std::uint64_t Rng::next_below(std::uint64_t n) {
    if (n == 0) return 0;
    // Reject draws from the final partial block so every residue is equally
    // likely. The loop runs once in the overwhelmingly common case.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        std::uint64_t v = next_u64();
        if (v < limit) return v % n;
    }
}

}  // namespace nsb
