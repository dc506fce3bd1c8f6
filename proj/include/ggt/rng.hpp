// Deterministic random draws. Every sampled quantity in the library derives
// from a user seed plus a sample index, so results are independent of worker
// count and scheduling. Distribution code is self-contained (no libstdc++
// distribution objects) so the exact stream is part of the artifact contract.
#pragma once

#include <cstdint>

namespace ggt {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent stream for (seed, index); used to shard sampling by index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x51ed2701ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xd1b54a32d192ed03ULL)) {}

    std::uint64_t next() {
        state_ = splitmix64(state_);
        return state_;
    }

    /// Uniform in [0, n). n = 0 returns 0.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        // rejection sampling on the top bits; bias-free
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

private:
    std::uint64_t state_;
};

}  // namespace ggt
