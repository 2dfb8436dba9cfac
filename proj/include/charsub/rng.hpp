// Seeded deterministic RNG for the randomized sweeps. splitmix64 underneath:
// tiny, fast, and the byte stream is identical on every platform, which the
// reproducibility contract requires.
#pragma once

#include <cstdint>

namespace charsub {

inline constexpr std::uint64_t kDefaultSeed = 0x5DEECE66DULL;

class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n >= 1. Rejection keeps it exactly uniform.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [lo, hi], inclusive.
    std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace charsub
