#pragma once

// SplitMix64 (Steele, Lea and Flood), the generator behind every sampled
// quantity in the library. Shard s of a run seeded with `seed` starts from
// state mix64(seed + (s + 1) * 0x9E3779B97F4A7C15).

#include <cstdint>

namespace ntl {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr SplitMix64 for_shard(std::uint64_t seed, std::uint64_t shard) {
        return SplitMix64(mix64(seed + (shard + 1) * kGoldenGamma));
    }

    constexpr std::uint64_t next() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform in [0, bound) by rejection; bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

    constexpr std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace ntl
