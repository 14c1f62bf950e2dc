#pragma once

// SplitMix64 generator (Steele, Lea, Flood 2014). Chosen over the standard
// library engines because its output is fully pinned here, independent of
// any implementation-defined distribution code, so seeded runs reproduce
// bit-for-bit on every platform.

#include <cstdint>

namespace nph {

/// SplitMix64 finalizer; also used standalone to derive substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    constexpr std::uint32_t next_u32() noexcept {
        return static_cast<std::uint32_t>(next() >> 32);
    }

    /// Uniform draw from [0, bound); rejection sampling, no modulo bias.
    constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t v = next();
            if (v >= threshold) return v % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double next_unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Deterministic substream seed from a root seed and up to three indices.
/// Streams for distinct index tuples are independent for all practical
/// purposes, which keeps concurrent work off the sequential draw order.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                                      std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b));
    h = mix64(h ^ mix64(c));
    return h;
}

}  // namespace nph
