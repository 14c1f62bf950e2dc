#pragma once

// Base hash pair for the probing function, plus the 64-bit fingerprint used
// by the two-level perfect hash table. All functions are pure, byte-order
// independent and bit-exact across platforms.

#include <cstdint>

#include "nph/bytes.hpp"

namespace nph {

inline constexpr std::uint32_t kFnv32Basis = 2166136261u;
inline constexpr std::uint32_t kFnv32Prime = 16777619u;

// hash2 uses a different offset basis so the two hashes look independent.
inline constexpr std::uint32_t kFnv32Basis2 = kFnv32Basis ^ 0x5BD1E995u;

/// 32-bit xorshift-multiply avalanche finalizer (the standard fmix32 step).
constexpr std::uint32_t avalanche32(std::uint32_t h) noexcept {
    h ^= h >> 16;
    h *= 0x85EBCA6Bu;
    h ^= h >> 13;
    h *= 0xC2B2AE35u;
    h ^= h >> 16;
    return h;
}

constexpr std::uint32_t fnv1a32(ByteView bytes, std::uint32_t basis) noexcept {
    std::uint32_t h = basis;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= kFnv32Prime;
    }
    return h;
}

/// First base hash: FNV-1a with the standard offset basis, finalized.
constexpr std::uint32_t hash1(ByteView key) noexcept {
    return avalanche32(fnv1a32(key, kFnv32Basis));
}

/// Second base hash: same construction, distinct offset basis. The raw value
/// is returned; step sanitization happens at probe time.
constexpr std::uint32_t hash2(ByteView key) noexcept {
    return avalanche32(fnv1a32(key, kFnv32Basis2));
}

/// 64-bit byte fingerprint (FNV-1a 64 + splitmix finalizer). Input to the
/// universal hash family of the two-level perfect-hash table, where a 32-bit
/// fingerprint would make same-fingerprint key pairs inseparable.
constexpr std::uint64_t fingerprint64(ByteView key) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (std::uint8_t b : key) {
        h ^= b;
        h *= 1099511628211ull;
    }
    h ^= h >> 30;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 27;
    h *= 0x94D049BB133111EBull;
    h ^= h >> 31;
    return h;
}

}  // namespace nph
