#pragma once

// The XOR-parametrized double-hashing probe. The slot for key x at attempt
// att is ((hash1(x) ^ k) + ((hash2(x) ^ k) mod N) * att) mod N, with a zero
// step replaced by 1. N prime plus a nonzero step makes every probe sequence
// a full cycle over [0, N), so insertion can never livelock while the table
// has an empty slot.

#include <cstdint>

#include "nph/bytes.hpp"
#include "nph/hash.hpp"

namespace nph {

struct ProbeParams {
    std::uint32_t xor_key = 0;     // k
    std::uint64_t table_size = 1;  // N, prime
    double fill_factor = 0.5;      // requested alpha in (0, 1)

    friend bool operator==(const ProbeParams&, const ProbeParams&) = default;
};

/// Probe step for precomputed hash2: (h2 ^ k) mod N, with 0 mapped to 1.
constexpr std::uint64_t probe_step(std::uint32_t h2_value, std::uint32_t xor_key,
                                   std::uint64_t table_size) noexcept {
    const std::uint64_t s = (h2_value ^ xor_key) % table_size;
    return s == 0 ? 1 : s;
}

/// Probe position from precomputed base hashes. The multiply-add runs in
/// 128-bit width; step * attempt alone can exceed 64 bits for large N.
constexpr std::uint64_t probe_position(std::uint32_t h1_value, std::uint32_t h2_value,
                                       std::uint32_t xor_key, std::uint64_t attempt,
                                       std::uint64_t table_size) noexcept {
    const std::uint64_t base = (h1_value ^ xor_key) % table_size;
    const std::uint64_t step = probe_step(h2_value, xor_key, table_size);
    const unsigned __int128 pos =
        static_cast<unsigned __int128>(step) * attempt + base;
    return static_cast<std::uint64_t>(pos % table_size);
}

/// Probe position for a key. Requires attempt < table_size.
constexpr std::uint64_t probe_position(ByteView key, std::uint64_t attempt,
                                       const ProbeParams& params) noexcept {
    return probe_position(hash1(key), hash2(key), params.xor_key, attempt,
                          params.table_size);
}

}  // namespace nph
