#pragma once

#include <cstdint>

namespace nph {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime >= n (n < 2 yields 2).
std::uint64_t next_prime_at_least(std::uint64_t n);

}  // namespace nph
