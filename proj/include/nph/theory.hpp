#pragma once

#include <cstdint>

namespace nph {

/// Model: slots are occupied independently with probability fill, and a lookup
/// probes until the first empty slot. All three take fill in (0, 1) and throw
/// std::domain_error outside it.

/// fill^k * (1 - fill): probability that exactly k occupied slots precede the
/// first empty one.
double run_probability(double fill, std::uint64_t occupied_run);

/// Expected probe count when the walk is capped at table_size slots:
/// (1 - fill^N) / (1 - fill) - N * fill^N with N = table_size. Requires
/// table_size >= 1.
double expected_comparisons_exact(double fill, std::uint64_t table_size);

/// Large-table limit of the exact form: 1 / (1 - fill).
double expected_comparisons_asymptotic(double fill);

}  // namespace nph
