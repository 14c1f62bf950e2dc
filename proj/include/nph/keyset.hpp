#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "nph/bytes.hpp"

namespace nph {

/// Key collection split the way the fitness evaluation consumes it:
/// to_insert becomes the table contents, to_search is probed against it and
/// must mix members with non-members so both successful and unsuccessful
/// lookups are exercised.
struct KeySet {
    std::vector<HashKey> to_insert;
    std::vector<HashKey> to_search;
};

/// Throws std::invalid_argument unless: to_insert is non-empty and
/// duplicate-free, to_search is non-empty and contains at least one member
/// and at least one non-member of to_insert.
void validate(const KeySet& keys);

/// `count` distinct uniform-random keys of key_length bytes. Deterministic
/// in the seed. Throws build_error if distinctness cannot be reached (only
/// possible for tiny key lengths).
std::vector<HashKey> generate_random_keys(std::size_t count, std::size_t key_length,
                                          std::uint64_t seed);

/// `count` random keys, none of which is a member. Lengths follow the member
/// keys so hit and miss probes are comparable.
std::vector<HashKey> generate_absent_keys(const std::vector<HashKey>& members,
                                          std::size_t count, std::uint64_t seed);

/// Default benchmark composition: to_search = every member plus an equal
/// number of generated absent keys.
KeySet make_benchmark_keyset(std::vector<HashKey> members, std::uint64_t seed);

/// Keyset files are hex-encoded keys, one per line.
void save_keys(const std::vector<HashKey>& keys, const std::filesystem::path& path);
std::vector<HashKey> load_keys(const std::filesystem::path& path);

}  // namespace nph
