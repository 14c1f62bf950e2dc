#pragma once

// Read-only open-addressing hash table with instrumented search. Built once
// over a fixed key collection; the only supported operation afterwards is
// search, which reports the exact number of slot comparisons performed.
//
// A built table is immutable: concurrent searches from any number of threads
// are safe without synchronization.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nph/bytes.hpp"
#include "nph/errors.hpp"
#include "nph/probe.hpp"

namespace nph {

struct SearchOutcome {
    bool found = false;
    std::uint64_t comparisons = 0;  // slots examined, including a terminating empty
    std::uint64_t attempts = 0;     // final attempt number probed; comparisons == attempts + 1

    friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

class NearPerfectTable {
public:
    /// Builds a table over distinct keys. The table size N is the smallest
    /// prime >= ceil(|keys| / fill_factor), so the realized fill never
    /// exceeds the requested one. Keys are inserted in the given order, each
    /// at the first empty slot of its probe sequence; identical inputs
    /// produce bit-identical tables.
    ///
    /// Throws std::invalid_argument on empty input, duplicate keys, or
    /// fill_factor outside (0, 1); build_error on probe exhaustion (cannot
    /// happen with a prime N, kept as a defensive check).
    static NearPerfectTable build(const std::vector<HashKey>& keys,
                                  std::uint32_t xor_key, double fill_factor);

    /// Probes attempts 0, 1, 2, ... counting one comparison per examined
    /// slot: an equality test at an occupied slot, or the emptiness check
    /// that ends an unsuccessful search. Throws search_error if N probes
    /// pass without a match or an empty slot.
    SearchOutcome search(ByteView key) const;

    /// Same as search, additionally recording the visited slot indices.
    SearchOutcome search(ByteView key, std::vector<std::uint64_t>& trail) const;

    const ProbeParams& params() const noexcept { return params_; }
    std::uint64_t table_size() const noexcept { return params_.table_size; }
    std::uint64_t element_count() const noexcept { return element_count_; }

    bool slot_occupied(std::uint64_t slot) const { return occupied_[slot] != 0; }
    const HashKey& slot_key(std::uint64_t slot) const { return keys_[slot]; }

    /// Serializes in the NPH1 little-endian format. Round-trips are
    /// byte-identical.
    void save(std::ostream& out) const;
    void save(const std::filesystem::path& path) const;

    /// Throws format_error on corrupt content (bad magic, version, tags or
    /// counts) and io_error on filesystem failure.
    static NearPerfectTable load(std::istream& in);
    static NearPerfectTable load(const std::filesystem::path& path);

    friend bool operator==(const NearPerfectTable&, const NearPerfectTable&) = default;

private:
    NearPerfectTable() = default;

    ProbeParams params_;
    std::uint64_t element_count_ = 0;
    std::vector<std::uint8_t> occupied_;  // one flag per slot
    std::vector<HashKey> keys_;           // empty vector where unoccupied
};

}  // namespace nph
