#pragma once

#include <cstdint>
#include <vector>

#include "nph/bytes.hpp"

namespace nph {

/// Two-level perfect hash table: n first-level buckets, each with its own
/// collision-free secondary array of size count^2. A lookup inspects at most
/// one stored key, so it costs at most one comparison.
class FksTable {
public:
    struct Result {
        bool found = false;
        std::uint64_t comparisons = 0;  // 0 only when the bucket is empty

        friend bool operator==(const Result&, const Result&) = default;
    };

    /// Draws first-level hash parameters until the squared bucket counts sum
    /// below 4n, then per-bucket parameters until each secondary mapping is
    /// injective. Throws build_error after 10000 failed draws at either level.
    static FksTable build(const std::vector<HashKey>& keys, std::uint64_t rng_seed);

    Result search(ByteView key) const;

    /// n + sum of count^2 over all buckets.
    std::uint64_t total_size() const { return total_size_; }
    std::size_t element_count() const { return element_count_; }
    std::size_t bucket_count() const { return buckets_.size(); }
    std::size_t bucket_key_count(std::size_t bucket) const;

    /// Where a key would land; exposed so tests can check the two mappings.
    std::size_t bucket_index(ByteView key) const;
    /// Slot within the key's bucket, relative to that bucket. The bucket must
    /// be non-empty.
    std::size_t secondary_index(ByteView key) const;

private:
    struct Bucket {
        std::uint64_t mul = 1;
        std::uint64_t add = 0;
        std::uint64_t offset = 0;  // into slots_
        std::uint32_t size = 0;    // count^2
        std::uint32_t count = 0;
    };

    FksTable() = default;

    std::uint64_t level1_mul_ = 1;
    std::uint64_t level1_add_ = 0;
    std::uint64_t total_size_ = 0;
    std::size_t element_count_ = 0;
    std::vector<Bucket> buckets_;
    std::vector<HashKey> slot_keys_;      // flattened secondary arrays
    std::vector<std::uint8_t> occupied_;
};

}  // namespace nph
