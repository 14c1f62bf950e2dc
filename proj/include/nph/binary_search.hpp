#pragma once

#include <cstdint>
#include <vector>

#include "nph/bytes.hpp"

namespace nph {

/// Byte-wise ordered array with a lookup that reports how many three-way key
/// comparisons the halving loop performed.
class SortedArray {
public:
    struct Result {
        bool found = false;
        std::uint64_t comparisons = 0;

        friend bool operator==(const Result&, const Result&) = default;
    };

    /// Sorts the keys ascending; rejects duplicates.
    explicit SortedArray(std::vector<HashKey> keys);

    Result search(ByteView key) const;

    std::size_t size() const { return keys_.size(); }
    const std::vector<HashKey>& keys() const { return keys_; }

private:
    std::vector<HashKey> keys_;
};

}  // namespace nph
