#include "nph/binary_search.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace nph {
namespace {

int compare_keys(const HashKey& stored, ByteView key) {
    const std::size_t common = std::min(stored.size(), key.size());
    if (common > 0) {
        const int order = std::memcmp(stored.data(), key.data(), common);
        if (order != 0) return order;
    }
    if (stored.size() < key.size()) return -1;
    if (stored.size() > key.size()) return 1;
    return 0;
}

}  // namespace

SortedArray::SortedArray(std::vector<HashKey> keys) : keys_(std::move(keys)) {
    std::sort(keys_.begin(), keys_.end(), [](const HashKey& a, const HashKey& b) {
        return compare_keys(a, ByteView(b)) < 0;
    });
    for (std::size_t i = 1; i < keys_.size(); ++i) {
        if (compare_keys(keys_[i - 1], ByteView(keys_[i])) == 0) {
            throw std::invalid_argument("sorted array: duplicate key");
        }
    }
}

SortedArray::Result SortedArray::search(ByteView key) const {
    std::size_t lo = 0;
    std::size_t hi = keys_.size();
    std::uint64_t comparisons = 0;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        ++comparisons;
        const int order = compare_keys(keys_[mid], key);
        if (order == 0) return {true, comparisons};
        if (order < 0) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return {false, comparisons};
}

}  // namespace nph
