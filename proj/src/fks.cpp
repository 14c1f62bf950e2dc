#include "nph/fks.hpp"

#include <cstring>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include "nph/errors.hpp"
#include "nph/hash.hpp"
#include "nph/rng.hpp"

namespace nph {
namespace {

constexpr int kMaxDraws = 10000;

/// Multiply-shift with a range map: (a * x + b) mod 2^64, scaled into [0, m).
std::uint64_t map_to(std::uint64_t x, std::uint64_t a, std::uint64_t b,
                     std::uint64_t m) {
    const std::uint64_t z = a * x + b;
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(z) * m) >> 64);
}

bool keys_equal(const HashKey& stored, ByteView key) noexcept {
    return stored.size() == key.size() &&
           (key.empty() ||
            std::memcmp(stored.data(), key.data(), key.size()) == 0);
}

}  // namespace

FksTable FksTable::build(const std::vector<HashKey>& keys, std::uint64_t rng_seed) {
    if (keys.empty()) {
        throw std::invalid_argument("fks: key set is empty");
    }
    {
        std::unordered_set<std::string_view> seen;
        seen.reserve(keys.size());
        for (const auto& key : keys) {
            const std::string_view view(reinterpret_cast<const char*>(key.data()),
                                        key.size());
            if (!seen.insert(view).second) {
                throw std::invalid_argument("fks: duplicate key");
            }
        }
    }

    const std::uint64_t n = keys.size();
    std::vector<std::uint64_t> prints;
    prints.reserve(keys.size());
    for (const auto& key : keys) prints.push_back(fingerprint64(key));

    SplitMix64 rng(rng_seed);
    FksTable table;
    table.element_count_ = keys.size();

    std::vector<std::uint32_t> counts(n);
    bool level1_ok = false;
    for (int draw = 0; draw < kMaxDraws && !level1_ok; ++draw) {
        const std::uint64_t a = rng.next() | 1;
        const std::uint64_t b = rng.next();
        counts.assign(n, 0);
        for (const std::uint64_t print : prints) {
            ++counts[map_to(print, a, b, n)];
        }
        std::uint64_t squared_sum = 0;
        for (const std::uint32_t count : counts) {
            squared_sum += static_cast<std::uint64_t>(count) * count;
        }
        if (squared_sum < 4 * n) {
            table.level1_mul_ = a;
            table.level1_add_ = b;
            level1_ok = true;
        }
    }
    if (!level1_ok) {
        throw build_error("fks: first-level draw limit reached");
    }

    std::vector<std::vector<std::uint32_t>> bucket_members(n);
    for (std::size_t i = 0; i < prints.size(); ++i) {
        bucket_members[map_to(prints[i], table.level1_mul_, table.level1_add_, n)]
            .push_back(static_cast<std::uint32_t>(i));
    }

    table.buckets_.resize(n);
    std::uint64_t offset = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        Bucket& bucket = table.buckets_[i];
        bucket.count = static_cast<std::uint32_t>(bucket_members[i].size());
        bucket.size = bucket.count * bucket.count;
        bucket.offset = offset;
        offset += bucket.size;
    }
    table.slot_keys_.assign(offset, HashKey{});
    table.occupied_.assign(offset, 0);
    table.total_size_ = n + offset;

    std::vector<std::uint64_t> scratch;
    for (std::uint64_t i = 0; i < n; ++i) {
        Bucket& bucket = table.buckets_[i];
        if (bucket.count == 0) continue;
        const auto& members = bucket_members[i];
        bool injective = false;
        for (int draw = 0; draw < kMaxDraws && !injective; ++draw) {
            const std::uint64_t a = rng.next() | 1;
            const std::uint64_t b = rng.next();
            scratch.assign(bucket.size, 0);
            injective = true;
            for (const std::uint32_t member : members) {
                const std::uint64_t slot = map_to(prints[member], a, b, bucket.size);
                if (scratch[slot]) {
                    injective = false;
                    break;
                }
                scratch[slot] = 1;
            }
            if (injective) {
                bucket.mul = a;
                bucket.add = b;
            }
        }
        if (!injective) {
            throw build_error("fks: secondary draw limit reached");
        }
        for (const std::uint32_t member : members) {
            const std::uint64_t slot =
                bucket.offset + map_to(prints[member], bucket.mul, bucket.add,
                                       bucket.size);
            table.slot_keys_[slot] = keys[member];
            table.occupied_[slot] = 1;
        }
    }
    return table;
}

FksTable::Result FksTable::search(ByteView key) const {
    const std::uint64_t print = fingerprint64(key);
    const Bucket& bucket =
        buckets_[map_to(print, level1_mul_, level1_add_, buckets_.size())];
    if (bucket.count == 0) {
        return {false, 0};
    }
    const std::uint64_t slot =
        bucket.offset + map_to(print, bucket.mul, bucket.add, bucket.size);
    const bool found = occupied_[slot] && keys_equal(slot_keys_[slot], key);
    return {found, 1};
}

std::size_t FksTable::bucket_key_count(std::size_t bucket) const {
    return buckets_.at(bucket).count;
}

std::size_t FksTable::bucket_index(ByteView key) const {
    return map_to(fingerprint64(key), level1_mul_, level1_add_, buckets_.size());
}

std::size_t FksTable::secondary_index(ByteView key) const {
    const Bucket& bucket = buckets_[bucket_index(key)];
    if (bucket.count == 0) {
        throw std::invalid_argument("fks: secondary index of an empty bucket");
    }
    return map_to(fingerprint64(key), bucket.mul, bucket.add, bucket.size);
}

}  // namespace nph
