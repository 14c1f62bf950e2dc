#include "nph/keyset.hpp"

#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

#include "nph/errors.hpp"
#include "nph/rng.hpp"

namespace nph {
namespace {

std::string_view view_of(const HashKey& key) {
    return {reinterpret_cast<const char*>(key.data()), key.size()};
}

HashKey random_key(SplitMix64& rng, std::size_t key_length) {
    HashKey key(key_length);
    std::size_t i = 0;
    while (i + 8 <= key_length) {
        const std::uint64_t word = rng.next();
        for (int b = 0; b < 8; ++b) key[i++] = static_cast<std::uint8_t>(word >> (8 * b));
    }
    if (i < key_length) {
        std::uint64_t word = rng.next();
        while (i < key_length) {
            key[i++] = static_cast<std::uint8_t>(word);
            word >>= 8;
        }
    }
    return key;
}

}  // namespace

void validate(const KeySet& keys) {
    if (keys.to_insert.empty()) {
        throw std::invalid_argument("keyset: to_insert is empty");
    }
    if (keys.to_search.empty()) {
        throw std::invalid_argument("keyset: to_search is empty");
    }
    std::unordered_set<std::string_view> members;
    members.reserve(keys.to_insert.size());
    for (const auto& key : keys.to_insert) {
        if (!members.insert(view_of(key)).second) {
            throw std::invalid_argument("keyset: duplicate key in to_insert");
        }
    }
    bool has_member = false;
    bool has_absent = false;
    for (const auto& key : keys.to_search) {
        if (members.contains(view_of(key))) {
            has_member = true;
        } else {
            has_absent = true;
        }
        if (has_member && has_absent) return;
    }
    throw std::invalid_argument(
        "keyset: to_search needs at least one member and one non-member");
}

std::vector<HashKey> generate_random_keys(std::size_t count, std::size_t key_length,
                                          std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<HashKey> keys;
    keys.reserve(count);
    std::unordered_set<std::string_view> seen;
    seen.reserve(count);
    std::size_t rejects = 0;
    const std::size_t reject_limit = 1000 * count + 1000000;
    while (keys.size() < count) {
        HashKey key = random_key(rng, key_length);
        if (seen.contains(view_of(key))) {
            if (++rejects > reject_limit) {
                throw build_error("generate: cannot produce enough distinct keys");
            }
            continue;
        }
        keys.push_back(std::move(key));
        seen.insert(view_of(keys.back()));
    }
    return keys;
}

std::vector<HashKey> generate_absent_keys(const std::vector<HashKey>& members,
                                          std::size_t count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::unordered_set<std::string_view> taken;
    taken.reserve(members.size() + count);
    for (const auto& key : members) taken.insert(view_of(key));

    std::vector<HashKey> absent;
    absent.reserve(count);
    std::size_t rejects = 0;
    const std::size_t reject_limit = 1000 * count + 1000000;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t length =
            members.empty() ? 16 : members[i % members.size()].size();
        for (;;) {
            HashKey key = random_key(rng, length);
            if (!taken.contains(view_of(key))) {
                absent.push_back(std::move(key));
                taken.insert(view_of(absent.back()));
                break;
            }
            if (++rejects > reject_limit) {
                throw build_error("generate: cannot produce enough absent keys");
            }
        }
    }
    return absent;
}

KeySet make_benchmark_keyset(std::vector<HashKey> members, std::uint64_t seed) {
    KeySet keys;
    keys.to_search = members;
    std::vector<HashKey> absent =
        generate_absent_keys(members, members.size(), seed);
    keys.to_search.insert(keys.to_search.end(),
                          std::make_move_iterator(absent.begin()),
                          std::make_move_iterator(absent.end()));
    keys.to_insert = std::move(members);
    return keys;
}

void save_keys(const std::vector<HashKey>& keys, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw io_error("cannot open for writing: " + path.string());
    }
    for (const auto& key : keys) {
        out << to_hex(key) << '\n';
    }
    if (!out) {
        throw io_error("failed to write keyset: " + path.string());
    }
}

std::vector<HashKey> load_keys(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open for reading: " + path.string());
    }
    std::vector<HashKey> keys;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            keys.push_back(from_hex(line));
        } catch (const std::invalid_argument& e) {
            throw format_error(path.string() + ":" + std::to_string(line_number) +
                               ": " + e.what());
        }
    }
    return keys;
}

}  // namespace nph
