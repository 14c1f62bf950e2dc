#include "nph/table.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "nph/prime.hpp"

namespace nph {
namespace {

constexpr char kMagic[4] = {'N', 'P', 'H', '1'};
constexpr std::uint16_t kVersion = 1;

std::uint64_t sized_for(std::size_t element_count, double fill_factor) {
    const double slots = std::ceil(static_cast<double>(element_count) / fill_factor);
    return next_prime_at_least(static_cast<std::uint64_t>(slots));
}

void write_bytes(std::ostream& out, const void* data, std::size_t size) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

template <typename T>
void write_le(std::ostream& out, T value) {
    unsigned char buf[sizeof(T)];
    std::uint64_t bits;
    if constexpr (sizeof(T) == 8 && std::is_floating_point_v<T>) {
        std::memcpy(&bits, &value, 8);
    } else {
        bits = static_cast<std::uint64_t>(value);
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<unsigned char>(bits >> (8 * i));
    }
    write_bytes(out, buf, sizeof(T));
}

void read_exact(std::istream& in, void* data, std::size_t size) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size) {
        throw format_error("table file truncated");
    }
}

template <typename T>
T read_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    read_exact(in, buf, sizeof(T));
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    }
    if constexpr (sizeof(T) == 8 && std::is_floating_point_v<T>) {
        T value;
        std::memcpy(&value, &bits, 8);
        return value;
    } else {
        return static_cast<T>(bits);
    }
}

bool keys_equal(const HashKey& stored, ByteView key) noexcept {
    return stored.size() == key.size() &&
           (key.empty() ||
            std::memcmp(stored.data(), key.data(), key.size()) == 0);
}

}  // namespace

NearPerfectTable NearPerfectTable::build(const std::vector<HashKey>& keys,
                                         std::uint32_t xor_key, double fill_factor) {
    if (keys.empty()) {
        throw std::invalid_argument("build: key set is empty");
    }
    if (!(fill_factor > 0.0 && fill_factor < 1.0)) {
        throw std::invalid_argument("build: fill factor must be in (0, 1)");
    }
    {
        std::unordered_set<std::string_view> seen;
        seen.reserve(keys.size());
        for (const auto& key : keys) {
            const std::string_view view(reinterpret_cast<const char*>(key.data()),
                                        key.size());
            if (!seen.insert(view).second) {
                throw std::invalid_argument("build: duplicate key");
            }
        }
    }

    NearPerfectTable table;
    table.params_.xor_key = xor_key;
    table.params_.fill_factor = fill_factor;
    table.params_.table_size = sized_for(keys.size(), fill_factor);
    const std::uint64_t n = table.params_.table_size;
    table.occupied_.assign(n, 0);
    table.keys_.assign(n, HashKey{});

    for (const auto& key : keys) {
        const std::uint32_t h1v = hash1(key);
        const std::uint32_t h2v = hash2(key);
        const std::uint64_t step = probe_step(h2v, xor_key, n);
        std::uint64_t pos = (h1v ^ xor_key) % n;
        bool placed = false;
        for (std::uint64_t att = 0; att < n; ++att) {
            if (!table.occupied_[pos]) {
                table.occupied_[pos] = 1;
                table.keys_[pos] = key;
                placed = true;
                break;
            }
            pos += step;
            if (pos >= n) pos -= n;
        }
        if (!placed) {
            throw build_error("insertion overflow: probe sequence exhausted");
        }
    }
    table.element_count_ = keys.size();
    return table;
}

SearchOutcome NearPerfectTable::search(ByteView key) const {
    const std::uint64_t n = params_.table_size;
    const std::uint64_t step = probe_step(hash2(key), params_.xor_key, n);
    std::uint64_t pos = (hash1(key) ^ params_.xor_key) % n;
    for (std::uint64_t att = 0; att < n; ++att) {
        if (!occupied_[pos]) {
            return {false, att + 1, att};
        }
        if (keys_equal(keys_[pos], key)) {
            return {true, att + 1, att};
        }
        pos += step;
        if (pos >= n) pos -= n;
    }
    throw search_error("search: no match and no empty slot within N probes");
}

SearchOutcome NearPerfectTable::search(ByteView key,
                                       std::vector<std::uint64_t>& trail) const {
    trail.clear();
    const std::uint64_t n = params_.table_size;
    const std::uint64_t step = probe_step(hash2(key), params_.xor_key, n);
    std::uint64_t pos = (hash1(key) ^ params_.xor_key) % n;
    for (std::uint64_t att = 0; att < n; ++att) {
        trail.push_back(pos);
        if (!occupied_[pos]) {
            return {false, att + 1, att};
        }
        if (keys_equal(keys_[pos], key)) {
            return {true, att + 1, att};
        }
        pos += step;
        if (pos >= n) pos -= n;
    }
    throw search_error("search: no match and no empty slot within N probes");
}

void NearPerfectTable::save(std::ostream& out) const {
    write_bytes(out, kMagic, sizeof(kMagic));
    write_le<std::uint16_t>(out, kVersion);
    write_le<std::uint32_t>(out, params_.xor_key);
    write_le<std::uint64_t>(out, params_.table_size);
    write_le<double>(out, params_.fill_factor);
    write_le<std::uint64_t>(out, element_count_);
    for (std::uint64_t slot = 0; slot < params_.table_size; ++slot) {
        if (!occupied_[slot]) {
            write_le<std::uint8_t>(out, 0);
            continue;
        }
        write_le<std::uint8_t>(out, 1);
        const HashKey& key = keys_[slot];
        write_le<std::uint32_t>(out, static_cast<std::uint32_t>(key.size()));
        write_bytes(out, key.data(), key.size());
    }
    if (!out) {
        throw io_error("failed to write table stream");
    }
}

void NearPerfectTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw io_error("cannot open for writing: " + path.string());
    }
    save(out);
}

NearPerfectTable NearPerfectTable::load(std::istream& in) {
    char magic[4];
    read_exact(in, magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw format_error("bad magic: not an NPH1 table file");
    }
    const auto version = read_le<std::uint16_t>(in);
    if (version != kVersion) {
        throw format_error("unsupported table version " + std::to_string(version));
    }

    NearPerfectTable table;
    table.params_.xor_key = read_le<std::uint32_t>(in);
    table.params_.table_size = read_le<std::uint64_t>(in);
    table.params_.fill_factor = read_le<double>(in);
    table.element_count_ = read_le<std::uint64_t>(in);

    const std::uint64_t n = table.params_.table_size;
    if (n == 0 || !is_prime(n)) {
        throw format_error("table size is not prime");
    }
    if (!(table.params_.fill_factor > 0.0 && table.params_.fill_factor < 1.0)) {
        throw format_error("fill factor outside (0, 1)");
    }
    table.occupied_.assign(n, 0);
    table.keys_.assign(n, HashKey{});
    std::uint64_t occupied_count = 0;
    for (std::uint64_t slot = 0; slot < n; ++slot) {
        const auto tag = read_le<std::uint8_t>(in);
        if (tag == 0) continue;
        if (tag != 1) {
            throw format_error("invalid slot tag " + std::to_string(tag));
        }
        const auto length = read_le<std::uint32_t>(in);
        HashKey key(length);
        if (length > 0) {
            read_exact(in, key.data(), length);
        }
        table.occupied_[slot] = 1;
        table.keys_[slot] = std::move(key);
        ++occupied_count;
    }
    if (occupied_count != table.element_count_) {
        throw format_error("element count does not match occupied slots");
    }
    return table;
}

NearPerfectTable NearPerfectTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open for reading: " + path.string());
    }
    return load(in);
}

}  // namespace nph
