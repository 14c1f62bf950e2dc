#include <cstdint>
#include <vector>

#include "doctest.h"
#include "nph/bytes.hpp"
#include "nph/hash.hpp"
#include "nph/probe.hpp"
#include "nph/rng.hpp"

using namespace nph;

TEST_CASE("step is the masked second hash with zero promoted to one") {
    CHECK(probe_step(3, 0, 7) == 3);
    CHECK(probe_step(10, 0, 7) == 3);
    CHECK(probe_step(0x1234, 0x1234, 101) == 1);  // h2 ^ k == 0
    CHECK(probe_step(101, 0, 101) == 1);          // multiple of N
    for (std::uint32_t h2v = 0; h2v < 500; ++h2v) {
        const std::uint64_t s = probe_step(h2v, 77, 101);
        REQUIRE(s >= 1);
        REQUIRE(s < 101);
    }
}

TEST_CASE("attempt zero lands on the masked first hash") {
    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t h1v = rng.next_u32();
        const std::uint32_t h2v = rng.next_u32();
        const std::uint32_t k = rng.next_u32();
        const std::uint64_t n = 10007;
        REQUIRE(probe_position(h1v, h2v, k, 0, n) == (h1v ^ k) % n);
    }
}

TEST_CASE("hand-worked position") {
    // base = 5, step = 3, so attempt 1 lands on (5 + 3) mod 7.
    CHECK(probe_position(5, 3, 0, 0, 7) == 5);
    CHECK(probe_position(5, 3, 0, 1, 7) == 1);
    CHECK(probe_position(5, 3, 0, 2, 7) == 4);
}

TEST_CASE("a full probe cycle is a permutation of the table") {
    SplitMix64 rng(11);
    const std::uint64_t n = 101;
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t h1v = rng.next_u32();
        const std::uint32_t h2v = rng.next_u32();
        const std::uint32_t k = rng.next_u32();
        std::vector<bool> seen(n, false);
        for (std::uint64_t att = 0; att < n; ++att) {
            seen[probe_position(h1v, h2v, k, att, n)] = true;
        }
        for (std::uint64_t slot = 0; slot < n; ++slot) {
            CAPTURE(trial);
            REQUIRE(seen[slot]);
        }
    }
}

TEST_CASE("large attempt counts do not overflow") {
    const std::uint64_t n = (1ull << 61) - 1;
    CHECK(probe_position(0xDEADBEEFu, 0x12345678u, 0xA5A5A5A5u, 0, n) ==
          2064128842ull);
    CHECK(probe_position(0xDEADBEEFu, 0x12345678u, 0xA5A5A5A5u, 1ull << 60, n) ==
          1152921508210873656ull);
}

TEST_CASE("key-level overload agrees with the hash-level one") {
    const ProbeParams params{0xCAFEBABEu, 10007, 0.5};
    const HashKey key = key_from_string("probe me");
    for (std::uint64_t att : {0ull, 1ull, 2ull, 500ull}) {
        CHECK(probe_position(key, att, params) ==
              probe_position(hash1(key), hash2(key), params.xor_key, att,
                             params.table_size));
    }
}
