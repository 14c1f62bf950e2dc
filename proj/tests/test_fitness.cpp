#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nph/fitness.hpp"
#include "nph/keyset.hpp"
#include "nph/probe.hpp"
#include "nph/rng.hpp"
#include "nph/table.hpp"

using namespace nph;

namespace {

KeySet sample_keyset(std::size_t members, std::uint64_t seed) {
    return make_benchmark_keyset(generate_random_keys(members, 16, seed),
                                 derive_stream(seed, 99));
}

/// Third opinion: rebuild the table and count comparisons by walking the
/// probe sequence against the slot array directly.
FitnessReport replay_fitness(std::uint32_t xor_key, const KeySet& keys,
                             const FitnessConfig& config) {
    const auto table =
        NearPerfectTable::build(keys.to_insert, xor_key, config.fill_factor);
    std::uint64_t total = 0;
    std::uint64_t worst = 0;
    for (const auto& key : keys.to_search) {
        std::uint64_t comparisons = 0;
        for (std::uint64_t att = 0; att < table.table_size(); ++att) {
            const std::uint64_t pos = probe_position(key, att, table.params());
            ++comparisons;
            if (!table.slot_occupied(pos) || table.slot_key(pos) == key) break;
        }
        total += comparisons;
        worst = std::max(worst, comparisons);
    }
    FitnessReport report;
    report.avg_comparisons =
        static_cast<double>(total) / static_cast<double>(keys.to_search.size());
    report.max_comparisons = static_cast<double>(worst);
    report.fitness = blended_fitness(report.avg_comparisons,
                                     report.max_comparisons, config.lambda);
    return report;
}

}  // namespace

TEST_CASE("blended fitness") {
    CHECK(blended_fitness(2.0, 6.0, 0.5) == 4.0);
    CHECK(blended_fitness(2.0, 6.0, 0.9) == doctest::Approx(2.4));
    CHECK(blended_fitness(2.0, 6.0, 1.0) == 2.0);
    CHECK(blended_fitness(2.0, 6.0, 0.0) == 6.0);
    CHECK_THROWS_AS(blended_fitness(2.0, 6.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(blended_fitness(2.0, 6.0, 1.1), std::invalid_argument);
}

TEST_CASE("config validation") {
    const KeySet keys = sample_keyset(20, 1);
    CHECK_THROWS_AS(compute_fitness(0, keys, {0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(compute_fitness(0, keys, {0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(compute_fitness(0, keys, {1.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(FitnessEvaluator(keys, {-0.5, 0.5}), std::invalid_argument);
    KeySet no_search;
    no_search.to_insert = keys.to_insert;
    CHECK_THROWS_AS(compute_fitness(0, no_search, {0.5, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FitnessEvaluator(no_search, {0.5, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("report bounds") {
    const KeySet keys = sample_keyset(200, 2);
    const FitnessConfig config{0.5, 0.6};
    for (std::uint32_t k : {0u, 1u, 0xFFFFFFFFu, 0x12345678u}) {
        const FitnessReport report = compute_fitness(k, keys, config);
        CAPTURE(k);
        REQUIRE(report.avg_comparisons >= 1.0);
        REQUIRE(report.max_comparisons >= report.avg_comparisons);
        REQUIRE(report.fitness >= report.avg_comparisons);
        REQUIRE(report.fitness <= report.max_comparisons);
    }
}

TEST_CASE("evaluator agrees with compute_fitness exactly") {
    const KeySet keys = sample_keyset(300, 3);
    for (const double alpha : {0.3, 0.5, 0.9}) {
        const FitnessConfig config{0.5, alpha};
        const FitnessEvaluator evaluator(keys, config);
        SplitMix64 rng(44);
        for (int i = 0; i < 25; ++i) {
            const std::uint32_t k = rng.next_u32();
            CAPTURE(alpha);
            CAPTURE(k);
            REQUIRE(evaluator.evaluate(k) == compute_fitness(k, keys, config));
        }
    }
}

TEST_CASE("both paths agree with the probe replay oracle") {
    const KeySet keys = sample_keyset(120, 4);
    const FitnessConfig config{0.7, 0.5};
    const FitnessEvaluator evaluator(keys, config);
    SplitMix64 rng(45);
    for (int i = 0; i < 10; ++i) {
        const std::uint32_t k = rng.next_u32();
        const FitnessReport oracle = replay_fitness(k, keys, config);
        CAPTURE(k);
        REQUIRE(compute_fitness(k, keys, config) == oracle);
        REQUIRE(evaluator.evaluate(k) == oracle);
    }
}

TEST_CASE("evaluator table size matches the built table") {
    const KeySet keys = sample_keyset(100, 5);
    for (const double alpha : {0.1, 0.5, 0.9}) {
        const FitnessEvaluator evaluator(keys, {0.5, alpha});
        const auto table = NearPerfectTable::build(keys.to_insert, 0, alpha);
        CHECK(evaluator.table_size() == table.table_size());
    }
}

TEST_CASE("duplicate members are rejected") {
    KeySet keys = sample_keyset(10, 6);
    keys.to_insert.push_back(keys.to_insert[0]);
    CHECK_THROWS_AS(FitnessEvaluator(keys, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(compute_fitness(0, keys, {0.5, 0.5}), std::invalid_argument);
}
