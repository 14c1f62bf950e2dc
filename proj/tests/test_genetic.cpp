#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nph/fitness.hpp"
#include "nph/genetic.hpp"
#include "nph/keyset.hpp"
#include "nph/rng.hpp"

using namespace nph;

namespace {

KeySet sample_keyset(std::size_t members, std::uint64_t seed) {
    return make_benchmark_keyset(generate_random_keys(members, 16, seed),
                                 derive_stream(seed, 99));
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace

TEST_CASE("crossover swaps the low halves") {
    const auto [c1, c2] = crossover({0xAAAA0000u}, {0x0000BBBBu});
    CHECK(c1.genome == 0xAAAABBBBu);
    CHECK(c2.genome == 0x00000000u);

    const auto [s1, s2] = crossover({0x12345678u}, {0x12345678u});
    CHECK(s1.genome == 0x12345678u);
    CHECK(s2.genome == 0x12345678u);
}

TEST_CASE("crossover conserves the bit multiset") {
    SplitMix64 rng(7);
    for (int i = 0; i < 100000; ++i) {
        const Individual p1{rng.next_u32()};
        const Individual p2{rng.next_u32()};
        const auto [c1, c2] = crossover(p1, p2);
        REQUIRE((c1.genome ^ c2.genome) == (p1.genome ^ p2.genome));
    }
}

TEST_CASE("mutation probability gates the operator") {
    SplitMix64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        const Individual ind{rng.next_u32()};
        CHECK(mutate(ind, 0.0, rng) == ind);
    }
    for (int i = 0; i < 1000; ++i) {
        const Individual ind{rng.next_u32()};
        const Individual mutated = mutate(ind, 1.0, rng);
        const int flipped = std::popcount(ind.genome ^ mutated.genome);
        REQUIRE(flipped >= 1);
        REQUIRE(flipped <= 3);
    }
    for (int i = 0; i < 100; ++i) {
        const Individual ind{rng.next_u32()};
        const Individual mutated = mutate(ind, 1.0, rng, 1);
        REQUIRE(std::popcount(ind.genome ^ mutated.genome) == 1);
    }
    CHECK_THROWS_AS(mutate({0}, 1.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(mutate({0}, 0.5, rng, 0), std::invalid_argument);
    CHECK_THROWS_AS(mutate({0}, 0.5, rng, 33), std::invalid_argument);
}

TEST_CASE("mutation flips positions uniformly") {
    SplitMix64 rng(9);
    std::array<std::uint64_t, 32> flips{};
    std::uint64_t total = 0;
    for (int i = 0; i < 100000; ++i) {
        const Individual mutated = mutate({0}, 1.0, rng);
        std::uint32_t mask = mutated.genome;
        while (mask != 0) {
            const int bit = std::countr_zero(mask);
            mask &= mask - 1;
            ++flips[bit];
            ++total;
        }
    }
    const double mean = static_cast<double>(total) / 32.0;
    for (int bit = 0; bit < 32; ++bit) {
        CAPTURE(bit);
        REQUIRE(static_cast<double>(flips[bit]) > 0.9 * mean);
        REQUIRE(static_cast<double>(flips[bit]) < 1.1 * mean);
    }
}

TEST_CASE("select_top orders by fitness with genome tie-break") {
    const std::vector<Individual> pop = {{10}, {20}, {30}};
    const std::vector<double> fitness = {3.0, 1.0, 2.0};
    CHECK(select_top(pop, fitness, 0).empty());
    const auto top = select_top(pop, fitness, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0].genome == 20);
    CHECK(top[1].genome == 30);

    const std::vector<Individual> tied = {{7}, {3}, {9}, {1}};
    const std::vector<double> same = {5.0, 5.0, 5.0, 5.0};
    const auto picked = select_top(tied, same, 2);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0].genome == 1);
    CHECK(picked[1].genome == 3);

    CHECK_THROWS_AS(select_top(pop, fitness, 4), std::invalid_argument);
    CHECK_THROWS_AS(select_top(pop, {1.0}, 1), std::invalid_argument);
}

TEST_CASE("roulette draws uniformly when all fitness is equal") {
    const std::vector<double> fitness = {2.0, 2.0, 2.0, 2.0};
    SplitMix64 rng(10);
    std::array<std::uint64_t, 4> counts{};
    for (int i = 0; i < 100000; ++i) {
        ++counts[roulette_draw(fitness, rng)];
    }
    for (int i = 0; i < 4; ++i) {
        const double freq = static_cast<double>(counts[i]) / 100000.0;
        CAPTURE(i);
        REQUIRE(freq > 0.24);
        REQUIRE(freq < 0.26);
    }
}

TEST_CASE("roulette all but ignores the worst individual") {
    const std::vector<double> fitness = {1.0, 3.0};
    SplitMix64 rng(11);
    int zero_draws = 0;
    for (int i = 0; i < 10000; ++i) {
        if (roulette_draw(fitness, rng) == 0) ++zero_draws;
    }
    CHECK(zero_draws > 9990);
}

TEST_CASE("roulette_select returns distinct parents") {
    const std::vector<Individual> pop = {{1}, {2}, {3}, {4}};
    const std::vector<double> fitness = {2.0, 2.0, 2.0, 2.0};
    SplitMix64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const auto [p1, p2] = roulette_select(pop, fitness, rng);
        REQUIRE(p1.genome != p2.genome);
    }
}

TEST_CASE("one generation with two individuals keeps the better seed") {
    const KeySet keys = sample_keyset(100, 20);
    GaConfig config;
    config.population_size = 2;
    config.elite_size = 1;
    config.max_generations = 1;
    config.rng_seed = 321;
    const FitnessConfig fitness_config{0.5, 0.5};

    SplitMix64 seeder(derive_stream(config.rng_seed, 0));
    const std::uint32_t g1 = seeder.next_u32();
    const std::uint32_t g2 = seeder.next_u32();
    const FitnessReport r1 = compute_fitness(g1, keys, fitness_config);
    const FitnessReport r2 = compute_fitness(g2, keys, fitness_config);
    const bool first_wins =
        r1.fitness < r2.fitness || (r1.fitness == r2.fitness && g1 <= g2);

    const GaResult result = gen_alg(keys, config, fitness_config);
    CHECK(result.generations_run == 1);
    CHECK(result.best_key == (first_wins ? g1 : g2));
    CHECK(result.best_report == (first_wins ? r1 : r2));
    REQUIRE(result.history.size() == 1);
    CHECK(result.history[0] == result.best_report.fitness);
}

TEST_CASE("history is non-increasing and reflects the best report") {
    const KeySet keys = sample_keyset(200, 21);
    GaConfig config;
    config.population_size = 8;
    config.elite_size = 2;
    config.max_generations = 12;
    config.stagnation_limit = 12;
    config.rng_seed = 5;
    const GaResult result = gen_alg(keys, config, {0.5, 0.6});
    REQUIRE(!result.history.empty());
    CHECK(result.history.size() == result.generations_run);
    for (std::size_t i = 1; i < result.history.size(); ++i) {
        REQUIRE(result.history[i] <= result.history[i - 1]);
    }
    CHECK(result.history.back() == result.best_report.fitness);
}

TEST_CASE("progress callback sees consecutive generations") {
    const KeySet keys = sample_keyset(100, 22);
    GaConfig config;
    config.population_size = 6;
    config.elite_size = 1;
    config.max_generations = 5;
    config.rng_seed = 6;
    std::vector<GaProgress> seen;
    gen_alg(keys, config, {0.5, 0.5},
            [&](const GaProgress& p) { seen.push_back(p); });
    REQUIRE(!seen.empty());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        REQUIRE(seen[i].generation == i + 1);
        REQUIRE(seen[i].mean_fitness >= seen[i].best_fitness);
    }
}

TEST_CASE("stagnation stops the run early") {
    const KeySet keys = sample_keyset(100, 23);
    GaConfig config;
    config.population_size = 4;
    config.elite_size = 1;
    config.max_generations = 1000;
    config.stagnation_limit = 3;
    config.rng_seed = 7;
    const GaResult result = gen_alg(keys, config, {0.5, 0.5});
    CHECK(result.generations_run < 1000);
}

TEST_CASE("same inputs give identical runs") {
    const KeySet keys = sample_keyset(150, 24);
    GaConfig config;
    config.population_size = 8;
    config.elite_size = 2;
    config.max_generations = 8;
    config.rng_seed = 99;
    const GaResult a = gen_alg(keys, config, {0.5, 0.7});
    const GaResult b = gen_alg(keys, config, {0.5, 0.7});
    CHECK(a.best_key == b.best_key);
    CHECK(a.best_report == b.best_report);
    CHECK(a.history == b.history);
    CHECK(a.generations_run == b.generations_run);
}

TEST_CASE("invalid configs are rejected") {
    const KeySet keys = sample_keyset(20, 25);
    GaConfig config;
    config.population_size = 1;
    CHECK_THROWS_AS(gen_alg(keys, config, {0.5, 0.5}), std::invalid_argument);
    config = {};
    config.elite_size = config.population_size;
    CHECK_THROWS_AS(gen_alg(keys, config, {0.5, 0.5}), std::invalid_argument);
    config = {};
    config.mutation_probability = 1.5;
    CHECK_THROWS_AS(gen_alg(keys, config, {0.5, 0.5}), std::invalid_argument);
    config = {};
    config.max_generations = 0;
    CHECK_THROWS_AS(gen_alg(keys, config, {0.5, 0.5}), std::invalid_argument);
    config = {};
    config.stagnation_limit = 0;
    CHECK_THROWS_AS(gen_alg(keys, config, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("the evolved key beats blind sampling of the same budget") {
    const KeySet keys = sample_keyset(500, 26);
    const FitnessConfig fitness_config{0.5, 0.5};
    const FitnessEvaluator evaluator(keys, fitness_config);

    std::vector<double> ga_results;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GaConfig config;
        config.population_size = 32;
        config.max_generations = 50;
        config.stagnation_limit = 10;
        config.rng_seed = seed;
        ga_results.push_back(gen_alg(keys, config, fitness_config).best_report.fitness);
    }

    std::vector<double> random_results;
    SplitMix64 rng(4242);
    for (int i = 0; i < 32 * 50; ++i) {
        random_results.push_back(evaluator.evaluate(rng.next_u32()).fitness);
    }
    CHECK(median_of(ga_results) <= median_of(random_results));
}
