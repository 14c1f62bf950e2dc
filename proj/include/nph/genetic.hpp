#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nph/fitness.hpp"
#include "nph/keyset.hpp"
#include "nph/rng.hpp"

namespace nph {

/// One candidate XOR key.
struct Individual {
    std::uint32_t genome = 0;

    friend bool operator==(const Individual&, const Individual&) = default;
};

/// Evolution knobs. population_size >= 2, elite_size < population_size,
/// mutation_probability in [0, 1] (0.05 to 0.10 works well), both limits >= 1.
struct GaConfig {
    std::size_t population_size = 32;
    std::size_t elite_size = 4;
    double mutation_probability = 0.05;
    std::size_t max_generations = 100;   // hard cap on generations
    std::size_t stagnation_limit = 15;   // stop after this many without improvement
    std::uint64_t rng_seed = 1;
    std::uint32_t max_mutation_bits = 3;  // flip count drawn from {1, ..., this}
};

/// Per-generation record handed to the progress callback.
struct GaProgress {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
};

using GaProgressFn = std::function<void(const GaProgress&)>;

struct GaResult {
    std::uint32_t best_key = 0;
    FitnessReport best_report;
    std::vector<double> history;  // best fitness of each generation, in order
    std::size_t generations_run = 0;
};

/// The count individuals with lowest fitness; ties broken by lower genome.
std::vector<Individual> select_top(const std::vector<Individual>& population,
                                   const std::vector<double>& fitness_values,
                                   std::size_t count);

/// One fitness-proportional draw. Weight of individual i is
/// (max(fitness) - fitness[i]) + 1e-6, so lower fitness means likelier.
std::size_t roulette_draw(const std::vector<double>& fitness_values,
                          SplitMix64& rng);

/// Two roulette draws; the second is redrawn (at most 16 times) until it
/// lands on a different index than the first.
std::pair<Individual, Individual> roulette_select(
    const std::vector<Individual>& population,
    const std::vector<double>& fitness_values, SplitMix64& rng);

/// Swaps the low 16 bits: child1 = high(p1) | low(p2), child2 = high(p2) | low(p1).
std::pair<Individual, Individual> crossover(const Individual& parent1,
                                            const Individual& parent2);

/// With probability mutation_probability flips between 1 and max_bits
/// distinct bits at uniform positions, else returns the input unchanged.
Individual mutate(const Individual& individual, double mutation_probability,
                  SplitMix64& rng, std::uint32_t max_bits = 3);

/// Evolves XOR-key candidates against the given key set: keeps the elite,
/// refills with crossover of roulette-selected parents, mutates the offspring,
/// and stops at max_generations or after stagnation_limit flat generations.
/// Fitness evaluation may run on several threads; all draws that steer the
/// evolution happen on one sequential stream, so results depend only on the
/// inputs and rng_seed. Returns the best genome ever evaluated.
GaResult gen_alg(const KeySet& keys, const GaConfig& config,
                 const FitnessConfig& fitness_config,
                 const GaProgressFn& progress = nullptr);

}  // namespace nph
