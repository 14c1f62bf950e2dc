#include "nph/genetic.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace nph {
namespace {

constexpr double kRouletteEpsilon = 1e-6;

void check_config(const GaConfig& config) {
    if (config.population_size < 2) {
        throw std::invalid_argument("ga: population size must be at least 2");
    }
    if (config.elite_size >= config.population_size) {
        throw std::invalid_argument("ga: elite size must be below population size");
    }
    if (!(config.mutation_probability >= 0.0 && config.mutation_probability <= 1.0)) {
        throw std::invalid_argument("ga: mutation probability must be in [0, 1]");
    }
    if (config.max_generations < 1) {
        throw std::invalid_argument("ga: generation limit must be at least 1");
    }
    if (config.stagnation_limit < 1) {
        throw std::invalid_argument("ga: stagnation limit must be at least 1");
    }
    if (config.max_mutation_bits < 1 || config.max_mutation_bits > 32) {
        throw std::invalid_argument("ga: mutation bit count must be in [1, 32]");
    }
}

/// Evaluates every genome, splitting the population across threads.
std::vector<FitnessReport> evaluate_population(
    const FitnessEvaluator& evaluator, const std::vector<Individual>& population) {
    std::vector<FitnessReport> reports(population.size());
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers =
        std::min<std::size_t>(hw == 0 ? 1 : hw, population.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < population.size(); ++i) {
            reports[i] = evaluator.evaluate(population[i].genome);
        }
        return reports;
    }
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < population.size(); i += workers) {
                reports[i] = evaluator.evaluate(population[i].genome);
            }
        }));
    }
    for (auto& task : tasks) task.get();
    return reports;
}

std::size_t best_index(const std::vector<Individual>& population,
                       const std::vector<double>& fitness_values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (fitness_values[i] < fitness_values[best] ||
            (fitness_values[i] == fitness_values[best] &&
             population[i].genome < population[best].genome)) {
            best = i;
        }
    }
    return best;
}

}  // namespace

std::vector<Individual> select_top(const std::vector<Individual>& population,
                                   const std::vector<double>& fitness_values,
                                   std::size_t count) {
    if (fitness_values.size() != population.size()) {
        throw std::invalid_argument("select_top: fitness count mismatch");
    }
    if (count > population.size()) {
        throw std::invalid_argument("select_top: count exceeds population");
    }
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fitness_values[a] != fitness_values[b]) {
            return fitness_values[a] < fitness_values[b];
        }
        return population[a].genome < population[b].genome;
    });
    std::vector<Individual> top;
    top.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        top.push_back(population[order[i]]);
    }
    return top;
}

std::size_t roulette_draw(const std::vector<double>& fitness_values,
                          SplitMix64& rng) {
    if (fitness_values.empty()) {
        throw std::invalid_argument("roulette: empty fitness vector");
    }
    const double worst =
        *std::max_element(fitness_values.begin(), fitness_values.end());
    double total = 0.0;
    for (const double f : fitness_values) {
        total += (worst - f) + kRouletteEpsilon;
    }
    const double target = rng.next_unit() * total;
    double cursor = 0.0;
    for (std::size_t i = 0; i < fitness_values.size(); ++i) {
        cursor += (worst - fitness_values[i]) + kRouletteEpsilon;
        if (target < cursor) return i;
    }
    return fitness_values.size() - 1;
}

std::pair<Individual, Individual> roulette_select(
    const std::vector<Individual>& population,
    const std::vector<double>& fitness_values, SplitMix64& rng) {
    if (population.size() < 2) {
        throw std::invalid_argument("roulette: population must hold at least 2");
    }
    if (fitness_values.size() != population.size()) {
        throw std::invalid_argument("roulette: fitness count mismatch");
    }
    const std::size_t first = roulette_draw(fitness_values, rng);
    std::size_t second = roulette_draw(fitness_values, rng);
    for (int redraw = 0; redraw < 16 && second == first; ++redraw) {
        second = roulette_draw(fitness_values, rng);
    }
    return {population[first], population[second]};
}

std::pair<Individual, Individual> crossover(const Individual& parent1,
                                            const Individual& parent2) {
    const std::uint32_t high1 = parent1.genome & 0xFFFF0000u;
    const std::uint32_t high2 = parent2.genome & 0xFFFF0000u;
    const std::uint32_t low1 = parent1.genome & 0x0000FFFFu;
    const std::uint32_t low2 = parent2.genome & 0x0000FFFFu;
    return {Individual{high1 | low2}, Individual{high2 | low1}};
}

Individual mutate(const Individual& individual, double mutation_probability,
                  SplitMix64& rng, std::uint32_t max_bits) {
    if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
        throw std::invalid_argument("mutate: probability must be in [0, 1]");
    }
    if (max_bits < 1 || max_bits > 32) {
        throw std::invalid_argument("mutate: bit count must be in [1, 32]");
    }
    if (rng.next_unit() >= mutation_probability) {
        return individual;
    }
    const std::uint32_t flips =
        1 + static_cast<std::uint32_t>(rng.next_below(max_bits));
    std::uint32_t mask = 0;
    std::uint32_t chosen = 0;
    while (chosen < flips) {
        const std::uint32_t bit = 1u << rng.next_below(32);
        if (mask & bit) continue;
        mask |= bit;
        ++chosen;
    }
    return Individual{individual.genome ^ mask};
}

GaResult gen_alg(const KeySet& keys, const GaConfig& config,
                 const FitnessConfig& fitness_config,
                 const GaProgressFn& progress) {
    check_config(config);
    const FitnessEvaluator evaluator(keys, fitness_config);

    std::vector<Individual> population;
    population.reserve(config.population_size);
    {
        SplitMix64 seeder(derive_stream(config.rng_seed, 0));
        for (std::size_t i = 0; i < config.population_size; ++i) {
            population.push_back(Individual{seeder.next_u32()});
        }
    }

    GaResult result;
    std::size_t last_improvement = 1;
    bool has_best = false;

    for (std::size_t generation = 1;; ++generation) {
        const std::vector<FitnessReport> reports =
            evaluate_population(evaluator, population);
        std::vector<double> fitness_values(population.size());
        double fitness_sum = 0.0;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            fitness_values[i] = reports[i].fitness;
            fitness_sum += reports[i].fitness;
        }

        const std::size_t best = best_index(population, fitness_values);
        if (!has_best || fitness_values[best] < result.best_report.fitness) {
            has_best = true;
            result.best_key = population[best].genome;
            result.best_report = reports[best];
            last_improvement = generation;
        }
        result.history.push_back(fitness_values[best]);
        result.generations_run = generation;
        if (progress) {
            progress({generation, fitness_values[best],
                      fitness_sum / static_cast<double>(population.size())});
        }

        if (generation >= config.max_generations) break;
        if (generation - last_improvement >= config.stagnation_limit) break;

        std::vector<Individual> next =
            select_top(population, fitness_values, config.elite_size);
        SplitMix64 rng(derive_stream(config.rng_seed, generation));
        while (next.size() < config.population_size) {
            const auto [parent1, parent2] =
                roulette_select(population, fitness_values, rng);
            const auto [child1, child2] = crossover(parent1, parent2);
            next.push_back(mutate(child1, config.mutation_probability, rng,
                                  config.max_mutation_bits));
            if (next.size() < config.population_size) {
                next.push_back(mutate(child2, config.mutation_probability, rng,
                                      config.max_mutation_bits));
            }
        }
        population = std::move(next);
    }
    return result;
}

}  // namespace nph
