#pragma once

#include <cstdint>
#include <vector>

#include "nph/bytes.hpp"
#include "nph/keyset.hpp"

namespace nph {

/// Weights for the search-cost objective. lambda in [0, 1], fill_factor in (0, 1).
struct FitnessConfig {
    double lambda = 0.5;
    double fill_factor = 0.5;
};

/// Cost summary for one XOR key over a fixed key set.
struct FitnessReport {
    double avg_comparisons = 0.0;
    double max_comparisons = 0.0;
    double fitness = 0.0;

    friend bool operator==(const FitnessReport&, const FitnessReport&) = default;
};

/// lambda * avg + (1 - lambda) * max. Lower is better.
double blended_fitness(double avg_comparisons, double max_comparisons, double lambda);

/// Builds the table for xor_key, runs every to_search lookup, and averages
/// the comparison counts. Reference path; see FitnessEvaluator for the fast one.
FitnessReport compute_fitness(std::uint32_t xor_key, const KeySet& keys,
                              const FitnessConfig& config);

/// Hashes the key set once so that evaluating an XOR key needs no byte
/// comparisons, only a probe-sequence replay over slot ids. evaluate() agrees
/// with compute_fitness exactly and is safe to call from several threads.
class FitnessEvaluator {
public:
    FitnessEvaluator(const KeySet& keys, const FitnessConfig& config);

    FitnessReport evaluate(std::uint32_t xor_key) const;

    std::uint64_t table_size() const { return table_size_; }
    const FitnessConfig& config() const { return config_; }

private:
    struct HashedKey {
        std::uint32_t h1;
        std::uint32_t h2;
        std::int32_t id;  // index into to_insert, -1 for a non-member
    };

    FitnessConfig config_;
    std::uint64_t table_size_;
    std::vector<HashedKey> inserts_;
    std::vector<HashedKey> searches_;
};

}  // namespace nph
