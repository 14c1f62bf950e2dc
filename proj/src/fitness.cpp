#include "nph/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "nph/errors.hpp"
#include "nph/hash.hpp"
#include "nph/prime.hpp"
#include "nph/probe.hpp"
#include "nph/table.hpp"

namespace nph {
namespace {

void check_config(const FitnessConfig& config) {
    if (!(config.lambda >= 0.0 && config.lambda <= 1.0)) {
        throw std::invalid_argument("fitness: lambda must be in [0, 1]");
    }
    if (!(config.fill_factor > 0.0 && config.fill_factor < 1.0)) {
        throw std::invalid_argument("fitness: fill factor must be in (0, 1)");
    }
}

FitnessReport finish_report(std::uint64_t total, std::uint64_t worst,
                            std::size_t queries, double lambda) {
    FitnessReport report;
    report.avg_comparisons =
        static_cast<double>(total) / static_cast<double>(queries);
    report.max_comparisons = static_cast<double>(worst);
    report.fitness =
        blended_fitness(report.avg_comparisons, report.max_comparisons, lambda);
    return report;
}

}  // namespace

double blended_fitness(double avg_comparisons, double max_comparisons,
                       double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("fitness: lambda must be in [0, 1]");
    }
    return lambda * avg_comparisons + (1.0 - lambda) * max_comparisons;
}

FitnessReport compute_fitness(std::uint32_t xor_key, const KeySet& keys,
                              const FitnessConfig& config) {
    check_config(config);
    if (keys.to_search.empty()) {
        throw std::invalid_argument("fitness: to_search is empty");
    }
    const NearPerfectTable table =
        NearPerfectTable::build(keys.to_insert, xor_key, config.fill_factor);
    std::uint64_t total = 0;
    std::uint64_t worst = 0;
    for (const auto& key : keys.to_search) {
        const SearchOutcome outcome = table.search(key);
        total += outcome.comparisons;
        worst = std::max(worst, outcome.comparisons);
    }
    return finish_report(total, worst, keys.to_search.size(), config.lambda);
}

FitnessEvaluator::FitnessEvaluator(const KeySet& keys, const FitnessConfig& config)
    : config_(config) {
    check_config(config);
    if (keys.to_insert.empty()) {
        throw std::invalid_argument("fitness: to_insert is empty");
    }
    if (keys.to_search.empty()) {
        throw std::invalid_argument("fitness: to_search is empty");
    }
    const double slots = std::ceil(static_cast<double>(keys.to_insert.size()) /
                                   config.fill_factor);
    table_size_ = next_prime_at_least(static_cast<std::uint64_t>(slots));

    std::unordered_map<std::string_view, std::int32_t> ids;
    ids.reserve(keys.to_insert.size());
    inserts_.reserve(keys.to_insert.size());
    for (const auto& key : keys.to_insert) {
        const std::string_view view(reinterpret_cast<const char*>(key.data()),
                                    key.size());
        const auto id = static_cast<std::int32_t>(inserts_.size());
        if (!ids.emplace(view, id).second) {
            throw std::invalid_argument("fitness: duplicate key in to_insert");
        }
        inserts_.push_back({hash1(key), hash2(key), id});
    }
    searches_.reserve(keys.to_search.size());
    for (const auto& key : keys.to_search) {
        const std::string_view view(reinterpret_cast<const char*>(key.data()),
                                    key.size());
        const auto it = ids.find(view);
        const std::int32_t id = it == ids.end() ? -1 : it->second;
        searches_.push_back({hash1(key), hash2(key), id});
    }
}

FitnessReport FitnessEvaluator::evaluate(std::uint32_t xor_key) const {
    const std::uint64_t n = table_size_;
    std::vector<std::int32_t> slots(n, -1);
    for (const HashedKey& entry : inserts_) {
        const std::uint64_t step = probe_step(entry.h2, xor_key, n);
        std::uint64_t pos = (entry.h1 ^ xor_key) % n;
        for (;;) {
            if (slots[pos] < 0) {
                slots[pos] = entry.id;
                break;
            }
            pos += step;
            if (pos >= n) pos -= n;
        }
    }

    std::uint64_t total = 0;
    std::uint64_t worst = 0;
    for (const HashedKey& entry : searches_) {
        const std::uint64_t step = probe_step(entry.h2, xor_key, n);
        std::uint64_t pos = (entry.h1 ^ xor_key) % n;
        std::uint64_t comparisons = 1;
        while (slots[pos] >= 0 && slots[pos] != entry.id) {
            pos += step;
            if (pos >= n) pos -= n;
            ++comparisons;
        }
        total += comparisons;
        worst = std::max(worst, comparisons);
    }
    return finish_report(total, worst, searches_.size(), config_.lambda);
}

}  // namespace nph
