#include "nph/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "nph/binary_search.hpp"
#include "nph/fks.hpp"
#include "nph/keyset.hpp"
#include "nph/prime.hpp"
#include "nph/table.hpp"
#include "nph/theory.hpp"

namespace nph {
namespace {

struct SearchStats {
    double avg = 0.0;
    std::uint64_t worst = 0;
};

struct CellData {
    std::vector<HashKey> members;
    std::vector<HashKey> absent;
};

CellData make_cell_data(std::uint64_t cell_seed, std::uint64_t n,
                        std::size_t key_length) {
    CellData data;
    data.members = generate_random_keys(n, key_length, derive_stream(cell_seed, 1));
    data.absent = generate_absent_keys(data.members, n, derive_stream(cell_seed, 2));
    return data;
}

std::uint64_t alpha_code(double alpha) {
    return static_cast<std::uint64_t>(std::llround(alpha * 1000.0));
}

std::string format_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

void check_spec(const ExperimentSpec& spec) {
    if (spec.sizes.empty()) {
        throw std::invalid_argument("experiment: size list is empty");
    }
    for (const double alpha : spec.fill_factors) {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw std::invalid_argument(
                "experiment: fill factors must be in (0, 1)");
        }
    }
    if (spec.fill_factors.empty()) {
        throw std::invalid_argument("experiment: fill factor list is empty");
    }
    if (spec.trials < 1) {
        throw std::invalid_argument("experiment: trials must be at least 1");
    }
    if (spec.key_length < 1) {
        throw std::invalid_argument("experiment: key length must be at least 1");
    }
}

/// Measured comparison counts for one table over one query list.
template <typename Table, typename Keys>
SearchStats measure(const Table& table, const Keys& queries) {
    std::uint64_t total = 0;
    SearchStats stats;
    for (const auto& key : queries) {
        const auto outcome = table.search(key);
        total += outcome.comparisons;
        stats.worst = std::max(stats.worst, outcome.comparisons);
    }
    stats.avg = static_cast<double>(total) / static_cast<double>(queries.size());
    return stats;
}

void emit_np_rows(std::vector<ResultRow>& rows, const std::string& experiment,
                  std::uint64_t n, double alpha, std::uint64_t trial,
                  const NearPerfectTable& table, const CellData& data,
                  bool with_speedup) {
    const SearchStats hit = measure(table, data.members);
    const SearchStats miss = measure(table, data.absent);
    const double total_queries =
        static_cast<double>(data.members.size() + data.absent.size());
    const double mixed_avg =
        (hit.avg * static_cast<double>(data.members.size()) +
         miss.avg * static_cast<double>(data.absent.size())) /
        total_queries;
    const auto worst = static_cast<double>(std::max(hit.worst, miss.worst));

    rows.push_back({experiment, n, alpha, "np", "avg_comparisons", mixed_avg, trial});
    rows.push_back(
        {experiment, n, alpha, "np", "avg_comparisons_hit", hit.avg, trial});
    rows.push_back(
        {experiment, n, alpha, "np", "avg_comparisons_miss", miss.avg, trial});
    rows.push_back({experiment, n, alpha, "np", "worst_comparisons", worst, trial});
    if (with_speedup) {
        const double theory = expected_comparisons_asymptotic(alpha);
        rows.push_back({experiment, n, alpha, "np", "speedup_vs_theory_pct",
                        (theory - mixed_avg) / theory * 100.0, trial});
    }
}

void run_np_cell(const ExperimentSpec& spec, std::vector<ResultRow>& rows,
                 const std::string& experiment, std::uint64_t n, double alpha,
                 std::uint64_t trial, std::uint64_t cell_seed, bool with_speedup) {
    const CellData data = make_cell_data(cell_seed, n, spec.key_length);
    KeySet keys;
    keys.to_insert = data.members;
    keys.to_search = data.members;
    keys.to_search.insert(keys.to_search.end(), data.absent.begin(),
                          data.absent.end());

    GaConfig ga = spec.ga;
    ga.rng_seed = derive_stream(cell_seed, 3);
    const FitnessConfig fitness_config{spec.lambda, alpha};
    const GaResult result = gen_alg(keys, ga, fitness_config);

    const NearPerfectTable table =
        NearPerfectTable::build(data.members, result.best_key, alpha);
    if (with_speedup) {
        rows.push_back({experiment, n, alpha, "theory", "avg_comparisons",
                        expected_comparisons_asymptotic(alpha), trial});
    }
    emit_np_rows(rows, experiment, n, alpha, trial, table, data, with_speedup);
}

void run_bs_cell(const ExperimentSpec& spec, std::vector<ResultRow>& rows,
                 const std::string& experiment, std::uint64_t n,
                 std::uint64_t trial, std::uint64_t cell_seed) {
    const CellData data = make_cell_data(cell_seed, n, spec.key_length);
    const SortedArray array(data.members);
    const SearchStats stats = measure(array, data.members);
    rows.push_back(
        {experiment, n, 0.0, "bs", "avg_comparisons", stats.avg, trial});
    rows.push_back({experiment, n, 0.0, "bs", "worst_comparisons",
                    static_cast<double>(stats.worst), trial});
}

void run_fig4_cell(const ExperimentSpec& spec, std::vector<ResultRow>& rows,
                   const std::string& experiment, std::uint64_t n,
                   std::uint64_t trial, std::uint64_t cell_seed) {
    const CellData data = make_cell_data(cell_seed, n, spec.key_length);
    rows.push_back({experiment, n, 0.0, "bs", "table_size_slots",
                    static_cast<double>(n), trial});
    for (const double alpha : spec.fill_factors) {
        const double slots = std::ceil(static_cast<double>(n) / alpha);
        const auto table_size =
            next_prime_at_least(static_cast<std::uint64_t>(slots));
        rows.push_back({experiment, n, alpha, "np", "table_size_slots",
                        static_cast<double>(table_size), trial});
    }
    const FksTable fks = FksTable::build(data.members, derive_stream(cell_seed, 4));
    rows.push_back({experiment, n, 0.0, "fks", "table_size_slots",
                    static_cast<double>(fks.total_size()), trial});
}

}  // namespace

std::string kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::table1: return "table1";
        case ExperimentKind::fig2: return "fig2";
        case ExperimentKind::fig3: return "fig3";
        case ExperimentKind::fig4: return "fig4";
    }
    throw std::invalid_argument("experiment: unknown kind");
}

ExperimentKind kind_from_name(const std::string& name) {
    if (name == "table1") return ExperimentKind::table1;
    if (name == "fig2") return ExperimentKind::fig2;
    if (name == "fig3") return ExperimentKind::fig3;
    if (name == "fig4") return ExperimentKind::fig4;
    throw std::invalid_argument(
        "experiment: unknown kind \"" + name +
        "\" (expected table1, fig2, fig3, or fig4)");
}

ExperimentSpec default_spec(ExperimentKind kind) {
    ExperimentSpec spec;
    spec.kind = kind;
    switch (kind) {
        case ExperimentKind::table1:
            spec.sizes = {10000};
            spec.fill_factors = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
            spec.trials = 5;
            break;
        case ExperimentKind::fig2:
            spec.sizes = {1000, 2000, 3000, 4000, 5000,
                          6000, 7000, 8000, 9000, 10000};
            spec.fill_factors = {0.3, 0.7, 0.8, 0.9};
            break;
        case ExperimentKind::fig3:
            spec.sizes = {1000, 2000, 3000, 4000, 5000,
                          6000, 7000, 8000, 9000, 10000};
            spec.fill_factors = {0.1, 0.3, 0.5, 0.6};
            break;
        case ExperimentKind::fig4:
            spec.sizes = {1000, 2000, 3000, 4000, 5000,
                          6000, 7000, 8000, 9000, 10000};
            spec.fill_factors = {0.5};
            break;
    }
    return spec;
}

void run_experiment(const ExperimentSpec& spec, std::vector<ResultRow>& rows,
                    const CellProgressFn& progress) {
    check_spec(spec);
    const std::string experiment = kind_name(spec.kind);
    const auto kind_code = static_cast<std::uint64_t>(spec.kind);

    const auto announce = [&](std::uint64_t n, double alpha, std::uint64_t trial) {
        if (!progress) return;
        progress(experiment + " n=" + std::to_string(n) +
                 " alpha=" + format_value(alpha) +
                 " trial=" + std::to_string(trial));
    };
    const auto cell_seed = [&](std::uint64_t n, double alpha,
                               std::uint64_t trial) {
        return derive_stream(spec.rng_seed, kind_code, n,
                             (alpha_code(alpha) << 32) | trial);
    };

    for (const std::uint64_t n : spec.sizes) {
        for (std::uint64_t trial = 1; trial <= spec.trials; ++trial) {
            std::uint64_t marker_n = n;
            double marker_alpha = 0.0;
            try {
                switch (spec.kind) {
                    case ExperimentKind::table1:
                        for (const double alpha : spec.fill_factors) {
                            marker_alpha = alpha;
                            announce(n, alpha, trial);
                            run_np_cell(spec, rows, experiment, n, alpha, trial,
                                        cell_seed(n, alpha, trial), true);
                        }
                        break;
                    case ExperimentKind::fig2:
                    case ExperimentKind::fig3:
                        for (const double alpha : spec.fill_factors) {
                            marker_alpha = alpha;
                            announce(n, alpha, trial);
                            run_np_cell(spec, rows, experiment, n, alpha, trial,
                                        cell_seed(n, alpha, trial), false);
                        }
                        marker_alpha = 0.0;
                        run_bs_cell(spec, rows, experiment, n, trial,
                                    cell_seed(n, 0.0, trial));
                        break;
                    case ExperimentKind::fig4:
                        announce(n, spec.fill_factors.front(), trial);
                        run_fig4_cell(spec, rows, experiment, n, trial,
                                      cell_seed(n, 0.0, trial));
                        break;
                }
            } catch (...) {
                rows.push_back(
                    {experiment, marker_n, marker_alpha, "error", "error", 0.0,
                     trial});
                throw;
            }
        }
    }
}

const char kCsvHeader[] = "experiment,n,alpha,structure,metric,value,trial";

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const ResultRow& row : rows) {
        out << row.experiment << ',' << row.n << ',' << format_value(row.alpha)
            << ',' << row.structure << ',' << row.metric << ','
            << format_value(row.value) << ',' << row.trial << '\n';
    }
}

}  // namespace nph
