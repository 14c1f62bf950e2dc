#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "nph/genetic.hpp"

namespace nph {

/// The four benchmark families the CLI can regenerate.
enum class ExperimentKind { table1, fig2, fig3, fig4 };

std::string kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);

/// Grid of benchmark cells. Every random draw inside a cell comes from a
/// substream of (rng_seed, kind, n, alpha, trial), so rows do not depend on
/// execution order.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::table1;
    std::vector<std::uint64_t> sizes;
    std::vector<double> fill_factors;
    std::uint64_t trials = 1;
    std::uint64_t rng_seed = 1;
    GaConfig ga;
    double lambda = 0.5;
    std::size_t key_length = 16;
};

/// Sizes, fill factors, and trial count matching the published benchmarks:
/// table1 fixes n = 10^4 and sweeps the fill factor with 5 trials; the fig
/// kinds sweep n from 1000 to 10000 with one trial.
ExperimentSpec default_spec(ExperimentKind kind);

/// One CSV line. structure names the searcher the value belongs to
/// (np, bs, fks, theory; error marks an aborted run).
struct ResultRow {
    std::string experiment;
    std::uint64_t n = 0;
    double alpha = 0.0;
    std::string structure;
    std::string metric;
    double value = 0.0;
    std::uint64_t trial = 0;
};

using CellProgressFn = std::function<void(const std::string&)>;

/// Runs every grid cell and appends its rows. On a cell failure an error
/// marker row is appended before the exception propagates, so callers can
/// still flush the partial result.
void run_experiment(const ExperimentSpec& spec, std::vector<ResultRow>& rows,
                    const CellProgressFn& progress = nullptr);

extern const char kCsvHeader[];

/// Header plus one line per row, values rendered with %.10g.
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);

}  // namespace nph
