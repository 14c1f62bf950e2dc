#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nph/errors.hpp"
#include "nph/experiment.hpp"
#include "nph/genetic.hpp"
#include "nph/keyset.hpp"
#include "nph/rng.hpp"
#include "nph/table.hpp"
#include "nph/theory.hpp"

namespace {

struct GaFlags {
    std::size_t psize = 32;
    std::size_t elite = 4;
    double mutation_prob = 0.05;
    std::size_t theta1 = 100;
    std::size_t theta2 = 15;
};

void add_ga_flags(CLI::App* cmd, GaFlags& flags) {
    cmd->add_option("--psize", flags.psize, "Population size");
    cmd->add_option("--elite", flags.elite, "Individuals carried over unchanged");
    cmd->add_option("--mutation-prob", flags.mutation_prob,
                    "Chance that an offspring is mutated");
    cmd->add_option("--theta1", flags.theta1, "Generation limit");
    cmd->add_option("--theta2", flags.theta2,
                    "Stop after this many generations without improvement");
}

nph::GaConfig to_config(const GaFlags& flags, std::uint64_t seed) {
    nph::GaConfig config;
    config.population_size = flags.psize;
    config.elite_size = flags.elite;
    config.mutation_probability = flags.mutation_prob;
    config.max_generations = flags.theta1;
    config.stagnation_limit = flags.theta2;
    config.rng_seed = seed;
    return config;
}

void run_generate(std::uint64_t count, std::size_t key_length, std::uint64_t seed,
                  const std::string& out_path) {
    const auto keys = nph::generate_random_keys(count, key_length, seed);
    nph::save_keys(keys, out_path);
    std::cout << "wrote " << keys.size() << " keys to " << out_path << '\n';
}

void run_optimize(const std::string& keys_path, double alpha, double lambda,
                  const GaFlags& flags, std::uint64_t seed,
                  const std::string& out_path, bool progress) {
    const std::vector<nph::HashKey> members = nph::load_keys(keys_path);
    // Mixed query load: every member plus as many absent keys.
    const nph::KeySet keys =
        nph::make_benchmark_keyset(members, nph::derive_stream(seed, 1ull << 32));

    nph::GaProgressFn on_progress;
    if (progress) {
        on_progress = [](const nph::GaProgress& p) {
            std::fprintf(stderr, "generation %zu best %.10g mean %.10g\n",
                         p.generation, p.best_fitness, p.mean_fitness);
        };
    }
    const nph::GaResult result =
        nph::gen_alg(keys, to_config(flags, seed), {lambda, alpha}, on_progress);

    const nph::NearPerfectTable table =
        nph::NearPerfectTable::build(members, result.best_key, alpha);
    table.save(out_path);

    std::printf("k %u\n", result.best_key);
    std::printf("avg_comparisons %.10g\n", result.best_report.avg_comparisons);
    std::printf("worst_comparisons %.10g\n", result.best_report.max_comparisons);
    std::printf("fitness %.10g\n", result.best_report.fitness);
    std::printf("generations %zu\n", result.generations_run);
    std::printf("table_size %llu\n",
                static_cast<unsigned long long>(table.table_size()));
    std::cout << "saved " << out_path << '\n';
}

void run_search(const std::string& table_path, const std::string& hex_key) {
    const nph::NearPerfectTable table = nph::NearPerfectTable::load(table_path);
    const nph::HashKey key = nph::from_hex(hex_key);
    std::vector<std::uint64_t> trail;
    const nph::SearchOutcome outcome = table.search(key, trail);
    std::cout << (outcome.found ? "found" : "not found") << '\n';
    std::cout << "comparisons " << outcome.comparisons << '\n';
    std::cout << "trail";
    for (const std::uint64_t slot : trail) std::cout << ' ' << slot;
    std::cout << '\n';
}

void write_csv_file(const std::vector<nph::ResultRow>& rows,
                    const std::string& out_path) {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        throw nph::io_error("cannot open for writing: " + out_path);
    }
    nph::write_csv(rows, out);
    if (!out) {
        throw nph::io_error("failed to write CSV: " + out_path);
    }
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

/// Per fill factor: median measured average across trials, next to theory.
void print_table1_summary(const std::vector<nph::ResultRow>& rows) {
    std::map<double, std::vector<double>> measured;
    for (const nph::ResultRow& row : rows) {
        if (row.structure == "np" && row.metric == "avg_comparisons") {
            measured[row.alpha].push_back(row.value);
        }
    }
    std::printf("%-7s %-10s %-10s %s\n", "alpha", "measured", "theory",
                "speedup_pct");
    for (auto& [alpha, values] : measured) {
        const double theory = nph::expected_comparisons_asymptotic(alpha);
        const double mid = median(std::move(values));
        std::printf("%-7.2f %-10.4f %-10.4f %.2f\n", alpha, mid, theory,
                    (theory - mid) / theory * 100.0);
    }
}

void run_experiment_cmd(const std::string& kind_name,
                        const std::vector<std::uint64_t>& sizes,
                        const std::vector<double>& alphas, std::uint64_t trials,
                        std::uint64_t seed, double lambda, const GaFlags& flags,
                        std::size_t key_length, const std::string& out_path,
                        bool progress) {
    nph::ExperimentSpec spec = nph::default_spec(nph::kind_from_name(kind_name));
    if (!sizes.empty()) spec.sizes = sizes;
    if (!alphas.empty()) spec.fill_factors = alphas;
    if (trials != 0) spec.trials = trials;
    spec.rng_seed = seed;
    spec.lambda = lambda;
    spec.ga = to_config(flags, seed);
    spec.key_length = key_length;

    nph::CellProgressFn on_progress;
    if (progress) {
        on_progress = [](const std::string& cell) {
            std::fprintf(stderr, "%s\n", cell.c_str());
        };
    }

    std::vector<nph::ResultRow> rows;
    try {
        nph::run_experiment(spec, rows, on_progress);
    } catch (...) {
        // Partial rows end with an error marker; keep them inspectable.
        write_csv_file(rows, out_path);
        throw;
    }
    write_csv_file(rows, out_path);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
    if (spec.kind == nph::ExperimentKind::table1) {
        print_table1_summary(rows);
    }
}

void run_theory(const std::vector<double>& alphas, std::uint64_t table_size) {
    if (table_size > 0) {
        std::printf("%-7s %-10s %s\n", "alpha", "expected", "capped");
        for (const double alpha : alphas) {
            std::printf("%-7.2f %-10.2f %.6f\n", alpha,
                        nph::expected_comparisons_asymptotic(alpha),
                        nph::expected_comparisons_exact(alpha, table_size));
        }
        return;
    }
    std::printf("%-7s %s\n", "alpha", "expected");
    for (const double alpha : alphas) {
        std::printf("%-7.2f %.2f\n", alpha,
                    nph::expected_comparisons_asymptotic(alpha));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Read-only hash tables with an evolved XOR probe parameter"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand(
        "generate", "Write a file of distinct random keys, hex per line");
    std::uint64_t gen_count = 10000;
    std::size_t gen_keylen = 16;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    generate->add_option("--count", gen_count, "How many keys");
    generate->add_option("--keylen", gen_keylen, "Bytes per key");
    generate->add_option("--seed", gen_seed, "RNG seed");
    generate->add_option("--out", gen_out, "Output path")->required();
    generate->callback(
        [&] { run_generate(gen_count, gen_keylen, gen_seed, gen_out); });

    auto* optimize = app.add_subcommand(
        "optimize", "Evolve an XOR key for a keyset and store the built table");
    std::string opt_keys;
    double opt_alpha = 0.5;
    double opt_lambda = 0.5;
    GaFlags opt_ga;
    std::uint64_t opt_seed = 1;
    std::string opt_out;
    bool opt_progress = false;
    optimize->add_option("keys", opt_keys, "Keyset file")->required();
    optimize->add_option("--alpha", opt_alpha, "Fill factor in (0, 1)");
    optimize->add_option("--lambda", opt_lambda,
                         "Weight of the average against the worst case");
    add_ga_flags(optimize, opt_ga);
    optimize->add_option("--seed", opt_seed, "RNG seed");
    optimize->add_option("--out", opt_out, "Table output path")->required();
    optimize->add_flag("--progress", opt_progress,
                       "Per-generation progress on stderr");
    optimize->callback([&] {
        run_optimize(opt_keys, opt_alpha, opt_lambda, opt_ga, opt_seed, opt_out,
                     opt_progress);
    });

    auto* search = app.add_subcommand(
        "search", "Look a key up in a stored table and show the probe trail");
    std::string search_table;
    std::string search_key;
    search->add_option("table", search_table, "Table file")->required();
    search->add_option("key", search_key, "Key, hex-encoded")->required();
    search->callback([&] { run_search(search_table, search_key); });

    auto* experiment = app.add_subcommand(
        "experiment", "Run a benchmark grid and write its rows as CSV");
    std::string exp_kind;
    std::vector<std::uint64_t> exp_sizes;
    std::vector<double> exp_alphas;
    std::uint64_t exp_trials = 0;
    std::uint64_t exp_seed = 1;
    double exp_lambda = 0.5;
    GaFlags exp_ga;
    std::size_t exp_keylen = 16;
    std::string exp_out;
    bool exp_progress = false;
    experiment->add_option("kind", exp_kind, "table1, fig2, fig3, or fig4")
        ->required();
    experiment->add_option("--sizes", exp_sizes, "Element counts")
        ->delimiter(',');
    experiment->add_option("--alpha", exp_alphas, "Fill factors")
        ->delimiter(',');
    experiment->add_option("--trials", exp_trials,
                           "Repetitions per cell (0 keeps the default)");
    experiment->add_option("--seed", exp_seed, "RNG seed");
    experiment->add_option("--lambda", exp_lambda,
                           "Weight of the average against the worst case");
    add_ga_flags(experiment, exp_ga);
    experiment->add_option("--keylen", exp_keylen, "Bytes per key");
    experiment->add_option("--out", exp_out, "CSV output path")->required();
    experiment->add_flag("--progress", exp_progress, "Cell progress on stderr");
    experiment->callback([&] {
        run_experiment_cmd(exp_kind, exp_sizes, exp_alphas, exp_trials, exp_seed,
                           exp_lambda, exp_ga, exp_keylen, exp_out, exp_progress);
    });

    auto* theory = app.add_subcommand(
        "theory", "Print expected lookup costs for a list of fill factors");
    std::vector<double> theory_alphas = {0.1, 0.2, 0.3, 0.4, 0.5,
                                         0.6, 0.7, 0.8, 0.9};
    std::uint64_t theory_size = 0;
    theory->add_option("--alpha", theory_alphas, "Fill factors")
        ->delimiter(',');
    theory->add_option("--table-size", theory_size,
                       "Also print the expectation capped at this many slots");
    theory->callback([&] { run_theory(theory_alphas, theory_size); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
