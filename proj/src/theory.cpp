#include "nph/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace nph {
namespace {

void check_fill(double fill) {
    if (!(fill > 0.0 && fill < 1.0)) {
        throw std::domain_error("theory: fill factor must be in (0, 1)");
    }
}

}  // namespace

double run_probability(double fill, std::uint64_t occupied_run) {
    check_fill(fill);
    return std::pow(fill, static_cast<double>(occupied_run)) * (1.0 - fill);
}

double expected_comparisons_exact(double fill, std::uint64_t table_size) {
    check_fill(fill);
    if (table_size < 1) {
        throw std::domain_error("theory: table size must be at least 1");
    }
    const double n = static_cast<double>(table_size);
    const double n_log_fill = n * std::log(fill);
    const double fill_n = std::exp(n_log_fill);            // fill^N
    const double one_minus_fill_n = -std::expm1(n_log_fill);  // 1 - fill^N
    return one_minus_fill_n / (1.0 - fill) - n * fill_n;
}

double expected_comparisons_asymptotic(double fill) {
    check_fill(fill);
    return 1.0 / (1.0 - fill);
}

}  // namespace nph
