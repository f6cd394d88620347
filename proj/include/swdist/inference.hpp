#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swdist/maxsliced.hpp"
#include "swdist/measures.hpp"

namespace swdist {

enum class StatKind { sw1, msw1 };

// Estimator settings shared between the observed statistic and every
// bootstrap replicate (same direction seed / optimizer settings, so only
// resampling noise differs across replicates).
struct EstimatorConfig {
    std::size_t sw_dirs = 64;      // sw1: number of uniform-sphere directions
    std::uint64_t dir_seed = 1;    // sw1: direction seed
    MswOptions msw;                // msw1 optimizer settings
};

struct TestReport {
    StatKind statistic_kind = StatKind::sw1;
    std::size_t m = 0, n = 0;
    double statistic_value = 0.0;  // sqrt(mn/N) * distance
    std::vector<double> bootstrap_draws;
    double critical_value = 0.0;   // empirical (1-alpha) quantile of the draws
    double alpha = 0.05;
    bool reject = false;
    std::uint64_t seed = 0;
};

// Pooled-bootstrap two-sample test; X and Y must have equal weights.
TestReport two_sample_test(const EmpiricalMeasure& X, const EmpiricalMeasure& Y,
                           StatKind statistic_kind, double alpha,
                           std::size_t boot_reps, const EstimatorConfig& config,
                           std::uint64_t seed);

enum class ConcentrationKind { msw1_subgaussian, sw1_subgaussian };

// Explicit sub-Gaussian deviation bounds:
//   msw1: 2 exp(-n t^2 / (32 d sigma^2)),  sw1: 2 exp(-n t^2 / (4 sigma^2)).
double concentration_bound(ConcentrationKind kind, std::size_t n, double t,
                           double sigma2, std::size_t d);

struct RateTable {
    std::vector<std::size_t> n_grid;
    std::vector<double> mean_distance;
    std::size_t reps = 0;
    double fitted_slope = 0.0;  // log-log OLS; NaN when degenerate
    double slope_stderr = 0.0;
    bool degenerate = false;    // some mean distance was zero
};

struct RateConfig {
    std::size_t ref_size = 30000;  // frozen reference standing in for the truth
    EstimatorConfig est;
};

RateTable rate_experiment(const DistributionSpec& spec, StatKind distance,
                          const std::vector<std::size_t>& n_grid, std::size_t reps,
                          const RateConfig& config, std::uint64_t seed);

// Empirical quantile with midpoint interpolation on sorted copies.
double empirical_quantile(std::vector<double> draws, double level);

// JSON (stable key order) and CSV renderings for the report types.
std::string test_report_json(const TestReport& r);
std::string test_report_csv(const TestReport& r);
std::string rate_table_json(const RateTable& t);
std::string rate_table_csv(const RateTable& t);

}  // namespace swdist
