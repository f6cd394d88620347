#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "oracles.hpp"
#include "swdist/error.hpp"
#include "swdist/inference.hpp"
#include "swdist/measures.hpp"

using namespace swdist;

namespace {

EmpiricalMeasure gauss(std::size_t n, double shift, std::uint64_t seed) {
    GaussianSpec g;
    g.mean = {shift, 0.0};
    return generate(g, n, seed);
}

}  // namespace

TEST_CASE("two_sample_test parameter validation") {
    const auto x = gauss(20, 0.0, 1);
    const auto y = gauss(20, 0.0, 2);
    EstimatorConfig cfg;
    CHECK_THROWS_AS(two_sample_test(x, y, StatKind::sw1, 0.05, 50, cfg, 1),
                    invalid_parameter);
    CHECK_THROWS_AS(two_sample_test(x, y, StatKind::sw1, 1.5, 200, cfg, 1),
                    invalid_parameter);
    const auto tiny = EmpiricalMeasure::uniform({0.0, 0.0}, 2);
    CHECK_THROWS_AS(two_sample_test(tiny, y, StatKind::sw1, 0.05, 200, cfg, 1),
                    invalid_parameter);
    const auto weighted = EmpiricalMeasure({0.0, 0.0, 1.0, 1.0}, 2, {0.7, 0.3});
    CHECK_THROWS_AS(two_sample_test(weighted, y, StatKind::sw1, 0.05, 200, cfg, 1),
                    invalid_parameter);
}

TEST_CASE("degenerate identical multisets: statistic 0, retain") {
    const auto x = EmpiricalMeasure::uniform({0.0, 0.0, 1.0, 1.0}, 2);
    EstimatorConfig cfg;
    const auto rep = two_sample_test(x, x, StatKind::msw1, 0.05, 100, cfg, 3);
    CHECK(rep.statistic_value == 0.0);
    CHECK(!rep.reject);
    CHECK(rep.m == 2);
    CHECK(rep.n == 2);
    CHECK(rep.bootstrap_draws.size() == 100);
    CHECK(rep.reject == (rep.statistic_value > rep.critical_value));
}

TEST_CASE("clear mean shift rejects; reproducible reports") {
    const auto x = gauss(150, 0.0, 11);
    const auto y = gauss(150, 1.5, 12);
    EstimatorConfig cfg;
    cfg.sw_dirs = 32;
    const auto rep = two_sample_test(x, y, StatKind::sw1, 0.05, 150, cfg, 7);
    CHECK(rep.reject);
    CHECK(rep.statistic_value > 0.0);
    const auto rep2 = two_sample_test(x, y, StatKind::sw1, 0.05, 150, cfg, 7);
    CHECK(test_report_json(rep) == test_report_json(rep2));
}

TEST_CASE("test report JSON round-trips") {
    const auto x = gauss(30, 0.0, 21);
    const auto y = gauss(30, 0.3, 22);
    EstimatorConfig cfg;
    cfg.sw_dirs = 16;
    const auto rep = two_sample_test(x, y, StatKind::sw1, 0.1, 120, cfg, 5);
    const auto j = nlohmann::json::parse(test_report_json(rep));
    CHECK(j["statistic_kind"] == "sw1");
    CHECK(j["m"] == 30);
    CHECK(j["alpha"] == 0.1);
    CHECK(j["bootstrap_draws"].size() == 120);
    CHECK(j["decision"] == (rep.reject ? "reject" : "retain"));
    CHECK(double(j["statistic_value"]) == rep.statistic_value);
    CHECK((double(j["statistic_value"]) > double(j["critical_value"])) == rep.reject);

    const auto csv = test_report_csv(rep);
    CHECK(csv.find("field,value\n") == 0);
    CHECK(csv.find("statistic_kind,sw1\n") != std::string::npos);
    CHECK(csv.find("m,30\n") != std::string::npos);
    CHECK(csv.find(std::string("decision,") + (rep.reject ? "reject" : "retain")) !=
          std::string::npos);
    std::size_t draws = 0, pos = 0;
    while ((pos = csv.find("bootstrap_draw,", pos)) != std::string::npos) {
        ++draws;
        pos += 1;
    }
    CHECK(draws == 120);
}

TEST_CASE("empirical_quantile midpoint interpolation") {
    CHECK(empirical_quantile({1.0, 2.0, 3.0, 4.0}, 0.5) ==
          doctest::Approx(2.5).epsilon(1e-15));
    CHECK(empirical_quantile({4.0, 1.0, 3.0, 2.0}, 0.5) ==
          doctest::Approx(2.5).epsilon(1e-15));
    CHECK(empirical_quantile({1.0, 2.0}, 0.0) == 1.0);
    CHECK(empirical_quantile({1.0, 2.0}, 1.0) == 2.0);
}

TEST_CASE("concentration bound values") {
    CHECK(concentration_bound(ConcentrationKind::msw1_subgaussian, 10, 0.0, 1.0, 3) ==
          2.0);
    CHECK(concentration_bound(ConcentrationKind::msw1_subgaussian, 1000, 0.5, 1.0, 2) ==
          doctest::Approx(2.0 * std::exp(-250.0 / 64.0)).epsilon(1e-12));
    CHECK(concentration_bound(ConcentrationKind::sw1_subgaussian, 1000, 0.5, 1.0, 2) ==
          doctest::Approx(2.0 * std::exp(-62.5)).epsilon(1e-12));
    CHECK_THROWS_AS(
        concentration_bound(ConcentrationKind::sw1_subgaussian, 0, 0.1, 1.0, 2),
        invalid_parameter);
    CHECK_THROWS_AS(
        concentration_bound(ConcentrationKind::sw1_subgaussian, 10, 0.1, -1.0, 2),
        invalid_parameter);
}

TEST_CASE("concentration bound monotonicity") {
    for (auto kind :
         {ConcentrationKind::msw1_subgaussian, ConcentrationKind::sw1_subgaussian}) {
        double prev_t = 10.0;
        for (double t : {0.1, 0.2, 0.4, 0.8}) {
            const double b = concentration_bound(kind, 500, t, 1.0, 3);
            CHECK(b <= prev_t + 1e-15);
            prev_t = b;
        }
        CHECK(concentration_bound(kind, 1000, 0.3, 1.0, 3) <=
              concentration_bound(kind, 500, 0.3, 1.0, 3));
        CHECK(concentration_bound(kind, 500, 0.3, 2.0, 3) >=
              concentration_bound(kind, 500, 0.3, 1.0, 3));
        CHECK(concentration_bound(kind, 500, 0.3, 1.0, 6) >=
              concentration_bound(kind, 500, 0.3, 1.0, 3));
    }
}

TEST_CASE("rate experiment: point mass degenerates cleanly") {
    PointListSpec pl;
    pl.points = {1.0, -1.0};
    pl.dim = 2;
    RateConfig cfg;
    cfg.ref_size = 100;
    cfg.est.sw_dirs = 8;
    const auto table = rate_experiment(pl, StatKind::sw1, {20, 40}, 10, cfg, 5);
    CHECK(table.degenerate);
    CHECK(std::isnan(table.fitted_slope));
    for (double m : table.mean_distance) CHECK(m == 0.0);

    const auto j = nlohmann::json::parse(rate_table_json(table));
    CHECK(j["fitted_slope"].is_null());
    CHECK(j["degenerate"] == true);

    const auto csv = rate_table_csv(table);
    CHECK(csv.find("n,mean_distance") == 0);
}

TEST_CASE("rate experiment: small gaussian run has a negative slope") {
    GaussianSpec g;
    g.mean = {0.0, 0.0};
    RateConfig cfg;
    cfg.ref_size = 4000;
    cfg.est.sw_dirs = 32;
    const auto table =
        rate_experiment(g, StatKind::sw1, {100, 200, 400, 800}, 10, cfg, 13);
    CHECK(!table.degenerate);
    CHECK(table.fitted_slope < -0.25);
    CHECK(table.fitted_slope > -0.75);
    CHECK(table.slope_stderr > 0.0);
    for (std::size_t i = 1; i < table.mean_distance.size(); ++i)
        CHECK(table.mean_distance[i] < table.mean_distance[i - 1]);
    // sqrt(n)-scaled means stay above a conservative floor of E||X - EX||
    const double mean_norm = std::sqrt(M_PI / 2.0);  // E chi_2
    for (std::size_t i = 0; i < table.n_grid.size(); ++i)
        CHECK(std::sqrt(double(table.n_grid[i])) * table.mean_distance[i] >=
              0.05 * mean_norm);
    CHECK_THROWS_AS(rate_experiment(g, StatKind::sw1, {100, 200}, 5, cfg, 13),
                    invalid_parameter);  // reps >= 10
}
