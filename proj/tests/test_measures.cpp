#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "swdist/error.hpp"
#include "swdist/measures.hpp"
#include "swdist/projections.hpp"

using namespace swdist;

TEST_CASE("measure invariants are enforced") {
    CHECK_THROWS_AS(EmpiricalMeasure({0.0}, 1, {-0.1}), invalid_measure);
    CHECK_THROWS_AS(EmpiricalMeasure({0.0, 1.0}, 1, {0.5, 0.4}), invalid_measure);
    CHECK_THROWS_AS(EmpiricalMeasure({std::nan("")}, 1, {1.0}), invalid_measure);
    const auto m = EmpiricalMeasure::uniform({0.0, 1.0, 2.0}, 1);
    CHECK(m.size() == 3);
    CHECK(m.has_uniform_weights());
}

TEST_CASE("moment_p basic values") {
    const auto origin = EmpiricalMeasure::uniform({0.0, 0.0}, 2);
    CHECK(moment_p(origin, 1.0) == 0.0);
    CHECK(moment_p(origin, 3.5) == 0.0);

    const auto pm = EmpiricalMeasure::uniform({1.0, -1.0}, 1);
    CHECK(moment_p(pm, 2.0) == doctest::Approx(1.0).epsilon(1e-14));

    const auto pt = EmpiricalMeasure::uniform({3.0, 4.0}, 2);
    CHECK(moment_p(pt, 1.0) == doctest::Approx(5.0).epsilon(1e-14));

    CHECK_THROWS_AS(moment_p(pt, 0.5), invalid_parameter);
}

TEST_CASE("moment_p monotone in p") {
    auto eng = oracles::engine(11);
    std::normal_distribution<double> g;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> pts(3 * 8);
        for (double& v : pts) v = g(eng);
        const auto m = EmpiricalMeasure::uniform(std::move(pts), 3);
        double prev = 0.0;
        for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
            const double mp = moment_p(m, p);
            CHECK(mp >= prev - 1e-12);
            prev = mp;
        }
    }
}

TEST_CASE("lambda_21 closed cases") {
    const auto sphere = EmpiricalMeasure::uniform({1.0, 0.0, 0.0, -1.0}, 2);
    CHECK(lambda_21(sphere) == doctest::Approx(1.0).epsilon(1e-14));
    const auto origin = EmpiricalMeasure::uniform({0.0, 0.0}, 2);
    CHECK(lambda_21(origin) == 0.0);
}

TEST_CASE("lambda_21 matches the Uniform[0,1] closed form 2/3") {
    // norms ~ Uniform[0,1]: integral of sqrt(1-t) on [0,1] is 2/3
    UniformCubeSpec cube;
    cube.dim = 1;
    cube.side = 2.0;  // [-1,1]: |X| ~ Uniform[0,1]
    const auto m = generate(cube, 40000, 99);
    CHECK(lambda_21(m) == doctest::Approx(2.0 / 3.0).epsilon(0.02));
}

TEST_CASE("lambda_21 scales with the norms") {
    auto eng = oracles::engine(5);
    std::normal_distribution<double> g;
    std::vector<double> pts(2 * 12);
    for (double& v : pts) v = g(eng);
    std::vector<double> scaled = pts;
    const double a = 2.75;
    for (double& v : scaled) v *= a;
    const auto m1 = EmpiricalMeasure::uniform(std::move(pts), 2);
    const auto m2 = EmpiricalMeasure::uniform(std::move(scaled), 2);
    CHECK(lambda_21(m2) == doctest::Approx(a * lambda_21(m1)).epsilon(1e-12));
}

TEST_CASE("generate: determinism and point lists") {
    GaussianSpec g;
    g.mean = {0.0, 0.0};
    g.variance = 1.0;
    const auto a = generate(g, 50, 7);
    const auto b = generate(g, 50, 7);
    CHECK(a.points() == b.points());
    const auto c = generate(g, 50, 8);
    CHECK(a.points() != c.points());

    PointListSpec pl;
    pl.points = {0.0, 0.0};
    pl.dim = 2;
    const auto pm = generate(pl, 1, 0);
    CHECK(pm.size() == 1);
    CHECK(pm.weight(0) == 1.0);
}

TEST_CASE("generate: gaussian mean norm matches the chi distribution") {
    GaussianSpec g;
    g.mean = {0.0, 0.0};
    g.variance = 1.0;
    const std::size_t n = 10000;
    const auto m = generate(g, n, 321);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        mean += std::hypot(m.point(i)[0], m.point(i)[1]);
    mean /= static_cast<double>(n);
    const double expect = std::sqrt(M_PI / 2.0);          // E chi_2
    const double sd = std::sqrt(2.0 - M_PI / 2.0);        // sd of chi_2
    CHECK(std::abs(mean - expect) <= 4.0 * sd / std::sqrt(double(n)));
}

TEST_CASE("M_1 dominates the mean absolute projection") {
    auto eng = oracles::engine(17);
    std::normal_distribution<double> g;
    std::vector<double> pts(3 * 10);
    for (double& v : pts) v = g(eng);
    const auto m = EmpiricalMeasure::uniform(std::move(pts), 3);
    const double m1 = moment_p(m, 1.0);
    const auto dirs = sample_sphere(3, 25, 4);
    for (std::size_t k = 0; k < dirs.count(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            double dot = 0.0;
            for (std::size_t c = 0; c < 3; ++c) dot += dirs.dir(k)[c] * m.point(i)[c];
            acc += m.weight(i) * std::abs(dot);
        }
        CHECK(acc <= m1 + 1e-12);
    }
}
