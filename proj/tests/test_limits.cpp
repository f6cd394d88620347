#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "swdist/limits.hpp"
#include "swdist/measures.hpp"
#include "swdist/projections.hpp"

using namespace swdist;

namespace {

EmpiricalMeasure uniform_1d(std::size_t n, std::uint64_t seed) {
    UniformCubeSpec cube;
    cube.dim = 1;
    cube.side = 1.0;  // [-1/2, 1/2]
    return generate(cube, n, seed);
}

double ref_cdf(const EmpiricalMeasure& ref, const double* theta, std::size_t d,
               double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) dot += theta[c] * ref.point(i)[c];
        if (dot <= t) acc += ref.weight(i);
    }
    return acc;
}

}  // namespace

TEST_CASE("cylinder grid shape and weights") {
    GaussianSpec g;
    g.mean = {0.0, 0.0};
    const auto ref = generate(g, 2000, 4);
    const auto dirs = grid_sphere(2, 16);
    const auto grid = make_cylinder_grid(ref, dirs, 24);
    CHECK(grid.node_count() == 16 * grid.t_nodes.size());
    CHECK(grid.t_nodes.size() >= 24);
    for (std::size_t i = 1; i < grid.t_nodes.size(); ++i)
        CHECK(grid.t_nodes[i] > grid.t_nodes[i - 1]);
    for (double w : grid.quad_weights) CHECK(w > 0.0);
}

TEST_CASE("covariance kernel by exact counting") {
    // point mass: indicators deterministic, K = 0
    const auto delta = EmpiricalMeasure::uniform({0.0, 0.0}, 2);
    const auto dirs = grid_sphere(2, 8);
    CylinderGrid grid;
    grid.dirs = dirs;
    grid.t_nodes = {-1.0, 0.5, 2.0};
    grid.quad_weights.assign(8 * 3, 1.0 / 24.0);
    CHECK(covariance_kernel(delta, grid).isZero(1e-15));

    GaussianSpec g;
    g.mean = {0.0, 0.0};
    const auto ref = generate(g, 500, 9);
    const auto K = covariance_kernel(ref, grid);
    CHECK(K.rows() == 24);
    CHECK((K - K.transpose()).norm() < 1e-12);
    // diagonal is F(1-F)
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t t = 0; t < 3; ++t) {
            const double F = ref_cdf(ref, dirs.dir(i), 2, grid.t_nodes[t]);
            CHECK(K(grid.node_index(i, t), grid.node_index(i, t)) ==
                  doctest::Approx(F * (1.0 - F)).epsilon(1e-12));
        }
    // PSD before jitter
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
}

TEST_CASE("d=1 kernel is the Brownian-bridge covariance F(min) - F1 F2") {
    const auto ref = uniform_1d(800, 12);
    CylinderGrid grid;
    grid.dirs = grid_sphere(1, 2);
    grid.t_nodes = {-0.3, -0.1, 0.2, 0.4};
    grid.quad_weights.assign(2 * 4, 0.125);
    const auto K = covariance_kernel(ref, grid);
    const double plus = 1.0;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            const double Fa = ref_cdf(ref, &plus, 1, grid.t_nodes[a]);
            const double Fb = ref_cdf(ref, &plus, 1, grid.t_nodes[b]);
            const double Fmin = ref_cdf(ref, &plus, 1,
                                        std::min(grid.t_nodes[a], grid.t_nodes[b]));
            CHECK(K(grid.node_index(1, a), grid.node_index(1, b)) ==
                  doctest::Approx(Fmin - Fa * Fb).epsilon(1e-10));
        }
}

TEST_CASE("limit draws: degeneracy, nonnegativity, vs-nu consistency") {
    const auto delta = EmpiricalMeasure::uniform({0.0, 0.0}, 2);
    const auto dirs = grid_sphere(2, 8);
    const auto dgrid = make_cylinder_grid(
        EmpiricalMeasure::uniform({0.0, 0.0, 1.0, 1.0}, 2), dirs, 10);
    const auto zero = simulate_limit_one_sample(delta, dgrid, 50, 3);
    for (double v : zero.draws) CHECK(v == 0.0);

    GaussianSpec g;
    g.mean = {0.0, 0.0};
    const auto ref = generate(g, 1500, 21);
    const auto grid = make_cylinder_grid(ref, dirs, 20);
    const auto one = simulate_limit_one_sample(ref, grid, 200, 7);
    CHECK(one.draws.size() == 200);
    for (double v : one.draws) CHECK(v >= 0.0);

    // identical references: the sign split is empty, functional reduces to L1
    const auto both = simulate_limit_vs_nu(ref, ref, grid, 200, 7);
    for (std::size_t i = 0; i < 200; ++i)
        CHECK(both.draws[i] == doctest::Approx(one.draws[i]).epsilon(1e-12));
}

TEST_CASE("vs-nu with dominating F: draws are centered signed integrals") {
    // mu split across the nodes, nu entirely to their right: F > G at all nodes
    const auto mu = EmpiricalMeasure::uniform({-2.0, 0.0, 0.5, 0.0}, 2);
    const auto nu = EmpiricalMeasure::uniform({2.0, 0.0}, 2);
    CylinderGrid grid;
    grid.dirs.dirs = {1.0, 0.0};
    grid.dirs.dim = 2;
    grid.dirs.kind = DirectionKind::grid;
    grid.t_nodes = {-1.0, 0.0, 1.0};
    grid.quad_weights.assign(3, 1.0 / 3.0);
    const auto sample = simulate_limit_vs_nu(mu, nu, grid, 4000, 5);
    double mean = 0.0, m2 = 0.0;
    for (double v : sample.draws) {
        mean += v;
        m2 += v * v;
    }
    mean /= 4000.0;
    m2 /= 4000.0;
    const double se = std::sqrt((m2 - mean * mean) / 4000.0);
    CHECK(std::abs(mean) <= 4.0 * se);  // linear functional of a centered process
    CHECK(m2 > 0.0);                    // F = 1/2 at every node, so K is not zero
}

TEST_CASE("empirical root-n draws: degeneracy and nonnegativity") {
    PointListSpec pl;
    pl.points = {1.0, 2.0};
    pl.dim = 2;
    RootnConfig cfg;
    cfg.n = 50;
    cfg.reps = 20;
    cfg.ref_size = 100;
    cfg.seed = 9;
    const auto dirs = grid_sphere(2, 16);
    const auto zero = empirical_rootn_distribution(pl, std::nullopt,
                                                   RootnStatistic::sw1_one_sample,
                                                   dirs, cfg);
    for (double v : zero.draws) CHECK(v == 0.0);

    GaussianSpec g;
    g.mean = {0.0, 0.0};
    RootnConfig cfg2;
    cfg2.n = 200;
    cfg2.reps = 30;
    cfg2.ref_size = 2000;
    cfg2.seed = 10;
    const auto draws = empirical_rootn_distribution(g, std::nullopt,
                                                    RootnStatistic::sw1_one_sample,
                                                    dirs, cfg2);
    CHECK(draws.draws.size() == 30);
    for (double v : draws.draws) CHECK(v > 0.0);
}

TEST_CASE("ks_distance") {
    LimitSample a, b;
    a.draws = {0.0, 1.0, 2.0};
    b.draws = {5.0, 6.0};
    CHECK(ks_distance(a, a) == 0.0);
    CHECK(ks_distance(a, b) == 1.0);
    LimitSample c;
    c.draws = {0.5, 1.5, 2.5};
    const double d = ks_distance(a, c);
    CHECK(d > 0.0);
    CHECK(d <= 1.0);
}

TEST_CASE("truncation adequacy: padded grid barely moves the mean") {
    GaussianSpec g;
    g.mean = {0.0, 0.0};
    const auto ref = generate(g, 2000, 33);
    const auto dirs = grid_sphere(2, 16);
    const auto base = make_cylinder_grid(ref, dirs, 40);
    const auto padded = make_cylinder_grid(ref, dirs, 40, 0.2);
    const auto a = simulate_limit_one_sample(ref, base, 300, 77);
    const auto b = simulate_limit_one_sample(ref, padded, 300, 77);
    double ma = 0.0, mb = 0.0;
    for (double v : a.draws) ma += v;
    for (double v : b.draws) mb += v;
    ma /= 300.0;
    mb /= 300.0;
    CHECK(std::abs(ma - mb) / ma < 0.05);
}
