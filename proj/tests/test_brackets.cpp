#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "swdist/brackets.hpp"
#include "swdist/error.hpp"

using namespace swdist;

namespace {

// random 1-Lipschitz zigzag on the set's nodes, f(0) = 0
std::vector<double> random_zigzag(const BracketSet& set, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> f(set.node_count(), 0.0);
    for (std::size_t k = 1; k < f.size(); ++k)
        f[k] = f[k - 1] + u(eng) * (set.node_x(k) - set.node_x(k - 1));
    return f;
}

}  // namespace

TEST_CASE("bracket counts match the doubling formula") {
    CHECK(build_brackets(1.0, 1.0).count() == 2);
    CHECK(build_brackets(1.0, 0.5).count() == 8);
    CHECK(build_brackets(2.0, 0.5).count() == 128);
    CHECK(build_brackets(0.3, 1.0).count() == 1);  // single cell
    CHECK_THROWS_AS(build_brackets(21.0, 1.0), budget_exceeded);
}

TEST_CASE("bracket envelopes: ordering, gap, attainment") {
    for (const auto& [M, eps] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {1.0, 0.5}, {2.0, 0.5}, {1.0, 0.3}}) {
        const auto set = build_brackets(M, eps);
        double best_gap = 0.0;
        for (const auto& b : set.brackets) {
            double gap = 0.0;
            for (std::size_t k = 0; k < b.node_count(); ++k) {
                CHECK(b.lower_at(k) <= b.upper_at(k) + 1e-15);
                gap = std::max(gap, b.upper_at(k) - b.lower_at(k));
            }
            CHECK(gap <= eps + 1e-12);
            CHECK(b.upper_at(0) == 0.0);
            CHECK(b.lower_at(0) == 0.0);
            best_gap = std::max(best_gap, gap);
        }
        const double cells = 2.0 * M / eps;
        if (std::abs(cells - std::round(cells)) < 1e-12 && cells >= 2.0)
            CHECK(best_gap == doctest::Approx(eps).epsilon(1e-12));
    }
}

TEST_CASE("membership: canonical and random Lipschitz functions") {
    const auto set = build_brackets(1.0, 0.25);
    std::vector<double> id(set.node_count()), neg(set.node_count());
    for (std::size_t k = 0; k < set.node_count(); ++k) {
        id[k] = set.node_x(k);
        neg[k] = -set.node_x(k);
    }
    const std::size_t i1 = bracket_membership(id, set);
    const std::size_t i2 = bracket_membership(neg, set);
    for (std::size_t k = 0; k < set.node_count(); ++k) {
        CHECK(set.brackets[i1].lower_at(k) <= id[k] + 1e-12);
        CHECK(set.brackets[i1].upper_at(k) >= id[k] - 1e-12);
        CHECK(set.brackets[i2].lower_at(k) <= neg[k] + 1e-12);
        CHECK(set.brackets[i2].upper_at(k) >= neg[k] - 1e-12);
    }

    auto eng = oracles::engine(2718);
    for (const auto& [M, eps] : std::vector<std::pair<double, double>>{
             {1.0, 0.5}, {1.0, 0.25}, {2.0, 0.8}}) {
        const auto s = build_brackets(M, eps);
        for (int rep = 0; rep < 400; ++rep) {
            const auto f = random_zigzag(s, eng);
            const std::size_t idx = bracket_membership(f, s);
            REQUIRE(idx < s.count());
            for (std::size_t k = 0; k < s.node_count(); ++k) {
                CHECK(s.brackets[idx].lower_at(k) <= f[k] + 1e-12);
                CHECK(s.brackets[idx].upper_at(k) >= f[k] - 1e-12);
            }
        }
    }
}

TEST_CASE("sphere covering bound") {
    CHECK(sphere_covering_bound(2, 4.0) == 4);
    CHECK(sphere_covering_bound(1, 4.0) == 2);
    CHECK(sphere_covering_bound(2, 0.1) == 1681);

    // greedy angular cover of the circle with Euclidean-radius-0.1 caps
    const double eps = 0.1;
    const double half_angle = 2.0 * std::asin(eps / 2.0);
    const std::size_t needed =
        static_cast<std::size_t>(std::ceil(2.0 * M_PI / (2.0 * half_angle)));
    CHECK(needed <= sphere_covering_bound(2, eps));
}

TEST_CASE("entropy integral bound") {
    CHECK(!entropy_integral_bound(3, 2.0, 1.0, 1.0).finite);
    CHECK(!entropy_integral_bound(3, 0.5, 1.0, 1.0).finite);
    CHECK_THROWS_AS(entropy_integral_bound(3, -1.0, 1.0, 1.0), invalid_parameter);

    const auto b = entropy_integral_bound(3, 4.0, 1.0, 1.0);
    CHECK(b.finite);
    CHECK(b.value > 0.0);

    // monotone in d
    CHECK(entropy_integral_bound(6, 4.0, 1.0, 1.0).value > b.value);
    // monotone decreasing in delta
    CHECK(entropy_integral_bound(3, 8.0, 1.0, 1.0).value < b.value);

    // quadrature oracle: composite Simpson on dyadic intervals [2^-k-1, 2^-k],
    // which resolves the e -> 0 singularity to well below 1e-6 relative
    const double C = std::sqrt(2.0 + 8.0 * 1.0 + 8.0 * 1.0);
    const double delta = 4.0;
    auto integrand = [&](double e) {
        return std::sqrt(4.0 * std::log(2.0) * std::pow(C / e, 1.0 + 2.0 / delta) +
                         3.0 * std::log1p(4.0 * C / e));
    };
    double acc = 0.0;
    for (int level = 0; level < 120; ++level) {
        const double hi = std::pow(2.0, -level);
        const double lo = hi / 2.0;
        const std::size_t m = 256;  // Simpson panels
        const double h = (hi - lo) / double(2 * m);
        double s = integrand(lo) + integrand(hi);
        for (std::size_t k = 1; k < 2 * m; ++k)
            s += integrand(lo + double(k) * h) * ((k % 2) ? 4.0 : 2.0);
        acc += s * h / 3.0;
    }
    CHECK(b.value == doctest::Approx(acc).epsilon(1e-4));
}
