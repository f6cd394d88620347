#include "swdist/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swdist/error.hpp"
#include "swdist/rng.hpp"

namespace swdist {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> points, std::size_t dim,
                                   std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)), d_(dim) {
    if (d_ < 1) throw invalid_measure("dimension must be >= 1");
    if (points_.empty() || points_.size() % d_ != 0)
        throw invalid_measure("points size not a multiple of dim");
    n_ = points_.size() / d_;
    if (weights_.size() != n_)
        throw invalid_measure("weights length does not match point count");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw invalid_measure("negative or non-finite weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw invalid_measure("weights must sum to 1 within 1e-12");
    for (double x : points_) {
        if (!std::isfinite(x)) throw invalid_measure("non-finite coordinate");
    }
}

EmpiricalMeasure EmpiricalMeasure::uniform(std::vector<double> points,
                                           std::size_t dim) {
    if (dim < 1 || points.empty() || points.size() % dim != 0)
        throw invalid_measure("bad point matrix");
    const std::size_t n = points.size() / dim;
    // Exact sum: n * (1/n) can miss 1 by an ulp, so assign the residual to the
    // last weight.
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    double total = std::accumulate(w.begin(), w.end() - 1, 0.0);
    w.back() = 1.0 - total;
    return EmpiricalMeasure(std::move(points), dim, std::move(w));
}

bool EmpiricalMeasure::has_uniform_weights(double tol) const {
    const double expect = 1.0 / static_cast<double>(n_);
    for (double w : weights_)
        if (std::abs(w - expect) > tol) return false;
    return true;
}

double moment_p(const EmpiricalMeasure& m, double p) {
    if (p < 1.0) throw invalid_parameter("moment order p must be >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double sq = 0.0;
        const double* x = m.point(i);
        for (std::size_t j = 0; j < m.dim(); ++j) sq += x[j] * x[j];
        acc += m.weight(i) * std::pow(std::sqrt(sq), p);
    }
    return std::pow(acc, 1.0 / p);
}

double lambda_21(const EmpiricalMeasure& m) {
    const std::size_t n = m.size();
    std::vector<std::pair<double, double>> nw(n);  // (norm, weight)
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        const double* x = m.point(i);
        for (std::size_t j = 0; j < m.dim(); ++j) sq += x[j] * x[j];
        nw[i] = {std::sqrt(sq), m.weight(i)};
    }
    std::sort(nw.begin(), nw.end());
    // Survival S(t) = P(||X|| > t) is a step function with jumps at the
    // distinct norms; integrate sqrt(S) exactly over each step.
    double integral = 0.0;
    double prev = 0.0;
    double survival = 1.0;
    std::size_t i = 0;
    while (i < n) {
        const double r = nw[i].first;
        double mass = 0.0;
        while (i < n && nw[i].first == r) mass += nw[i++].second;
        if (r > prev) integral += std::sqrt(std::max(survival, 0.0)) * (r - prev);
        survival -= mass;
        prev = r;
    }
    return integral;
}

std::size_t spec_dim(const DistributionSpec& spec) {
    if (const auto* g = std::get_if<GaussianSpec>(&spec)) return g->mean.size();
    if (const auto* u = std::get_if<UniformCubeSpec>(&spec)) return u->dim;
    return std::get<PointListSpec>(spec).dim;
}

EmpiricalMeasure generate(const DistributionSpec& spec, std::size_t n,
                          std::uint64_t seed) {
    if (n < 1) throw invalid_parameter("sample count must be >= 1");
    auto eng = make_engine(seed);
    if (const auto* g = std::get_if<GaussianSpec>(&spec)) {
        if (g->mean.empty()) throw invalid_parameter("gaussian spec needs a mean vector");
        if (!(g->variance > 0.0)) throw invalid_parameter("gaussian variance must be > 0");
        const std::size_t d = g->mean.size();
        const double sd = std::sqrt(g->variance);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> pts(n * d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j)
                pts[i * d + j] = g->mean[j] + sd * normal(eng);
        return EmpiricalMeasure::uniform(std::move(pts), d);
    }
    if (const auto* u = std::get_if<UniformCubeSpec>(&spec)) {
        if (u->dim < 1) throw invalid_parameter("cube dimension must be >= 1");
        std::uniform_real_distribution<double> unif(-u->side / 2.0, u->side / 2.0);
        std::vector<double> pts(n * u->dim);
        for (double& x : pts) x = unif(eng);
        return EmpiricalMeasure::uniform(std::move(pts), u->dim);
    }
    const auto& pl = std::get<PointListSpec>(spec);
    if (pl.dim < 1 || pl.points.empty() || pl.points.size() % pl.dim != 0)
        throw invalid_parameter("bad point list");
    const std::size_t m = pl.points.size() / pl.dim;
    if (n == m) {
        // The list itself, in order.
        return EmpiricalMeasure::uniform(pl.points, pl.dim);
    }
    // i.i.d. resample from the discrete uniform distribution on the list.
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::vector<double> pts(n * pl.dim);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = pick(eng);
        for (std::size_t j = 0; j < pl.dim; ++j)
            pts[i * pl.dim + j] = pl.points[k * pl.dim + j];
    }
    return EmpiricalMeasure::uniform(std::move(pts), pl.dim);
}

}  // namespace swdist
