#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace swdist {

// Weighted point cloud in R^d. Weights are nonnegative and sum to 1
// (checked to 1e-12 on construction). Immutable after construction.
class EmpiricalMeasure {
public:
    EmpiricalMeasure(std::vector<double> points, std::size_t dim,
                     std::vector<double> weights);

    // Equal weights 1/n.
    static EmpiricalMeasure uniform(std::vector<double> points, std::size_t dim);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }
    const double* point(std::size_t i) const { return points_.data() + i * d_; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    bool has_uniform_weights(double tol = 1e-12) const;

private:
    std::vector<double> points_;  // row-major n x d
    std::vector<double> weights_;
    std::size_t n_ = 0;
    std::size_t d_ = 0;
};

// M_p: p-th moment of the norm, (sum_i w_i ||x_i||^p)^(1/p), p >= 1.
double moment_p(const EmpiricalMeasure& m, double p);

// Exact integral of sqrt of the empirical survival function of ||X||.
double lambda_21(const EmpiricalMeasure& m);

struct GaussianSpec {
    std::vector<double> mean;  // length = dim
    double variance = 1.0;     // isotropic, covariance variance * I_d
};

struct UniformCubeSpec {
    std::size_t dim = 1;
    double side = 1.0;  // cube [-side/2, side/2]^d
};

struct PointListSpec {
    std::vector<double> points;  // row-major n x dim
    std::size_t dim = 1;
};

using DistributionSpec = std::variant<GaussianSpec, UniformCubeSpec, PointListSpec>;

std::size_t spec_dim(const DistributionSpec& spec);

// Deterministic for fixed (spec, n, seed); equal weights 1/n.
// For PointListSpec the points are returned as-is and n must match.
EmpiricalMeasure generate(const DistributionSpec& spec, std::size_t n,
                          std::uint64_t seed);

}  // namespace swdist
