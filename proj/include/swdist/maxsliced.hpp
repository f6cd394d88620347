#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swdist/measures.hpp"

namespace swdist {

struct MaxSlicedResult {
    double value = 0.0;            // exact W1 along argmax; a lower bound on MSW1
    std::vector<double> argmax;    // unit direction
    std::size_t restarts_used = 0;
    std::vector<double> trace;     // best value per restart
};

struct MswOptions {
    std::size_t restarts = 8;
    std::size_t max_iters = 100;
    double tol = 1e-7;
    double fd_step = 1e-4;  // central finite-difference step along tangent dirs
};

// Multi-start projected-gradient ascent of J(theta) = W1(theta# mu, theta# nu)
// on the sphere. First restart starts at the mean-gap direction when nonzero,
// the rest uniform on the sphere. The returned value is J re-evaluated at the
// returned direction.
MaxSlicedResult msw1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                     const MswOptions& opts, std::uint64_t seed);

// Brute-force maximum over grid_sphere directions, d <= 3.
MaxSlicedResult msw1_grid(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                          std::size_t resolution);

// Piecewise-linear function given by breakpoints, extended beyond the first
// and last breakpoints with the edge slopes.
struct PiecewiseLinear {
    std::vector<double> xs;  // strictly increasing
    std::vector<double> ys;
    double operator()(double x) const;
};

// Kantorovich witness value (mu - nu)(g o theta^T .) for a 1-Lipschitz g with
// g(0) = 0; never exceeds MSW1.
double dual_witness_check(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                          std::span<const double> theta, const PiecewiseLinear& g);

}  // namespace swdist
