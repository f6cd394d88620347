#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "swdist/maxsliced.hpp"
#include "swdist/measures.hpp"
#include "swdist/projections.hpp"

namespace swdist {

// Discretization of S^{d-1} x [t_min, t_max]: a sphere grid crossed with a
// shared t-node set. Node (i, j) has quadrature weight
// sphere_weight * t_cell_length.
struct CylinderGrid {
    DirectionSet dirs;            // grid kind
    std::vector<double> t_nodes;  // strictly increasing
    std::vector<double> quad_weights;  // size dirs.count() * t_nodes.size()

    std::size_t node_count() const { return dirs.count() * t_nodes.size(); }
    std::size_t node_index(std::size_t dir, std::size_t t) const {
        return dir * t_nodes.size() + t;
    }
};

// t-nodes: interior quantiles of the pooled projected reference at levels
// k/(m+1), plus tail nodes out to the pooled sample range so the quadrature
// covers where F still moves. pad_fraction > 0 extends the range further by
// that fraction (used by the truncation-adequacy check).
CylinderGrid make_cylinder_grid(const EmpiricalMeasure& ref, const DirectionSet& dirs,
                                std::size_t t_count, double pad_fraction = 0.0);

enum class LimitKind { one_sample_L1, one_sample_vs_nu, two_sample_paired };

struct LimitSample {
    std::vector<double> draws;
    LimitKind kind = LimitKind::one_sample_L1;
};

// Empirical-process covariance kernel over the grid nodes, by exact counting:
// K[a,b] = ref(I_a I_b) - ref(I_a) ref(I_b) with I_{(theta,t)}(x) = 1{theta^T x <= t}.
Eigen::MatrixXd covariance_kernel(const EmpiricalMeasure& ref, const CylinderGrid& grid);

// Quadrature-weighted L1 norms of Gaussian draws with the kernel covariance.
LimitSample simulate_limit_one_sample(const EmpiricalMeasure& ref,
                                      const CylinderGrid& grid, std::size_t reps,
                                      std::uint64_t seed);

// One-sample statistic against a second measure: cells split by sign of F - G
// (tie band 1e-9); signed integral over F != G plus |.| over F = G.
LimitSample simulate_limit_vs_nu(const EmpiricalMeasure& ref_mu,
                                 const EmpiricalMeasure& ref_nu,
                                 const CylinderGrid& grid, std::size_t reps,
                                 std::uint64_t seed);

enum class RootnStatistic { sw1_one_sample, sw1_vs_nu, msw1_one_sample };

struct RootnConfig {
    std::size_t n = 1000;        // sample size per replicate
    std::size_t reps = 200;
    std::size_t ref_size = 100000;  // frozen reference standing in for the truth
    std::uint64_t seed = 0;
    MswOptions msw;              // msw1_one_sample only
};

// Replicated sqrt(n)-scaled empirical statistics against a frozen large
// reference sample; directions are shared across replicates.
LimitSample empirical_rootn_distribution(const DistributionSpec& mu,
                                         const std::optional<DistributionSpec>& nu,
                                         RootnStatistic statistic,
                                         const DirectionSet& dirs,
                                         const RootnConfig& cfg);

// Sup distance between the empirical CDFs of two draw vectors.
double ks_distance(const LimitSample& a, const LimitSample& b);

}  // namespace swdist
