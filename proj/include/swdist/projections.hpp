#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swdist/measures.hpp"
#include "swdist/ot1d.hpp"

namespace swdist {

enum class DirectionKind { uniform_sphere, gaussian, grid };

// A batch of projection directions with provenance.
struct DirectionSet {
    std::vector<double> dirs;  // row-major k x d
    std::size_t dim = 0;
    DirectionKind kind = DirectionKind::uniform_sphere;
    double variance = 0.0;     // gaussian only: 1/d or 1
    std::uint64_t seed = 0;    // unused for grid

    std::size_t count() const { return dim == 0 ? 0 : dirs.size() / dim; }
    const double* dir(std::size_t i) const { return dirs.data() + i * dim; }
    std::span<const double> dir_span(std::size_t i) const {
        return {dirs.data() + i * dim, dim};
    }
};

// i.i.d. uniform on S^{d-1} (normalized standard normals; d=1 gives +-1).
DirectionSet sample_sphere(std::size_t d, std::size_t k, std::uint64_t seed);

// i.i.d. N(0, variance * I_d), not normalized.
DirectionSet sample_gaussian_dirs(std::size_t d, std::size_t k, double variance,
                                  std::uint64_t seed);

// Deterministic near-uniform grids: d=1 -> {-1,+1}; d=2 -> equally spaced
// angles; d=3 -> Fibonacci sphere. Equal quadrature weights 1/k.
DirectionSet grid_sphere(std::size_t d, std::size_t resolution);

// Pushforward of m under x -> theta^T x.
Sorted1D project(const EmpiricalMeasure& m, std::span<const double> theta);

// Projected values, unsorted, into out (size m.size()).
void project_values(const EmpiricalMeasure& m, std::span<const double> theta,
                    std::span<double> out);

}  // namespace swdist
