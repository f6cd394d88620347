#include "swdist/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swdist/error.hpp"
#include "swdist/rng.hpp"

namespace swdist {

DirectionSet sample_sphere(std::size_t d, std::size_t k, std::uint64_t seed) {
    if (d < 1 || k < 1) throw invalid_parameter("need d >= 1 and k >= 1");
    auto eng = make_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    DirectionSet out;
    out.dim = d;
    out.kind = DirectionKind::uniform_sphere;
    out.seed = seed;
    out.dirs.resize(k * d);
    for (std::size_t i = 0; i < k; ++i) {
        double* row = out.dirs.data() + i * d;
        double norm = 0.0;
        do {
            norm = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                row[j] = normal(eng);
                norm += row[j] * row[j];
            }
            norm = std::sqrt(norm);
        } while (norm == 0.0);
        for (std::size_t j = 0; j < d; ++j) row[j] /= norm;
    }
    return out;
}

DirectionSet sample_gaussian_dirs(std::size_t d, std::size_t k, double variance,
                                  std::uint64_t seed) {
    if (d < 1 || k < 1) throw invalid_parameter("need d >= 1 and k >= 1");
    if (!(variance > 0.0)) throw invalid_parameter("variance must be > 0");
    auto eng = make_engine(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(variance));
    DirectionSet out;
    out.dim = d;
    out.kind = DirectionKind::gaussian;
    out.variance = variance;
    out.seed = seed;
    out.dirs.resize(k * d);
    for (double& x : out.dirs) x = normal(eng);
    return out;
}

DirectionSet grid_sphere(std::size_t d, std::size_t resolution) {
    if (d < 1 || d > 3) throw unsupported_dimension("grid_sphere supports d in {1,2,3}");
    DirectionSet out;
    out.dim = d;
    out.kind = DirectionKind::grid;
    if (d == 1) {
        out.dirs = {-1.0, 1.0};
        return out;
    }
    if (resolution < 1) throw invalid_parameter("resolution must be >= 1");
    if (d == 2) {
        out.dirs.resize(resolution * 2);
        for (std::size_t i = 0; i < resolution; ++i) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) /
                               static_cast<double>(resolution);
            out.dirs[2 * i] = std::cos(phi);
            out.dirs[2 * i + 1] = std::sin(phi);
        }
        return out;
    }
    // Fibonacci sphere
    out.dirs.resize(resolution * 3);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < resolution; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) /
                                   static_cast<double>(resolution);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i);
        double* row = out.dirs.data() + 3 * i;
        row[0] = r * std::cos(phi);
        row[1] = r * std::sin(phi);
        row[2] = z;
        const double norm = std::sqrt(row[0] * row[0] + row[1] * row[1] + row[2] * row[2]);
        for (int j = 0; j < 3; ++j) row[j] /= norm;
    }
    return out;
}

void project_values(const EmpiricalMeasure& m, std::span<const double> theta,
                    std::span<double> out) {
    if (theta.size() != m.dim()) throw invalid_parameter("direction dimension mismatch");
    const std::size_t n = m.size();
    const std::size_t d = m.dim();
    const double* pts = m.points().data();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += theta[j] * pts[i * d + j];
        out[i] = s;
    }
}

Sorted1D project(const EmpiricalMeasure& m, std::span<const double> theta) {
    std::vector<double> vals(m.size());
    project_values(m, theta, vals);
    if (m.has_uniform_weights()) {
        std::sort(vals.begin(), vals.end());
        return Sorted1D::from_sorted_equal_weights(vals);
    }
    return Sorted1D::from_samples(vals, m.weights());
}

}  // namespace swdist
