#pragma once

#include <span>
#include <vector>

namespace swdist {

// One-dimensional weighted empirical distribution in sorted, tie-merged,
// cumulative form. Equality of measures is equality of this representation.
class Sorted1D {
public:
    static Sorted1D from_samples(std::span<const double> values,
                                 std::span<const double> weights);

    // Fast path for already sorted values with equal weights 1/n (used by
    // projection pushforwards of equal-weight measures). Ties are merged.
    static Sorted1D from_sorted_equal_weights(std::span<const double> sorted_values);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& cumweights() const { return cum_; }
    std::size_t size() const { return values_.size(); }

    bool same_measure(const Sorted1D& other, double tol = 0.0) const;

private:
    Sorted1D() = default;
    std::vector<double> values_;  // strictly increasing
    std::vector<double> cum_;     // strictly increasing, last = 1 (+-1e-12)
};

// Exact integral of |F - G| over the merged support partition.
double w1_1d(const Sorted1D& a, const Sorted1D& b);

// Exact (int_0^1 |F^{-1} - G^{-1}|^p du)^{1/p} over the merged quantile
// partition, p >= 1.
double wp_1d(const Sorted1D& a, const Sorted1D& b, double p);

}  // namespace swdist
