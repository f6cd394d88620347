#include "swdist/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "swdist/error.hpp"

namespace swdist {

Sorted1D Sorted1D::from_samples(std::span<const double> values,
                                std::span<const double> weights) {
    if (values.size() != weights.size() || values.empty())
        throw invalid_measure("values/weights length mismatch or empty");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw invalid_measure("negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw invalid_measure("weights must sum to 1 within 1e-12");

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

    Sorted1D out;
    out.values_.reserve(values.size());
    out.cum_.reserve(values.size());
    double cum = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double v = values[order[k]];
        const double w = weights[order[k]];
        cum += w;
        if (!out.values_.empty() && out.values_.back() == v) {
            out.cum_.back() = cum;
        } else if (w > 0.0 || out.values_.empty()) {
            // zero-weight points are dropped unless everything has zero weight
            out.values_.push_back(v);
            out.cum_.push_back(cum);
        }
    }
    // drop a possible leading zero-weight atom
    while (out.values_.size() > 1 && out.cum_.front() == 0.0) {
        out.values_.erase(out.values_.begin());
        out.cum_.erase(out.cum_.begin());
    }
    out.cum_.back() = 1.0;
    return out;
}

Sorted1D Sorted1D::from_sorted_equal_weights(std::span<const double> sorted_values) {
    if (sorted_values.empty()) throw invalid_measure("empty sample");
    const double w = 1.0 / static_cast<double>(sorted_values.size());
    Sorted1D out;
    out.values_.reserve(sorted_values.size());
    out.cum_.reserve(sorted_values.size());
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        const double v = sorted_values[i];
        if (!out.values_.empty() && out.values_.back() == v) {
            out.cum_.back() += w;
        } else {
            out.values_.push_back(v);
            out.cum_.push_back((out.cum_.empty() ? 0.0 : out.cum_.back()) + w);
        }
    }
    out.cum_.back() = 1.0;
    return out;
}

bool Sorted1D::same_measure(const Sorted1D& other, double tol) const {
    if (values_.size() != other.values_.size()) return false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (std::abs(values_[i] - other.values_[i]) > tol) return false;
        if (std::abs(cum_[i] - other.cum_[i]) > tol) return false;
    }
    return true;
}

double w1_1d(const Sorted1D& a, const Sorted1D& b) {
    const auto& va = a.values();
    const auto& ca = a.cumweights();
    const auto& vb = b.values();
    const auto& cb = b.cumweights();
    std::size_t i = 0, j = 0;
    double fa = 0.0, fb = 0.0;  // CDF values left of the current breakpoint
    double prev = 0.0;
    bool have_prev = false;
    double total = 0.0;
    while (i < va.size() || j < vb.size()) {
        double x;
        if (i < va.size() && (j >= vb.size() || va[i] <= vb[j])) x = va[i];
        else x = vb[j];
        if (have_prev) total += std::abs(fa - fb) * (x - prev);
        while (i < va.size() && va[i] == x) fa = ca[i++];
        while (j < vb.size() && vb[j] == x) fb = cb[j++];
        prev = x;
        have_prev = true;
    }
    return total;
}

double wp_1d(const Sorted1D& a, const Sorted1D& b, double p) {
    if (p < 1.0) throw invalid_parameter("order p must be >= 1");
    const auto& va = a.values();
    const auto& ca = a.cumweights();
    const auto& vb = b.values();
    const auto& cb = b.cumweights();
    // Walk the merged partition of (0,1); on each cell both generalized
    // inverses are constant (right-continuous infimum convention).
    std::size_t i = 0, j = 0;
    double u_prev = 0.0;
    double total = 0.0;
    while (i < ca.size() && j < cb.size()) {
        const double u_next = std::min(ca[i], cb[j]);
        const double seg = u_next - u_prev;
        if (seg > 0.0) {
            const double diff = std::abs(va[i] - vb[j]);
            total += (p == 1.0) ? seg * diff : seg * std::pow(diff, p);
        }
        if (ca[i] == u_next) ++i;
        if (j < cb.size() && cb[j] == u_next) ++j;
        u_prev = u_next;
    }
    return (p == 1.0) ? total : std::pow(total, 1.0 / p);
}

}  // namespace swdist
