#include "swdist/brackets.hpp"

#include <cmath>
#include <stdexcept>

#include "swdist/error.hpp"

namespace swdist {

double Bracket::node_x(std::size_t k) const {
    return std::min(static_cast<double>(k) * eps / 2.0, M);
}

double Bracket::upper_at(std::size_t k) const {
    double u = 0.0;
    for (std::size_t c = 1; c <= k; ++c) {
        const double w = node_x(c) - node_x(c - 1);
        if (c == 1) {
            u += w;
        } else {
            const bool up = (mask >> (c - 2)) & 1u;
            u += up ? w : -w;
        }
    }
    return u;
}

double Bracket::lower_at(std::size_t k) const {
    if (k == 0) return 0.0;
    // After the first cell the gap is fixed at 2 * (width of cell 1).
    const double w1 = node_x(1) - node_x(0);
    return upper_at(k) - 2.0 * w1;
}

BracketSet build_brackets(double M, double epsilon) {
    if (!(M > 0.0) || !(epsilon > 0.0))
        throw invalid_parameter("need M > 0 and epsilon > 0");
    if (M / epsilon > 20.0)
        throw budget_exceeded("M/epsilon > 20");
    const std::uint32_t cells =
        static_cast<std::uint32_t>(std::ceil(2.0 * M / epsilon - 1e-12));
    const std::uint64_t count = 1ULL << (cells - 1);
    if (count > (1ULL << 20)) throw budget_exceeded("more than 2^20 brackets");

    BracketSet set;
    set.M = M;
    set.epsilon = epsilon;
    set.cells = cells;
    set.brackets.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        set.brackets[i] = Bracket{static_cast<std::uint32_t>(i), cells, epsilon, M};
    return set;
}

std::size_t bracket_membership(std::span<const double> node_values,
                               const BracketSet& set) {
    const std::size_t nodes = set.node_count();
    if (node_values.size() != nodes)
        throw invalid_parameter("function must be given at the set's nodes");
    if (std::abs(node_values[0]) > 1e-9)
        throw invalid_parameter("function must vanish at 0");
    for (std::size_t k = 1; k < nodes; ++k) {
        const double dx = set.node_x(k) - set.node_x(k - 1);
        if (std::abs(node_values[k] - node_values[k - 1]) > dx + 1e-9)
            throw invalid_parameter("function is not 1-Lipschitz on the nodes");
    }

    // Greedy branch choice: go up whenever the next value stays above the
    // down-branch upper envelope.
    std::uint32_t mask = 0;
    double u = set.node_x(1) - set.node_x(0);  // upper value after cell 1
    for (std::size_t c = 2; c <= set.cells; ++c) {
        const double w = set.node_x(c) - set.node_x(c - 1);
        if (node_values[c] >= u - w - 1e-12) {
            mask |= 1u << (c - 2);
            u += w;
        } else {
            u -= w;
        }
    }
    const Bracket& b = set.brackets[mask];
    for (std::size_t k = 0; k < nodes; ++k) {
        if (node_values[k] > b.upper_at(k) + 1e-9 ||
            node_values[k] < b.lower_at(k) - 1e-9)
            throw std::logic_error("bracket cover property violated");
    }
    return mask;
}

std::uint64_t sphere_covering_bound(std::size_t d, double epsilon) {
    if (d < 1 || !(epsilon > 0.0)) throw invalid_parameter("need d >= 1 and epsilon > 0");
    const double bound = std::pow(1.0 + 4.0 / epsilon, static_cast<double>(d));
    if (bound > 1e18) throw budget_exceeded("covering bound exceeds 1e18");
    return static_cast<std::uint64_t>(std::ceil(bound - 1e-9));
}

EntropyBound entropy_integral_bound(std::size_t d, double delta, double m2,
                                    double m2pd) {
    if (!(delta > 0.0)) throw invalid_parameter("delta must be > 0");
    if (m2 < 0.0 || m2pd < 0.0) throw invalid_parameter("moments must be >= 0");
    if (delta <= 2.0) return {false, 0.0};

    const double C = std::sqrt(2.0 + 8.0 * m2 + 8.0 * m2pd);
    const double expo = 1.0 + 2.0 / delta;
    const double dd = static_cast<double>(d);
    const double log2c = 4.0 * std::log(2.0);
    auto phi = [&](double eps) {
        return std::sqrt(log2c * std::pow(C / eps, expo) +
                         dd * std::log1p(4.0 * C / eps));
    };
    // Substitution eps = u^s with s = 2 delta / (delta - 2) flattens the
    // endpoint singularity exactly (the power-term integrand becomes constant
    // at u = 0).
    const double s = 2.0 * delta / (delta - 2.0);
    auto integrand = [&](double u) {
        if (u <= 0.0) return s * 2.0 * std::sqrt(std::log(2.0)) * std::pow(C, expo / 2.0);
        const double eps = std::pow(u, s);
        return phi(eps) * s * std::pow(u, s - 1.0);
    };
    // composite Simpson
    const std::size_t N = 4096;
    const double h = 1.0 / static_cast<double>(N);
    double acc = integrand(0.0) + integrand(1.0);
    for (std::size_t i = 1; i < N; ++i)
        acc += (i % 2 == 1 ? 4.0 : 2.0) * integrand(static_cast<double>(i) * h);
    return {true, acc * h / 3.0};
}

}  // namespace swdist
