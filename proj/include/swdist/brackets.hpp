#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace swdist {

// One epsilon-bracket for 1-Lipschitz functions on [0, M] vanishing at 0.
// Envelopes are piecewise linear with slopes +-1 on cells of width eps/2;
// the first cell is always [-x, +x], later cells shift both envelopes up or
// down by eps/2 according to the branch bits in `mask` (bit c-1 set = cell
// c+1 goes up). Node values are reconstructed on demand.
struct Bracket {
    std::uint32_t mask = 0;
    std::uint32_t cells = 1;
    double eps = 1.0;
    double M = 1.0;

    std::size_t node_count() const { return cells + 1; }
    double node_x(std::size_t k) const;
    double upper_at(std::size_t k) const;
    double lower_at(std::size_t k) const;
};

struct BracketSet {
    double M = 1.0;
    double epsilon = 1.0;
    std::uint32_t cells = 1;
    std::vector<Bracket> brackets;  // index == mask

    std::size_t count() const { return brackets.size(); }
    double node_x(std::size_t k) const { return brackets.front().node_x(k); }
    std::size_t node_count() const { return cells + 1; }
};

// Recursive-doubling construction; count is exactly 2^(ceil(2M/eps) - 1).
// Guarded at M/eps <= 20.
BracketSet build_brackets(double M, double epsilon);

// Index of a bracket containing f (given by its values at the set's nodes);
// f must be 1-Lipschitz on the nodes with f(0) = 0.
std::size_t bracket_membership(std::span<const double> node_values,
                               const BracketSet& set);

// ceil((1 + 4/eps)^d): covering-number bound for S^{d-1}.
std::uint64_t sphere_covering_bound(std::size_t d, double epsilon);

struct EntropyBound {
    bool finite = false;
    double value = 0.0;  // meaningful only when finite
};

// Bracketing entropy integral bound for the max-sliced Lipschitz class,
// int_0^1 sqrt(4 log2 (C/e)^(1+2/delta) + d log(1+4C/e)) de with
// C = sqrt(2 + 8 m2 + 8 m2pd); infinite for delta <= 2.
EntropyBound entropy_integral_bound(std::size_t d, double delta, double m2,
                                    double m2pd);

}  // namespace swdist
