#pragma once

#include <cstddef>
#include <vector>

namespace bcfrac {

struct QuadNode {
    double x;
    double w;
};

inline constexpr std::size_t kGaussPoints = 4;

// Composite 4-point Gauss-Legendre rule on [0, 1] with `panels` equal panels,
// nodes in increasing order.
std::vector<QuadNode> composite_gauss_legendre(std::size_t panels);

// Composite rule mapped to [lo, hi].
std::vector<QuadNode> composite_gauss_legendre(std::size_t panels, double lo, double hi);

} // namespace bcfrac
