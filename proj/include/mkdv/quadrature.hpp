#pragma once

#include <span>
#include <vector>

namespace mkdv {

struct GaussRule {
    std::vector<double> nodes;    // ascending on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// Finite-difference weights for the m-th derivative at z from the stencil
/// points `x` (Fornberg's recursion). Returns one weight per stencil point.
std::vector<double> fd_weights(double z, std::span<const double> x, int m);

}  // namespace mkdv
