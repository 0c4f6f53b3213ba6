#pragma once

#include <cstddef>
#include <vector>

namespace fdakit {

/// Gauss-Legendre rule on [-1, 1]: nodes and weights for `n` points,
/// accurate to ~1e-15. Exact for polynomials of degree <= 2n-1.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t n);
};

}  // namespace fdakit
