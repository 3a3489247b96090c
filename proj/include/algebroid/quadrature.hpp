#pragma once

#include <cstddef>
#include <vector>

namespace algebroid {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [0, 1] (Golub-Welsch).
QuadratureRule gauss_legendre(std::size_t n);

}  // namespace algebroid
