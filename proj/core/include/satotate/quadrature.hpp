#pragma once

#include <vector>

namespace satotate {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [lo, hi]; exact for polynomials of
/// degree <= 2n - 1. Nodes by Newton iteration on P_n.
QuadratureRule gauss_legendre(int n, double lo, double hi);

}  // namespace satotate
