#pragma once

#include <functional>
#include <vector>

namespace hexsum {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with the given number of nodes, mapped to [0, 1].
/// Exact for polynomials of degree < 2 * count.
QuadratureRule gauss_legendre_unit(int count);

/// Adaptive Gauss-Kronrod integral of fn over [a, b]; tolerance is relative to the L1 norm.
double integrate_adaptive(const std::function<double(double)>& fn, double a, double b, double tolerance = 1e-13);

}  // namespace hexsum
