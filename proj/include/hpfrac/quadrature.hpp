#pragma once

#include <vector>

namespace hpfrac {

struct QuadRule1D {
  enum class Kind { legendre, jacobi };
  Kind kind = Kind::legendre;
  double alpha = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre rule with n points on (-1, 1).
QuadRule1D gauss_legendre(int n);

/// Shared immutable Gauss-Legendre rules, built once per process.
const QuadRule1D& gauss_legendre_cached(int n);

/// Gauss-Jacobi rule on (0, 1) for the weight t^alpha, alpha > -1.
QuadRule1D gauss_jacobi(int n, double alpha);

/// Affine transplant of a rule on (-1, 1) to (a, b).
QuadRule1D map_rule(const QuadRule1D& rule, double a, double b);

}  // namespace hpfrac
