#pragma once

#include <vector>

namespace hpfrac {

// Hierarchical 1D shape functions on (-1, 1) up to degree q:
// index 0 is (1-x)/2, index 1 is (1+x)/2 and index k >= 2 is the
// integrated Legendre mode (P_k - P_{k-2}) / sqrt(2(2k-1)).
void shape_1d(int q, double x, double* values, double* derivs);

/// Legendre values P_0..P_n at x.
void legendre_values(int n, double x, double* out);

/// Tabulated shape functions at the points of a rule, row-major [point][function].
struct ShapeTable {
  int q = 0;
  int npts = 0;
  std::vector<double> val;
  std::vector<double> der;

  double v(int pt, int k) const { return val[pt * (q + 1) + k]; }
  double d(int pt, int k) const { return der[pt * (q + 1) + k]; }
};

ShapeTable tabulate_shape_1d(int q, const std::vector<double>& points);

}  // namespace hpfrac
