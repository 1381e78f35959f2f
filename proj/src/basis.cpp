#include "hpfrac/basis.hpp"

#include <cmath>

namespace hpfrac {

void legendre_values(int n, double x, double* out) {
  out[0] = 1.0;
  if (n >= 1) out[1] = x;
  for (int k = 2; k <= n; ++k) out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

void shape_1d(int q, double x, double* values, double* derivs) {
  double leg[64];
  legendre_values(q, x, leg);
  values[0] = 0.5 * (1.0 - x);
  values[1] = 0.5 * (1.0 + x);
  derivs[0] = -0.5;
  derivs[1] = 0.5;
  for (int k = 2; k <= q; ++k) {
    values[k] = (leg[k] - leg[k - 2]) / std::sqrt(2.0 * (2.0 * k - 1.0));
    derivs[k] = std::sqrt(0.5 * (2.0 * k - 1.0)) * leg[k - 1];
  }
}

ShapeTable tabulate_shape_1d(int q, const std::vector<double>& points) {
  ShapeTable t;
  t.q = q;
  t.npts = static_cast<int>(points.size());
  t.val.resize(t.npts * (q + 1));
  t.der.resize(t.npts * (q + 1));
  for (int i = 0; i < t.npts; ++i) shape_1d(q, points[i], &t.val[i * (q + 1)], &t.der[i * (q + 1)]);
  return t;
}

}  // namespace hpfrac
