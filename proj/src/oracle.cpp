#include "hpfrac/oracle.hpp"

#include <cmath>
#include <numbers>

#include "hpfrac/errors.hpp"
#include "hpfrac/extension.hpp"
#include "hpfrac/quadrature.hpp"

namespace hpfrac {

namespace {

constexpr double kPi = std::numbers::pi;

struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// sum over odd n > N of n^-2 (m^2 + n^2)^-s by the midpoint Euler-Maclaurin formula at a = N + 1.
double inner_tail(double m, double a, double s, const QuadRule1D& gj) {
  double integral = 0.0;
  for (int i = 0; i < gj.size(); ++i) {
    const double u = gj.nodes[i];
    integral += gj.weights[i] * std::pow(m * m * u * u + a * a, -s);
  }
  integral /= a;
  const double r = m * m + a * a;
  const double dh = -2.0 * std::pow(a, -3.0) * std::pow(r, -s) - 2.0 * s / a * std::pow(r, -s - 1.0);
  return 0.5 * integral + dh / 12.0;
}

}  // namespace

double SquareSeriesOracle::eigenvalue(int m, int n) { return kPi * kPi * (double(m) * m + double(n) * n); }

double SquareSeriesOracle::coefficient(int m, int n) {
  if (m % 2 == 0 || n % 2 == 0) return 0.0;
  return 8.0 / (double(m) * n * kPi * kPi);
}

double SquareSeriesOracle::evaluate(Point x, int n_eval) const {
  Kahan acc;
  for (int m = 1; m <= n_eval; m += 2) {
    const double sx = std::sin(m * kPi * x.x);
    for (int n = 1; n <= n_eval; n += 2)
      acc.add(std::pow(eigenvalue(m, n), -s) * coefficient(m, n) * 2.0 * sx * std::sin(n * kPi * x.y));
  }
  return acc.sum;
}

SquareSeriesOracle series_oracle_square(double s, int N_tr, const OracleOptions& opt) {
  const bool unit = opt.allow_unit_order && s == 1.0;
  if (!unit && !(s > 0 && s < 1)) throw ParameterError("oracle: s must lie in (0,1)");
  if (N_tr < 1 || N_tr % 2 == 0) throw ParameterError("oracle: truncation must be a positive odd integer");
  SquareSeriesOracle o;
  o.s = s;
  o.N_tr = N_tr;
  o.d_s = unit ? 1.0 : extension_constant(s);

  // sum over odd m, n of m^-2 n^-2 (m^2 + n^2)^-s; the prefactor 64 pi^{-4-2s} is applied last.
  Kahan acc;
  for (int m = 1; m <= N_tr; m += 2) {
    const double m2 = double(m) * m;
    for (int n = 1; n <= N_tr; n += 2) {
      const double n2 = double(n) * n;
      acc.add(std::pow(m2 + n2, -s) / (m2 * n2));
    }
  }
  const double pref = 64.0 * std::pow(kPi, -4.0 - 2.0 * s);
  o.J_truncated = o.d_s * pref * acc.sum;

  if (opt.tail_correction) {
    const double a = N_tr + 1.0;
    const QuadRule1D gj = gauss_jacobi(40, 2.0 * s);
    Kahan tail;
    for (int m = 1; m <= N_tr; m += 2) tail.add(2.0 * inner_tail(m, a, s, gj) / (double(m) * m));
    double corner = 0.0;
    for (int i = 0; i < gj.size(); ++i) corner += gj.weights[i] * std::pow(1.0 + gj.nodes[i] * gj.nodes[i], -s);
    tail.add(2.0 * std::pow(a, -2.0 - 2.0 * s) * 0.25 * corner / (2.0 * s + 2.0));
    o.J_tail = o.d_s * pref * tail.sum;
  }
  o.J_ref = o.J_truncated + o.J_tail;
  return o;
}

}  // namespace hpfrac
