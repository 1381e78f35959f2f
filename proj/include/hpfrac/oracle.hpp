#pragma once

#include "hpfrac/mesh.hpp"

namespace hpfrac {

// Eigen-expansion of L^{-s} 1 on the unit square with lambda_mn = pi^2 (m^2 + n^2)
// and coefficients f_mn = 8 / (m n pi^2) for odd m, n.
struct SquareSeriesOracle {
  double s = 0.5;
  int N_tr = 0;
  double d_s = 1.0;
  double J_truncated = 0.0;  // d_s * sum over odd m, n <= N_tr
  double J_tail = 0.0;       // asymptotic estimate of the omitted terms
  double J_ref = 0.0;        // J_truncated + J_tail when the tail is enabled

  static double eigenvalue(int m, int n);
  static double coefficient(int m, int n);

  /// Pointwise value of the truncated expansion of L^{-s} 1, using odd indices up to n_eval.
  double evaluate(Point x, int n_eval = 201) const;
};

struct OracleOptions {
  bool tail_correction = true;
  // s = 1 is accepted for testing; the constant d_s is then taken as 1.
  bool allow_unit_order = false;
};

SquareSeriesOracle series_oracle_square(double s, int N_tr, const OracleOptions& opt = {});

}  // namespace hpfrac
