#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "hpfrac/shifted.hpp"

namespace hpfrac {

enum class SincVariant { practical, symmetric };

std::string sinc_variant_name(SincVariant v);
SincVariant parse_sinc_variant(const std::string& s);

struct SincRule {
  double s = 0.5;
  double k = 1.0;
  SincVariant variant = SincVariant::practical;
  int K1 = 0;
  int K2 = 0;
  std::vector<double> nodes;    // y_l = l k, l = -K1..K2
  std::vector<double> weights;  // k sin(pi s)/pi e^{-s y_l}
  std::vector<double> shifts;   // e^{-y_l}

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  double c_B() const;
};

/// Practical rule with K1 = ceil(pi^2 / (2(1-s)k^2)) and K2 = ceil(pi^2 / (s k^2)).
SincRule build_sinc_rule(double s, double k);
/// Symmetric rule with k = 1/sqrt(K) and nodes l k for |l| <= K.
SincRule build_symmetric_sinc_rule(double s, int K);

/// Step used by the solvers for a given p.
inline double default_sinc_step(int p) { return (4.0 / 3.0) / p; }

/// sum_l w_l / (1 + e^{-y_l} lambda), an approximation of lambda^{-s}.
double scalar_apply(const SincRule& rule, double lambda);

/// Relative deviation |rule(lambda) - lambda^{-s}| / lambda^{-s} evaluated in
/// quadruple precision, with nodes and weights recomputed from (s, k).
long double scalar_apply_error_extended(const SincRule& rule, double lambda);

/// sum_l w_l (I + e^{-y_l} A)^{-1} b for a small dense SPD matrix A.
Eigen::VectorXd apply_to_matrix(const SincRule& rule, const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

struct SincParams {
  std::optional<double> k;  // defaults to (4/3)/p
  SincVariant variant = SincVariant::practical;
  std::optional<int> K;     // symmetric variant; defaults to ceil(1/k^2)
  HpParams hp;
};

struct SincNodeSolution {
  double y = 0.0;
  double weight = 0.0;
  double eps2 = 0.0;
  int n_dof = 0;
  double functional = 0.0;  // integral of f w_l
  std::optional<Field> w;
  SolveStats stats;
};

struct SincSolution {
  SincRule rule;
  double d_s = 1.0;
  MeshCase mesh_case = MeshCase::B;
  std::vector<SincNodeSolution> nodes;
  std::vector<std::string> warnings;
  long long n_dof_total = 0;
  ShiftFamily family;

  int num_linear_systems() const { return static_cast<int>(nodes.size()); }
  /// d_s * sum_l w_l int f w_l from the values stored during the solve.
  double stored_functional() const;
};

SincSolution solve_sinc(const PolygonDomain& domain, const Function2D& f, double s, int p, MeshCase mesh_case,
                        const SincParams& params = {});

/// sum_l w_l int f w_l^{hp} (without d_s).
double sinc_functional(const SincSolution& sol, const Function2D& f);

}  // namespace hpfrac
