#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "hpfrac/linsolve.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/shifted.hpp"

namespace hpfrac {

/// d_s = 2^{1-2s} Gamma(1-s) / Gamma(s).
double extension_constant(double s);

struct YExtensionSetup {
  double s = 0.5;
  double alpha = 0.0;
  double d_s = 1.0;
  double Y = 1.0;
  double sigma = 0.25;
  Mesh1D mesh;
  DegreeVector degrees;

  int dim() const;
};

struct YSteering {
  std::optional<double> Y;      // defaults to y_factor * p
  double y_factor = 0.5;
  double sigma = 0.25;
  std::optional<int> M;         // defaults to round(m_factor * p / s)
  double m_factor = 0.79;
  std::optional<int> r;         // uniform degree, defaults to p
  std::optional<double> slope;  // linear degree vector when set
};

YExtensionSetup make_y_setup(double s, int p, const YSteering& steer = {});
YExtensionSetup make_y_setup(double s, double Y, int M, double sigma, const DegreeVector& degrees);

struct YMatrices {
  Eigen::MatrixXd S;  // int y^a v' w'
  Eigen::MatrixXd M;  // int y^a v w
};

YMatrices assemble_y_matrices(const YExtensionSetup& setup);

/// Values at y of the y-space function with the given coefficients.
double evaluate_y(const YExtensionSetup& setup, const Eigen::VectorXd& coeffs, double y);
double evaluate_y_derivative(const YExtensionSetup& setup, const Eigen::VectorXd& coeffs, double y);

/// Basis values at y = 0 (only the first hat is nonzero).
Eigen::VectorXd y_trace_vector(const YExtensionSetup& setup);

struct DiagSystem : EigSystem {
  YExtensionSetup setup;
};

DiagSystem diagonalize(const YExtensionSetup& setup);

struct ExtensionParams {
  YSteering y;
  HpParams hp;
  double cond_threshold = 1e14;
};

struct ModeSolution {
  double mu = 0.0;
  double v0 = 0.0;
  int n_dof = 0;
  double functional = 0.0;  // integral of f U_i
  std::optional<Field> U;
  SolveStats stats;
};

struct ExtensionSolution {
  DiagSystem diag;
  MeshCase mesh_case = MeshCase::B;
  std::vector<ModeSolution> modes;
  std::vector<std::string> warnings;
  long long n_dof_total = 0;
  ShiftFamily family;

  int num_linear_systems() const { return static_cast<int>(modes.size()); }
  /// d_s * sum_i v0_i * int f U_i from the values stored during the solve.
  double stored_functional() const;
};

ExtensionSolution solve_extension(const PolygonDomain& domain, const Function2D& f, double s, int p,
                                  MeshCase mesh_case, const ExtensionParams& params = {});

/// sum_i v_i(0) * int f U_i, i.e. the integral of f against the discrete trace.
double trace_functional(const ExtensionSolution& sol, const Function2D& f);

/// sum_i mu_i a(U_i, U_i) + ||U_i||^2.
double energy_pythagoras(const ExtensionSolution& sol);

}  // namespace hpfrac
