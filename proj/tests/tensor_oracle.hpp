#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "hpfrac/assembly.hpp"
#include "hpfrac/extension.hpp"

namespace hpfrac::testing {

// Direct Galerkin solve of the truncated cylinder problem on S^q_0(Omega) x S^r(0, Y)
// with matrix K (x) M_y + M (x) S_y and load d_s F (x) e_0, against the diagonalized solution.
struct TensorComparison {
  Eigen::MatrixXd Z_direct;  // rows: free x-dofs, columns: y-dofs
  Eigen::MatrixXd Z_diag;
  double energy_direct = 0.0;
  double energy_pythagoras = 0.0;
  double max_abs_diff = 0.0;
};

inline TensorComparison compare_with_tensor_solve(const PolygonDomain& domain, double s, int q, int L, double Y,
                                                  int M, int r, ExecPolicy policy = ExecPolicy::serial) {
  ExtensionParams prm;
  prm.y.Y = Y;
  prm.y.M = M;
  prm.y.r = r;
  prm.hp.q = q;
  prm.hp.L = L;
  prm.hp.n = L;
  prm.hp.keep_fields = true;
  prm.hp.policy = policy;
  const Function2D one = [](Point) { return 1.0; };
  const ExtensionSolution sol = solve_extension(domain, one, s, 1, MeshCase::B, prm);

  const auto& space = *sol.family.common_space;
  const Operators& ops = *sol.family.common_ops;
  const Eigen::VectorXd F = assemble_load(space, one, ExecPolicy::serial);
  const YMatrices ym = assemble_y_matrices(sol.diag.setup);
  const int nx = space.num_free(), ny = sol.diag.setup.dim();

  const Eigen::MatrixXd K = Eigen::MatrixXd(ops.stiffness), Mx = Eigen::MatrixXd(ops.mass);
  const Eigen::MatrixXd A = Eigen::kroneckerProduct(K, ym.M).eval() + Eigen::kroneckerProduct(Mx, ym.S).eval();
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(ny);
  e0[0] = 1.0;
  const Eigen::VectorXd b = sol.diag.setup.d_s * Eigen::kroneckerProduct(F, e0).eval();
  const Eigen::VectorXd z = A.ldlt().solve(b);

  TensorComparison out;
  out.Z_direct.resize(nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < ny; ++k) out.Z_direct(i, k) = z[i * ny + k];
  out.Z_diag = Eigen::MatrixXd::Zero(nx, ny);
  for (int i = 0; i < static_cast<int>(sol.modes.size()); ++i) {
    const Eigen::VectorXd u = restrict_to_free(*sol.modes[i].U);
    out.Z_diag += u * sol.diag.V.col(i).transpose();
  }
  out.max_abs_diff = (out.Z_direct - out.Z_diag).cwiseAbs().maxCoeff();
  out.energy_direct = z.dot(A * z);
  out.energy_pythagoras = energy_pythagoras(sol);
  return out;
}

}  // namespace hpfrac::testing
