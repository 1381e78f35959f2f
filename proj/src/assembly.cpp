#include "hpfrac/assembly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hpfrac/basis.hpp"
#include "hpfrac/errors.hpp"
#include "hpfrac/quadrature.hpp"

namespace hpfrac {

namespace {

struct PointData {
  Eigen::VectorXd w;     // weight * |det J|
  Eigen::MatrixXd val;   // nloc x npts
  Eigen::MatrixXd gx;    // physical x-derivatives
  Eigen::MatrixXd gy;
  std::vector<Point> x;  // physical points
};

PointData element_point_data(const HpSpace& space, int e, int npts_dir, bool grads) {
  const auto& rule = gauss_legendre_cached(npts_dir);
  const auto [qx, qy] = space.element_degree(e);
  const int q = std::max(qx, qy);
  const ShapeTable tab = tabulate_shape_1d(q, rule.nodes);
  const auto X = space.mesh().element_corners(e);
  const auto& dofs = space.element_dofs(e);
  const int nloc = static_cast<int>(dofs.size());
  const int np = npts_dir * npts_dir;
  PointData pd;
  pd.w.resize(np);
  pd.val.resize(nloc, np);
  if (grads) {
    pd.gx.resize(nloc, np);
    pd.gy.resize(nloc, np);
  }
  pd.x.resize(np);
  for (int j = 0; j < npts_dir; ++j) {
    const double eta = rule.nodes[j];
    for (int i = 0; i < npts_dir; ++i) {
      const double xi = rule.nodes[i];
      const int p = j * npts_dir + i;
      const double xx = 0.25 * ((1 - xi) * (1 - eta) * X[0].x + (1 + xi) * (1 - eta) * X[1].x +
                                (1 + xi) * (1 + eta) * X[2].x + (1 - xi) * (1 + eta) * X[3].x);
      const double yy = 0.25 * ((1 - xi) * (1 - eta) * X[0].y + (1 + xi) * (1 - eta) * X[1].y +
                                (1 + xi) * (1 + eta) * X[2].y + (1 - xi) * (1 + eta) * X[3].y);
      const double x_xi = 0.25 * ((1 - eta) * (X[1].x - X[0].x) + (1 + eta) * (X[2].x - X[3].x));
      const double y_xi = 0.25 * ((1 - eta) * (X[1].y - X[0].y) + (1 + eta) * (X[2].y - X[3].y));
      const double x_eta = 0.25 * ((1 - xi) * (X[3].x - X[0].x) + (1 + xi) * (X[2].x - X[1].x));
      const double y_eta = 0.25 * ((1 - xi) * (X[3].y - X[0].y) + (1 + xi) * (X[2].y - X[1].y));
      const double det = x_xi * y_eta - x_eta * y_xi;
      if (!(det > 0)) throw GeometryError("element " + std::to_string(e) + " has a non-positive Jacobian");
      pd.x[p] = {xx, yy};
      pd.w[p] = rule.weights[i] * rule.weights[j] * det;
      for (int a = 0; a < nloc; ++a) {
        const LocalDof& d = dofs[a];
        const double fx = tab.v(i, d.ix), fy = tab.v(j, d.iy);
        pd.val(a, p) = d.sign * fx * fy;
        if (grads) {
          const double dxi = d.sign * tab.d(i, d.ix) * fy;
          const double deta = d.sign * fx * tab.d(j, d.iy);
          pd.gx(a, p) = (y_eta * dxi - y_xi * deta) / det;
          pd.gy(a, p) = (-x_eta * dxi + x_xi * deta) / det;
        }
      }
    }
  }
  return pd;
}

void check_spd(const Eigen::Matrix2d& A, Point x) {
  const double scale = A.cwiseAbs().maxCoeff();
  const bool sym = std::abs(A(0, 1) - A(1, 0)) <= 1e-12 * scale;
  if (!sym || !(A(0, 0) > 0) || !(A.determinant() > 0))
    throw DataError("coefficient A is not symmetric positive definite at (" + std::to_string(x.x) + ", " +
                    std::to_string(x.y) + ")");
}

void mirror_upper(Eigen::MatrixXd& m) { m.triangularView<Eigen::StrictlyLower>() = m.transpose(); }

void element_matrices(const HpSpace& space, int e, const Coefficients& coef, Eigen::MatrixXd& K,
                      Eigen::MatrixXd& M) {
  const auto [qx, qy] = space.element_degree(e);
  const PointData pd = element_point_data(space, e, assembly_points(std::max(qx, qy)), true);
  const int np = static_cast<int>(pd.w.size());
  Eigen::VectorXd wc = pd.w;
  if (coef.c) {
    for (int p = 0; p < np; ++p) {
      const double c = coef.c(pd.x[p]);
      if (!(c > 0)) throw DataError("coefficient c must be positive");
      wc[p] *= c;
    }
  }
  M.noalias() = pd.val * wc.asDiagonal() * pd.val.transpose();
  if (!coef.A) {
    const Eigen::MatrixXd gxw = pd.gx * pd.w.asDiagonal();
    const Eigen::MatrixXd gyw = pd.gy * pd.w.asDiagonal();
    K.noalias() = gxw * pd.gx.transpose();
    K.noalias() += gyw * pd.gy.transpose();
  } else {
    Eigen::MatrixXd ax(pd.gx.rows(), np), ay(pd.gy.rows(), np);
    for (int p = 0; p < np; ++p) {
      const Eigen::Matrix2d A = coef.A(pd.x[p]);
      check_spd(A, pd.x[p]);
      ax.col(p) = pd.w[p] * (A(0, 0) * pd.gx.col(p) + A(0, 1) * pd.gy.col(p));
      ay.col(p) = pd.w[p] * (A(1, 0) * pd.gx.col(p) + A(1, 1) * pd.gy.col(p));
    }
    K.noalias() = ax * pd.gx.transpose();
    K.noalias() += ay * pd.gy.transpose();
  }
  mirror_upper(K);
  mirror_upper(M);
}

Eigen::VectorXd element_load(const HpSpace& space, int e, const Function2D& f) {
  const auto [qx, qy] = space.element_degree(e);
  const PointData pd = element_point_data(space, e, assembly_points(std::max(qx, qy)), false);
  Eigen::VectorXd fw(pd.w.size());
  for (int p = 0; p < pd.w.size(); ++p) fw[p] = pd.w[p] * f(pd.x[p]);
  return pd.val * fw;
}

// Offsets of each element's free-free block inside a flat triplet array.
std::vector<size_t> triplet_offsets(const HpSpace& space) {
  std::vector<size_t> off(space.mesh().num_elements() + 1, 0);
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    size_t nf = 0;
    for (const auto& d : space.element_dofs(e)) nf += space.free_index(d.global) >= 0;
    off[e + 1] = off[e] + nf * nf;
  }
  return off;
}

void scatter_block(const HpSpace& space, int e, const Eigen::MatrixXd& A, Eigen::Triplet<double>* out) {
  const auto& dofs = space.element_dofs(e);
  size_t k = 0;
  for (size_t a = 0; a < dofs.size(); ++a) {
    const int fa = space.free_index(dofs[a].global);
    if (fa < 0) continue;
    for (size_t b = 0; b < dofs.size(); ++b) {
      const int fb = space.free_index(dofs[b].global);
      if (fb < 0) continue;
      out[k++] = Eigen::Triplet<double>(fa, fb, A(a, b));
    }
  }
}

}  // namespace

Operators assemble_operators(const HpSpace& space, const Coefficients& coef, ExecPolicy policy) {
  const int ne = space.mesh().num_elements();
  const auto off = triplet_offsets(space);
  std::vector<Eigen::Triplet<double>> tk(off.back()), tm(off.back());
  auto body = [&](int e) {
    Eigen::MatrixXd K, M;
    element_matrices(space, e, coef, K, M);
    scatter_block(space, e, K, tk.data() + off[e]);
    scatter_block(space, e, M, tm.data() + off[e]);
  };
  if (policy == ExecPolicy::serial) {
    for (int e = 0; e < ne; ++e) body(e);
  } else {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 4)
    for (int e = 0; e < ne; ++e) {
      try {
        body(e);
      } catch (...) {
#pragma omp critical(hpfrac_assembly_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }
  Operators ops;
  const int n = space.num_free();
  ops.stiffness.resize(n, n);
  ops.mass.resize(n, n);
  ops.stiffness.setFromTriplets(tk.begin(), tk.end());
  ops.mass.setFromTriplets(tm.begin(), tm.end());
  return ops;
}

Eigen::VectorXd assemble_load(const HpSpace& space, const Function2D& f, ExecPolicy policy) {
  const int ne = space.mesh().num_elements();
  Eigen::VectorXd F = Eigen::VectorXd::Zero(space.num_free());
  if (!f) return F;
  std::vector<Eigen::VectorXd> local(ne);
  if (policy == ExecPolicy::serial) {
    for (int e = 0; e < ne; ++e) local[e] = element_load(space, e, f);
  } else {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 4)
    for (int e = 0; e < ne; ++e) {
      try {
        local[e] = element_load(space, e, f);
      } catch (...) {
#pragma omp critical(hpfrac_assembly_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  }
  for (int e = 0; e < ne; ++e) {
    const auto& dofs = space.element_dofs(e);
    for (size_t a = 0; a < dofs.size(); ++a) {
      const int fa = space.free_index(dofs[a].global);
      if (fa >= 0) F[fa] += local[e][a];
    }
  }
  return F;
}

SymSparse combine(const Operators& ops, double mu) {
  SymSparse A = ops.mass;
  // Identical sparsity patterns: add value arrays directly.
  Eigen::Map<Eigen::VectorXd>(A.valuePtr(), A.nonZeros()) +=
      mu * Eigen::Map<const Eigen::VectorXd>(ops.stiffness.valuePtr(), ops.stiffness.nonZeros());
  return A;
}

RdSystem assemble_rd(const HpSpace& space, double mu, const Coefficients& coef, const Function2D& f,
                     ExecPolicy policy) {
  if (!(mu >= 0)) throw ParameterError("assemble_rd: mu must be >= 0");
  const Operators ops = assemble_operators(space, coef, policy);
  return {combine(ops, mu), assemble_load(space, f, policy)};
}

}  // namespace hpfrac
