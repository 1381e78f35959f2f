#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "hpfrac/assembly.hpp"
#include "hpfrac/errors.hpp"
#include "hpfrac/linsolve.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/mms.hpp"
#include "hpfrac/space.hpp"

using namespace hpfrac;

namespace {

std::shared_ptr<const HpSpace> geo_space(BuiltinDomain d, int L, int q, bool dirichlet = true) {
  auto mesh = std::make_shared<const Mesh2D>(build_geometric_bl_mesh(make_builtin_domain(d), L, L, 0.25));
  return std::make_shared<const HpSpace>(mesh, q, dirichlet);
}

double max_abs(const SymSparse& A) {
  double m = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SymSparse::InnerIterator it(A, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

}  // namespace

TEST_SUITE("assembly") {
  TEST_CASE("mu = 0 gives the pure mass matrix") {
    const auto sp = geo_space(BuiltinDomain::square, 1, 3);
    const Operators ops = assemble_operators(*sp, {}, ExecPolicy::serial);
    const RdSystem sys = assemble_rd(*sp, 0.0, {}, [](Point) { return 1.0; }, ExecPolicy::serial);
    CHECK(max_abs(sys.matrix - ops.mass) == 0.0);
    const RdSystem sys2 = assemble_rd(*sp, 0.3, {}, [](Point) { return 1.0; }, ExecPolicy::serial);
    CHECK(max_abs(sys2.matrix - (0.3 * ops.stiffness + ops.mass)) < 1e-15 * max_abs(ops.mass) * 10);
    CHECK_THROWS_AS(assemble_rd(*sp, -1.0, {}, [](Point) { return 1.0; }), ParameterError);
  }

  TEST_CASE("constants: stiffness kernel and mass total") {
    for (auto d : {BuiltinDomain::square, BuiltinDomain::lshape, BuiltinDomain::slit}) {
      const auto sp = geo_space(d, 2, 3, false);
      const Operators ops = assemble_operators(*sp, {}, ExecPolicy::serial);
      Eigen::VectorXd one = Eigen::VectorXd::Zero(sp->dim());
      for (int v = 0; v < sp->num_vertex_dofs(); ++v) one[v] = 1.0;
      CHECK((ops.stiffness * one).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(one.dot(ops.mass * one) - sp->mesh().domain().area()) < 1e-12);
      const Eigen::VectorXd F = assemble_load(*sp, [](Point) { return 1.0; }, ExecPolicy::serial);
      CHECK(std::abs(F.dot(one) - sp->mesh().domain().area()) < 1e-12);
    }
  }

  TEST_CASE("matrices are symmetric") {
    const auto sp = geo_space(BuiltinDomain::lshape, 2, 4);
    const Operators ops = assemble_operators(*sp, {}, ExecPolicy::serial);
    const SymSparse Kt = ops.stiffness.transpose(), Mt = ops.mass.transpose();
    CHECK(max_abs(ops.stiffness - Kt) <= 1e-14 * max_abs(ops.stiffness));
    CHECK(max_abs(ops.mass - Mt) <= 1e-14 * max_abs(ops.mass));
  }

  TEST_CASE("Rayleigh quotient bounded below by the first Dirichlet eigenvalue") {
    const auto sp = geo_space(BuiltinDomain::square, 1, 3);
    const Operators ops = assemble_operators(*sp, {}, ExecPolicy::serial);
    const Eigen::MatrixXd K(ops.stiffness), M(ops.mass);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
    const double lam1 = 2 * std::numbers::pi * std::numbers::pi;
    CHECK(es.eigenvalues()[0] >= lam1 * (1 - 1e-12));
    CHECK(es.eigenvalues()[0] <= lam1 * (1 + 1e-3));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd x(K.rows());
      for (int i = 0; i < x.size(); ++i) x[i] = U(rng);
      CHECK(x.dot(K * x) / x.dot(M * x) >= lam1);
    }
  }

  TEST_CASE("polynomial solution in the space is reproduced") {
    const auto sp = geo_space(BuiltinDomain::square, 1, 2);
    const double mu = 0.7;
    const Function2D u = [](Point p) { return p.x * (1 - p.x) * p.y * (1 - p.y); };
    const Function2D f = [&](Point p) {
      return 2 * mu * (p.x * (1 - p.x) + p.y * (1 - p.y)) + u(p);
    };
    const RdSystem sys = assemble_rd(*sp, mu, {}, f, ExecPolicy::serial);
    const FactorHandle h = factor_spd(sys.matrix);
    const Field uh = field_from_free(sp, h.solve(sys.load));
    for (const Point p : {Point{0.2, 0.3}, Point{0.5, 0.5}, Point{0.91, 0.07}, Point{0.01, 0.99}})
      CHECK(std::abs(evaluate_field(uh, {p})[0] - u(p)) < 1e-13);
  }

  TEST_CASE("Galerkin residual vanishes against the space") {
    const auto sp = geo_space(BuiltinDomain::lshape, 2, 3);
    const Function2D f = [](Point p) { return std::exp(p.x) * std::cos(p.y); };
    const RdSystem sys = assemble_rd(*sp, 0.01, {}, f, ExecPolicy::serial);
    const Eigen::VectorXd x = factor_spd(sys.matrix).solve(sys.load);
    CHECK((sys.matrix * x - sys.load).norm() <= 1e-12 * sys.load.norm());
  }

  TEST_CASE("coefficients scale the operators") {
    const auto sp = geo_space(BuiltinDomain::square, 1, 2);
    const Operators base = assemble_operators(*sp, {}, ExecPolicy::serial);
    Coefficients coef;
    coef.A = [](Point) { return Eigen::Matrix2d(2.0 * Eigen::Matrix2d::Identity()); };
    coef.c = [](Point) { return 3.0; };
    const Operators scaled = assemble_operators(*sp, coef, ExecPolicy::serial);
    CHECK(max_abs(scaled.stiffness - 2.0 * base.stiffness) < 1e-13 * max_abs(base.stiffness));
    CHECK(max_abs(scaled.mass - 3.0 * base.mass) < 1e-13 * max_abs(base.mass));
  }

  TEST_CASE("inadmissible coefficients raise DataError") {
    const auto sp = geo_space(BuiltinDomain::square, 1, 2);
    Coefficients indefinite;
    indefinite.A = [](Point) {
      Eigen::Matrix2d A;
      A << 1, 2, 2, 1;
      return A;
    };
    CHECK_THROWS_AS(assemble_operators(*sp, indefinite, ExecPolicy::serial), DataError);
    Coefficients nonsym;
    nonsym.A = [](Point) {
      Eigen::Matrix2d A;
      A << 2, 0.5, 0, 2;
      return A;
    };
    CHECK_THROWS_AS(assemble_operators(*sp, nonsym, ExecPolicy::serial), DataError);
    Coefficients negative_c;
    negative_c.c = [](Point p) { return p.x - 0.5; };
    CHECK_THROWS_AS(assemble_operators(*sp, negative_c, ExecPolicy::serial), DataError);
  }

  TEST_CASE("serial and parallel assembly agree bitwise") {
    const auto sp = geo_space(BuiltinDomain::slit, 2, 3);
    const Operators a = assemble_operators(*sp, {}, ExecPolicy::serial);
    const Operators b = assemble_operators(*sp, {}, ExecPolicy::parallel);
    CHECK(max_abs(a.stiffness - b.stiffness) == 0.0);
    CHECK(max_abs(a.mass - b.mass) == 0.0);
    const Function2D f = [](Point p) { return 1.0 + p.x * p.y; };
    CHECK((assemble_load(*sp, f, ExecPolicy::serial) - assemble_load(*sp, f, ExecPolicy::parallel)).norm() == 0.0);
  }

  TEST_CASE("manufactured sine solution converges spectrally in q") {
    auto mesh = std::make_shared<const Mesh2D>(
        build_geometric_bl_mesh(make_builtin_domain(BuiltinDomain::square), 0, 0, 0.25));
    const MmsReport rep = mms_check(1.0, {2, 4, 6, 8}, mesh, MmsSolution::sine);
    REQUIRE(rep.rows.size() == 4);
    for (size_t i = 1; i < rep.rows.size(); ++i) {
      CHECK(rep.rows[i].l2_error < 0.1 * rep.rows[i - 1].l2_error);
      CHECK(rep.rows[i].h1_error < 0.1 * rep.rows[i - 1].h1_error);
    }
    MESSAGE("q=6 L2 error " << rep.rows[2].l2_error << ", q=8 " << rep.rows[3].l2_error);
    CHECK(rep.rows[3].l2_error < 1e-8);
  }
}
