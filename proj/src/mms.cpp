#include "hpfrac/mms.hpp"

#include <cmath>
#include <numbers>

#include "hpfrac/assembly.hpp"
#include "hpfrac/basis.hpp"
#include "hpfrac/errors.hpp"
#include "hpfrac/linsolve.hpp"
#include "hpfrac/quadrature.hpp"

namespace hpfrac {

namespace {

constexpr double kPi = std::numbers::pi;

struct Exact {
  Function2D u;
  std::function<Point(Point)> grad;
  Function2D f;
};

Exact make_exact(MmsSolution kind, double eps) {
  if (kind == MmsSolution::sine) {
    const double c = 2.0 * kPi * kPi * eps * eps + 1.0;
    return {[](Point p) { return std::sin(kPi * p.x) * std::sin(kPi * p.y); },
            [](Point p) {
              return Point{kPi * std::cos(kPi * p.x) * std::sin(kPi * p.y),
                           kPi * std::sin(kPi * p.x) * std::cos(kPi * p.y)};
            },
            [c](Point p) { return c * std::sin(kPi * p.x) * std::sin(kPi * p.y); }};
  }
  if (!(eps > 0)) throw ParameterError("boundary-layer solution requires eps > 0");
  const double den = 1.0 + std::exp(-1.0 / eps);
  auto g = [eps, den](double t) { return 1.0 - (std::exp(-t / eps) + std::exp(-(1.0 - t) / eps)) / den; };
  auto dg = [eps, den](double t) { return (std::exp(-t / eps) - std::exp(-(1.0 - t) / eps)) / (eps * den); };
  return {[g](Point p) { return g(p.x) * g(p.y); },
          [g, dg](Point p) { return Point{dg(p.x) * g(p.y), g(p.x) * dg(p.y)}; },
          [g](Point p) { return g(p.x) + g(p.y) - g(p.x) * g(p.y); }};
}

// Breakpoints of (-1, 1) graded geometrically toward both ends.
std::vector<double> graded_breaks(int levels) {
  std::vector<double> b{-1.0};
  for (int j = levels; j >= 1; --j) b.push_back(-1.0 + std::ldexp(1.0, -j));
  for (int j = 1; j <= levels; ++j) b.push_back(1.0 - std::ldexp(1.0, -j));
  b.push_back(1.0);
  return b;
}

}  // namespace

std::pair<double, double> field_errors(const Field& field, const Function2D& u,
                                       const std::function<Point(Point)>& grad_u, int levels) {
  const HpSpace& sp = *field.space;
  const Mesh2D& mesh = sp.mesh();
  const std::vector<double> br = graded_breaks(levels);
  double l2 = 0.0, h1 = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto [qx, qy] = sp.element_degree(e);
    const int q = std::max(qx, qy);
    const QuadRule1D& base = gauss_legendre_cached(q + 4);
    std::vector<double> pts, wts;
    for (size_t c = 0; c + 1 < br.size(); ++c) {
      const QuadRule1D r = map_rule(base, br[c], br[c + 1]);
      pts.insert(pts.end(), r.nodes.begin(), r.nodes.end());
      wts.insert(wts.end(), r.weights.begin(), r.weights.end());
    }
    const ShapeTable tab = tabulate_shape_1d(q, pts);
    const auto X = mesh.element_corners(e);
    const auto& dofs = sp.element_dofs(e);
    const int n = static_cast<int>(pts.size());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double xi = pts[i], eta = pts[j];
        const double x_xi = 0.25 * ((1 - eta) * (X[1].x - X[0].x) + (1 + eta) * (X[2].x - X[3].x));
        const double y_xi = 0.25 * ((1 - eta) * (X[1].y - X[0].y) + (1 + eta) * (X[2].y - X[3].y));
        const double x_eta = 0.25 * ((1 - xi) * (X[3].x - X[0].x) + (1 + xi) * (X[2].x - X[1].x));
        const double y_eta = 0.25 * ((1 - xi) * (X[3].y - X[0].y) + (1 + xi) * (X[2].y - X[1].y));
        const double det = x_xi * y_eta - x_eta * y_xi;
        double v = 0.0, dxi = 0.0, deta = 0.0;
        for (const LocalDof& d : dofs) {
          const double c = field.coeffs[d.global] * d.sign;
          v += c * tab.v(i, d.ix) * tab.v(j, d.iy);
          dxi += c * tab.d(i, d.ix) * tab.v(j, d.iy);
          deta += c * tab.v(i, d.ix) * tab.d(j, d.iy);
        }
        const double gx = (y_eta * dxi - y_xi * deta) / det;
        const double gy = (-x_eta * dxi + x_xi * deta) / det;
        const Point p = map_to_physical(mesh, e, xi, eta);
        const Point gu = grad_u(p);
        const double w = wts[i] * wts[j] * det;
        const double dv = v - u(p);
        l2 += w * dv * dv;
        h1 += w * ((gx - gu.x) * (gx - gu.x) + (gy - gu.y) * (gy - gu.y));
      }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

MmsReport mms_check(double eps, const std::vector<int>& qs, std::shared_ptr<const Mesh2D> mesh, MmsSolution kind) {
  if (!(eps >= 0)) throw ParameterError("mms: eps must be nonnegative");
  if (qs.empty()) throw ParameterError("mms: empty degree list");
  const Exact ex = make_exact(kind, eps);
  MmsReport rep;
  rep.eps = eps;
  rep.kind = kind;
  for (int q : qs) {
    auto space = std::make_shared<const HpSpace>(mesh, q);
    const RdSystem sys = assemble_rd(*space, eps * eps, {}, ex.f, ExecPolicy::serial);
    const FactorHandle h = factor_spd(sys.matrix);
    const Field fld = field_from_free(space, h.solve(sys.load));
    const auto [l2, h1] = field_errors(fld, ex.u, ex.grad);
    rep.rows.push_back({q, space->num_free(), l2, h1});
  }
  return rep;
}

}  // namespace hpfrac
