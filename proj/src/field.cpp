#include <algorithm>
#include <cmath>
#include <limits>

#include "hpfrac/assembly.hpp"
#include "hpfrac/basis.hpp"
#include "hpfrac/errors.hpp"
#include "hpfrac/linsolve.hpp"
#include "hpfrac/quadrature.hpp"
#include "hpfrac/space.hpp"

namespace hpfrac {

namespace {

bool invert_bilinear(const std::array<Point, 4>& X, Point p, double& xi, double& eta) {
  xi = 0.0;
  eta = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double x = 0.25 * ((1 - xi) * (1 - eta) * X[0].x + (1 + xi) * (1 - eta) * X[1].x +
                             (1 + xi) * (1 + eta) * X[2].x + (1 - xi) * (1 + eta) * X[3].x);
    const double y = 0.25 * ((1 - xi) * (1 - eta) * X[0].y + (1 + xi) * (1 - eta) * X[1].y +
                             (1 + xi) * (1 + eta) * X[2].y + (1 - xi) * (1 + eta) * X[3].y);
    const double x_xi = 0.25 * ((1 - eta) * (X[1].x - X[0].x) + (1 + eta) * (X[2].x - X[3].x));
    const double y_xi = 0.25 * ((1 - eta) * (X[1].y - X[0].y) + (1 + eta) * (X[2].y - X[3].y));
    const double x_eta = 0.25 * ((1 - xi) * (X[3].x - X[0].x) + (1 + xi) * (X[2].x - X[1].x));
    const double y_eta = 0.25 * ((1 - xi) * (X[3].y - X[0].y) + (1 + xi) * (X[2].y - X[1].y));
    const double det = x_xi * y_eta - x_eta * y_xi;
    const double rx = p.x - x, ry = p.y - y;
    const double dxi = (y_eta * rx - x_eta * ry) / det;
    const double deta = (-y_xi * rx + x_xi * ry) / det;
    xi += dxi;
    eta += deta;
    if (std::abs(dxi) + std::abs(deta) < 1e-15) break;
    if (std::abs(xi) > 10 || std::abs(eta) > 10) return false;
  }
  constexpr double tol = 1e-10;
  return std::abs(xi) <= 1 + tol && std::abs(eta) <= 1 + tol;
}

}  // namespace

Point map_to_physical(const Mesh2D& mesh, int e, double xi, double eta) {
  const auto X = mesh.element_corners(e);
  return {0.25 * ((1 - xi) * (1 - eta) * X[0].x + (1 + xi) * (1 - eta) * X[1].x + (1 + xi) * (1 + eta) * X[2].x +
                  (1 - xi) * (1 + eta) * X[3].x),
          0.25 * ((1 - xi) * (1 - eta) * X[0].y + (1 + xi) * (1 - eta) * X[1].y + (1 + xi) * (1 + eta) * X[2].y +
                  (1 - xi) * (1 + eta) * X[3].y)};
}

Located locate_point(const Mesh2D& mesh, Point p) {
  const double tol = 1e-12;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto X = mesh.element_corners(e);
    double x0 = X[0].x, x1 = X[0].x, y0 = X[0].y, y1 = X[0].y;
    for (const auto& c : X) {
      x0 = std::min(x0, c.x);
      x1 = std::max(x1, c.x);
      y0 = std::min(y0, c.y);
      y1 = std::max(y1, c.y);
    }
    if (p.x < x0 - tol || p.x > x1 + tol || p.y < y0 - tol || p.y > y1 + tol) continue;
    Located loc;
    if (invert_bilinear(X, p, loc.xi, loc.eta)) {
      loc.element = e;
      loc.xi = std::clamp(loc.xi, -1.0, 1.0);
      loc.eta = std::clamp(loc.eta, -1.0, 1.0);
      return loc;
    }
  }
  throw LocationError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") lies outside the mesh");
}

double evaluate_in_element(const Field& field, int e, double xi, double eta) {
  const HpSpace& sp = *field.space;
  const auto [qx, qy] = sp.element_degree(e);
  const int q = std::max(qx, qy);
  double vx[64], dx[64], vy[64], dy[64];
  shape_1d(q, xi, vx, dx);
  shape_1d(q, eta, vy, dy);
  double s = 0.0;
  for (const LocalDof& d : sp.element_dofs(e)) s += field.coeffs[d.global] * d.sign * vx[d.ix] * vy[d.iy];
  return s;
}

std::vector<double> evaluate_field(const Field& field, const std::vector<Point>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    const Located loc = locate_point(field.space->mesh(), p);
    out.push_back(evaluate_in_element(field, loc.element, loc.xi, loc.eta));
  }
  return out;
}

double integrate_f_dot(const Field& field, const Function2D& f) {
  const HpSpace& sp = *field.space;
  const Mesh2D& mesh = sp.mesh();
  double total = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto [qx, qy] = sp.element_degree(e);
    const int q = std::max(qx, qy);
    const auto& rule = gauss_legendre_cached(functional_points(q));
    const int n = rule.size();
    const ShapeTable tab = tabulate_shape_1d(q, rule.nodes);
    const auto X = mesh.element_corners(e);
    const auto& dofs = sp.element_dofs(e);
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double xi = rule.nodes[i], eta = rule.nodes[j];
        const double x_xi = 0.25 * ((1 - eta) * (X[1].x - X[0].x) + (1 + eta) * (X[2].x - X[3].x));
        const double y_xi = 0.25 * ((1 - eta) * (X[1].y - X[0].y) + (1 + eta) * (X[2].y - X[3].y));
        const double x_eta = 0.25 * ((1 - xi) * (X[3].x - X[0].x) + (1 + xi) * (X[2].x - X[1].x));
        const double y_eta = 0.25 * ((1 - xi) * (X[3].y - X[0].y) + (1 + xi) * (X[2].y - X[1].y));
        const double det = x_xi * y_eta - x_eta * y_xi;
        double u = 0.0;
        for (const LocalDof& d : dofs) u += field.coeffs[d.global] * d.sign * tab.v(i, d.ix) * tab.v(j, d.iy);
        acc += rule.weights[i] * rule.weights[j] * det * u * f(map_to_physical(mesh, e, xi, eta));
      }
    total += acc;
  }
  return total;
}

Field l2_project(std::shared_ptr<const HpSpace> space, const Function2D& g) {
  const Operators ops = assemble_operators(*space, {}, ExecPolicy::serial);
  const Eigen::VectorXd b = assemble_load(*space, g, ExecPolicy::serial);
  const FactorHandle h = factor_spd(ops.mass);
  return field_from_free(space, h.solve(b));
}

}  // namespace hpfrac
