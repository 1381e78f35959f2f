#include <algorithm>
#include <cmath>
#include <limits>

#include "hpfrac/errors.hpp"
#include "hpfrac/mesh.hpp"

namespace hpfrac {

namespace {

double dist_to_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

std::vector<Rect> uniform_cells(double x0, double y0, int nx, int ny, double h) {
  std::vector<Rect> cells;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) cells.push_back({x0 + i * h, y0 + j * h, x0 + (i + 1) * h, y0 + (j + 1) * h});
  return cells;
}

}  // namespace

BuiltinDomain parse_builtin(const std::string& name) {
  if (name == "square") return BuiltinDomain::square;
  if (name == "lshape") return BuiltinDomain::lshape;
  if (name == "slit") return BuiltinDomain::slit;
  throw ParameterError("unknown domain '" + name + "' (expected square, lshape or slit)");
}

std::string builtin_name(BuiltinDomain d) {
  switch (d) {
    case BuiltinDomain::square: return "square";
    case BuiltinDomain::lshape: return "lshape";
    case BuiltinDomain::slit: return "slit";
  }
  return "custom";
}

bool PolygonDomain::is_slit_edge(int e) const {
  return std::find(slit_edges.begin(), slit_edges.end(), e) != slit_edges.end();
}

double PolygonDomain::area() const {
  double a = 0.0;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (is_slit_edge(e)) continue;
    const Point p = vertices[edges[e][0]], q = vertices[edges[e][1]];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

double PolygonDomain::shortest_edge() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : edges) {
    const Point p = vertices[e[0]], q = vertices[e[1]];
    m = std::min(m, std::hypot(q.x - p.x, q.y - p.y));
  }
  return m;
}

std::string PolygonDomain::name() const { return builtin_id ? builtin_name(*builtin_id) : "custom"; }

bool PolygonDomain::point_on_boundary(Point p, double tol) const {
  for (const auto& e : edges)
    if (dist_to_segment(p, vertices[e[0]], vertices[e[1]]) <= tol) return true;
  return false;
}

bool PolygonDomain::segment_on_boundary(Point a, Point b, double tol) const {
  for (const auto& e : edges) {
    const Point p = vertices[e[0]], q = vertices[e[1]];
    if (dist_to_segment(a, p, q) <= tol && dist_to_segment(b, p, q) <= tol) return true;
  }
  return false;
}

bool PolygonDomain::is_vertex(Point p, double tol) const {
  for (const auto& v : vertices)
    if (std::hypot(v.x - p.x, v.y - p.y) <= tol) return true;
  return false;
}

int PolygonDomain::slit_side(Point p, Point toward, double tol) const {
  for (int e : slit_edges) {
    const Point a = vertices[edges[e][0]], b = vertices[edges[e][1]];
    if (dist_to_segment(p, a, b) > tol) continue;
    if (std::hypot(p.x - a.x, p.y - a.y) <= tol || std::hypot(p.x - b.x, p.y - b.y) <= tol) continue;
    const double cross = (b.x - a.x) * (toward.y - a.y) - (b.y - a.y) * (toward.x - a.x);
    return cross > 0 ? 1 : -1;
  }
  return 0;
}

PolygonDomain make_builtin_domain(BuiltinDomain d) {
  PolygonDomain dom;
  dom.builtin_id = d;
  const double h = 1.0 / 3.0;
  switch (d) {
    case BuiltinDomain::square:
      dom.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      dom.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
      dom.macro_cells = uniform_cells(0.0, 0.0, 3, 3, h);
      break;
    case BuiltinDomain::lshape:
      dom.vertices = {{0, 0}, {1, 0}, {1, 1}, {-1, 1}, {-1, -1}, {0, -1}};
      dom.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
      for (const Rect& r : uniform_cells(-1.0, -1.0, 6, 6, h)) {
        const double cx = 0.5 * (r.x0 + r.x1), cy = 0.5 * (r.y0 + r.y1);
        if (cx > 0 && cy < 0) continue;
        dom.macro_cells.push_back(r);
      }
      break;
    case BuiltinDomain::slit:
      dom.vertices = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, 0}, {0, 0}};
      dom.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {4, 5}};
      dom.slit_edges = {5};
      dom.macro_cells = uniform_cells(-1.0, -1.0, 6, 6, h);
      break;
  }
  return dom;
}

void validate_domain(const PolygonDomain& domain) {
  const int nv = static_cast<int>(domain.vertices.size());
  if (nv < 3 || domain.edges.size() < 3) throw GeometryError("domain needs at least three vertices and edges");
  std::vector<int> in(nv, 0), out(nv, 0);
  for (int e = 0; e < static_cast<int>(domain.edges.size()); ++e) {
    const auto [a, b] = domain.edges[e];
    if (a < 0 || b < 0 || a >= nv || b >= nv || a == b) throw GeometryError("domain edge has invalid vertex indices");
    const Point p = domain.vertices[a], q = domain.vertices[b];
    const bool axis = std::abs(p.x - q.x) <= 1e-14 || std::abs(p.y - q.y) <= 1e-14;
    if (!axis) throw GeometryError("unsupported domain: edge " + std::to_string(e) + " is not axis aligned");
    if (domain.is_slit_edge(e)) continue;
    ++out[a];
    ++in[b];
  }
  for (int v = 0; v < nv; ++v)
    if (in[v] != out[v]) throw GeometryError("domain edges do not form closed loops at vertex " + std::to_string(v));
  if (!(domain.area() > 0)) throw GeometryError("domain loops must be counterclockwise with positive area");
  if (domain.macro_cells.empty()) throw GeometryError("domain has no macro layout");
}

}  // namespace hpfrac
