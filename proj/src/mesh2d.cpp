#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "hpfrac/errors.hpp"
#include "hpfrac/mesh.hpp"

namespace hpfrac {

namespace {

constexpr double kMergeTol = 1e-13;
constexpr double kHashCell = 1e-11;

double quad_area(const std::array<Point, 4>& p) {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point u = p[i], v = p[(i + 1) % 4];
    a += u.x * v.y - v.x * u.y;
  }
  return 0.5 * a;
}

bool strictly_convex(const std::array<Point, 4>& p) {
  for (int i = 0; i < 4; ++i) {
    const Point a = p[(i + 3) % 4], b = p[i], c = p[(i + 1) % 4];
    const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (!(cross > 0)) return false;
  }
  return true;
}

struct KeyHash {
  size_t operator()(const std::tuple<long long, long long, int>& k) const {
    const auto [x, y, s] = k;
    return std::hash<long long>()(x * 73856093LL ^ y * 19349663LL ^ (s + 2) * 83492791LL);
  }
};

class VertexPool {
 public:
  int find_or_add(Point p, int side) {
    const long long ix = static_cast<long long>(std::floor(p.x / kHashCell));
    const long long iy = static_cast<long long>(std::floor(p.y / kHashCell));
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find({ix + dx, iy + dy, side});
        if (it == grid_.end()) continue;
        for (int v : it->second)
          if (std::abs(points[v].x - p.x) <= kMergeTol && std::abs(points[v].y - p.y) <= kMergeTol) return v;
      }
    const int id = static_cast<int>(points.size());
    points.push_back(p);
    sides.push_back(side);
    grid_[{ix, iy, side}].push_back(id);
    return id;
  }

  std::vector<Point> points;
  std::vector<int> sides;

 private:
  std::unordered_map<std::tuple<long long, long long, int>, std::vector<int>, KeyHash> grid_;
};

double point_segment_param(Point p, Point a, Point b, double& dist) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  const double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  dist = std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
  return t;
}

}  // namespace

Mesh2D Mesh2D::from_quads(PolygonDomain domain, const std::vector<QuadInput>& quads, std::vector<MacroPatch> patches) {
  Mesh2D mesh;
  mesh.domain_ = std::move(domain);
  mesh.patches_ = std::move(patches);
  VertexPool pool;
  mesh.elements_.reserve(quads.size());
  for (const QuadInput& q : quads) {
    std::array<Point, 4> p = q.p;
    if (quad_area(p) < 0) std::swap(p[1], p[3]);
    if (!strictly_convex(p))
      throw GeometryError("element " + std::to_string(mesh.elements_.size()) + " is degenerate or not convex");
    const Point c{0.25 * (p[0].x + p[1].x + p[2].x + p[3].x), 0.25 * (p[0].y + p[1].y + p[2].y + p[3].y)};
    Element el;
    el.patch = q.patch;
    el.ring = q.ring;
    for (int i = 0; i < 4; ++i) el.v[i] = pool.find_or_add(p[i], mesh.domain_.slit_side(p[i], c));
    mesh.elements_.push_back(el);
  }
  mesh.vertices_ = std::move(pool.points);
  mesh.sides_ = std::move(pool.sides);

  std::map<std::pair<int, int>, int> edge_id;
  mesh.element_edges_.resize(mesh.elements_.size());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int le = 0; le < 4; ++le) {
      int a = mesh.elements_[e].v[kLocalEdgeVertex[le][0]];
      int b = mesh.elements_[e].v[kLocalEdgeVertex[le][1]];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_id.try_emplace({a, b}, mesh.num_edges());
      if (inserted) {
        MeshEdge edge;
        edge.a = a;
        edge.b = b;
        mesh.edges_.push_back(edge);
      }
      MeshEdge& edge = mesh.edges_[it->second];
      if (edge.elem[0] < 0) {
        edge.elem[0] = e;
        edge.local[0] = le;
      } else if (edge.elem[1] < 0) {
        edge.elem[1] = e;
        edge.local[1] = le;
      } else {
        throw ConformityError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") is shared by more than two elements: " + std::to_string(edge.elem[0]) + ", " +
                              std::to_string(edge.elem[1]) + ", " + std::to_string(e));
      }
      mesh.element_edges_[e][le] = it->second;
    }
  }
  return mesh;
}

std::array<Point, 4> Mesh2D::element_corners(int e) const {
  const auto& v = elements_[e].v;
  return {vertices_[v[0]], vertices_[v[1]], vertices_[v[2]], vertices_[v[3]]};
}

std::vector<int> Mesh2D::boundary_edges() const {
  std::vector<int> out;
  for (int i = 0; i < num_edges(); ++i)
    if (edges_[i].count() == 1) out.push_back(i);
  return out;
}

std::string ConformityReport::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : "fail") << " (" << issues.size() << " issues, area rel. error " << area_relative_error << ")";
  for (const auto& is : issues) {
    os << "\n  " << is.kind << ": element " << is.elem_a << " edge " << is.edge_a;
    if (is.elem_b >= 0) os << " vs element " << is.elem_b << " edge " << is.edge_b;
    if (is.vertex >= 0) os << " at vertex " << is.vertex;
    if (!is.detail.empty()) os << " [" << is.detail << "]";
  }
  return os.str();
}

ConformityReport check_conformity(const Mesh2D& mesh) {
  ConformityReport rep;
  const auto& V = mesh.vertices();
  const auto& dom = mesh.domain();
  double area = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto p = mesh.element_corners(e);
    area += quad_area(p);
    if (!strictly_convex(p)) {
      rep.issues.push_back({"degenerate element", e, -1, -1, -1, -1, "bilinear map not bijective"});
    }
  }
  const double dom_area = dom.area();
  rep.area_relative_error = std::abs(area - dom_area) / std::abs(dom_area);
  if (rep.area_relative_error > 1e-12)
    rep.issues.push_back({"area mismatch", -1, -1, -1, -1, -1,
                          "elements cover " + std::to_string(area) + " of " + std::to_string(dom_area)});

  std::vector<int> unmatched;
  for (int i = 0; i < mesh.num_edges(); ++i) {
    const MeshEdge& ed = mesh.edges()[i];
    const Point a = V[ed.a], b = V[ed.b];
    if (ed.count() == 2) {
      bool on_slit = false;
      for (int s : dom.slit_edges) {
        PolygonDomain only;
        only.vertices = dom.vertices;
        only.edges = {dom.edges[s]};
        if (only.segment_on_boundary(a, b)) on_slit = true;
      }
      if (on_slit)
        rep.issues.push_back({"slit adjacency", ed.elem[0], ed.local[0], ed.elem[1], ed.local[1], -1,
                              "elements on opposite slit sides share an edge"});
      continue;
    }
    if (!dom.segment_on_boundary(a, b)) unmatched.push_back(i);
  }
  for (int i : unmatched) {
    const MeshEdge& ed = mesh.edges()[i];
    const Point a = V[ed.a], b = V[ed.b];
    bool reported = false;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      if (v == ed.a || v == ed.b) continue;
      double d = 0.0;
      const double t = point_segment_param(V[v], a, b, d);
      if (d > 1e-12 || t <= 1e-12 || t >= 1 - 1e-12) continue;
      for (int j : unmatched) {
        if (j == i) continue;
        const MeshEdge& other = mesh.edges()[j];
        if (other.a != v && other.b != v) continue;
        double d2 = 0.0;
        const int w = other.a == v ? other.b : other.a;
        const double t2 = point_segment_param(V[w], a, b, d2);
        if (d2 > 1e-12 || t2 < -1e-12 || t2 > 1 + 1e-12) continue;
        rep.issues.push_back({"T-junction", ed.elem[0], ed.local[0], other.elem[0], other.local[0], v,
                              "hanging node inside an edge"});
        reported = true;
      }
      if (!reported) {
        rep.issues.push_back({"T-junction", ed.elem[0], ed.local[0], -1, -1, v, "hanging node inside an edge"});
        reported = true;
      }
    }
    if (!reported)
      rep.issues.push_back({"unmatched edge", ed.elem[0], ed.local[0], -1, -1, -1, "interior edge with one element"});
  }
  rep.pass = rep.issues.empty();
  return rep;
}

}  // namespace hpfrac
