#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hpfrac {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class BuiltinDomain { square, lshape, slit };

BuiltinDomain parse_builtin(const std::string& name);
std::string builtin_name(BuiltinDomain d);

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

struct PolygonDomain {
  std::vector<Point> vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<int> slit_edges;  // indices into edges
  std::optional<BuiltinDomain> builtin_id;
  std::vector<Rect> macro_cells;

  bool is_slit_edge(int e) const;
  double area() const;
  double shortest_edge() const;
  std::string name() const;

  bool point_on_boundary(Point p, double tol = 1e-12) const;
  bool segment_on_boundary(Point a, Point b, double tol = 1e-12) const;
  bool is_vertex(Point p, double tol = 1e-12) const;
  /// +1/-1 when p lies strictly inside a slit edge (side picked by `toward`), else 0.
  int slit_side(Point p, Point toward, double tol = 1e-12) const;
};

PolygonDomain make_builtin_domain(BuiltinDomain d);

/// Throws GeometryError when edges are not axis aligned or loops are not closed.
void validate_domain(const PolygonDomain& domain);

struct Mesh1D {
  std::vector<double> breakpoints;
  int num_elements() const { return static_cast<int>(breakpoints.size()) - 1; }
};

Mesh1D build_1d_geo_mesh(double Y, int M, double sigma);

using DegreeVector = std::vector<int>;

DegreeVector linear_degree_vector(int M, double slope);
DegreeVector uniform_degree_vector(int M, int r);

enum class PatternKind { trivial, boundary_layer, corner, tensor, mixed };

std::string pattern_name(PatternKind k);

// Reference patterns live on the unit square with the singular point at the
// origin and the refined boundary on {y = 0}.
//   heights: boundary-layer mesh lines y = h (BL), grid lines of the tensor
//            patch, or the layer heights on {x = 1} of a mixed patch.
//   rings:   corner ring sizes; for tensor patches they are the rings of the
//            inner corner block measured in patch units.
//   slopes:  mixed patches split the inner rings along rays y = t x.
// All three lists are strictly decreasing with entries in (0, 1).
struct PatternSpec {
  PatternKind kind = PatternKind::trivial;
  std::vector<double> heights;
  std::vector<double> rings;
  std::vector<double> slopes;
};

struct RefQuad {
  std::array<Point, 4> p;
  int ring = 0;
};

std::vector<RefQuad> refine_pattern(const PatternSpec& pattern);
int pattern_element_count(const PatternSpec& pattern);

PatternSpec trivial_pattern();
PatternSpec bl_pattern(int L, double sigma);
PatternSpec corner_pattern(int n, double sigma);
PatternSpec tensor_pattern(int L, int n, double sigma);
PatternSpec mixed_pattern(int L, int n, double sigma);

struct MacroPatch {
  Rect cell;
  PatternSpec pattern;
  std::array<bool, 4> edge_on_boundary{};    // bottom, right, top, left
  std::array<bool, 4> corner_on_boundary{};  // (x0,y0), (x1,y0), (x1,y1), (x0,y1)
  Point origin;
  Point axis_u;
  Point axis_v;
};

/// Assigns a pattern kind and orientation to every macro cell from its contact with the boundary.
std::vector<MacroPatch> classify_layout(const PolygonDomain& domain);

struct Element {
  std::array<int, 4> v{};
  int patch = -1;
  int ring = 0;
};

// Local edges: e0 = (v0,v1), e1 = (v1,v2), e2 = (v3,v2), e3 = (v0,v3).
inline constexpr int kLocalEdgeVertex[4][2] = {{0, 1}, {1, 2}, {3, 2}, {0, 3}};

struct MeshEdge {
  int a = -1, b = -1;  // a < b
  std::array<int, 2> elem{-1, -1};
  std::array<int, 2> local{-1, -1};
  int count() const { return (elem[0] >= 0) + (elem[1] >= 0); }
};

struct QuadInput {
  std::array<Point, 4> p;
  int patch = -1;
  int ring = 0;
};

class Mesh2D {
 public:
  static Mesh2D from_quads(PolygonDomain domain, const std::vector<QuadInput>& quads,
                           std::vector<MacroPatch> patches = {});

  const PolygonDomain& domain() const { return domain_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<int>& vertex_sides() const { return sides_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  const std::vector<MacroPatch>& patches() const { return patches_; }
  int element_edge(int e, int local) const { return element_edges_[e][local]; }
  std::array<Point, 4> element_corners(int e) const;

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// Edges with a single adjacent element.
  std::vector<int> boundary_edges() const;

  std::optional<double> strip_width;

 private:
  PolygonDomain domain_;
  std::vector<Point> vertices_;
  std::vector<int> sides_;
  std::vector<Element> elements_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 4>> element_edges_;
  std::vector<MacroPatch> patches_;
};

struct ConformityIssue {
  std::string kind;
  int elem_a = -1, edge_a = -1;
  int elem_b = -1, edge_b = -1;
  int vertex = -1;
  std::string detail;
};

struct ConformityReport {
  bool pass = true;
  std::vector<ConformityIssue> issues;
  double area_relative_error = 0.0;
  std::string summary() const;
};

ConformityReport check_conformity(const Mesh2D& mesh);

Mesh2D build_geometric_bl_mesh(const PolygonDomain& domain, int L, int n, double sigma);

/// Strip width min(kappa0, lambda q eps), floored so that L corner layers stay resolvable.
double minimal_strip_width(int L, int q, double lambda, double eps, double kappa0, double sigma = 0.25);

Mesh2D build_minimal_mesh(const PolygonDomain& domain, int L, int q, double lambda, double eps, double kappa0,
                          double sigma = 0.25);
Mesh2D build_minimal_mesh_width(const PolygonDomain& domain, int L, double w, double sigma = 0.25);

}  // namespace hpfrac
