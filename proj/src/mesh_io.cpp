#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "hpfrac/errors.hpp"
#include "hpfrac/io.hpp"

namespace hpfrac {

namespace {

std::string expect_keyword(std::istream& is, const std::string& kw) {
  std::string word;
  if (!(is >> word) || word != kw) throw DataError("expected '" + kw + "' but found '" + word + "'");
  return word;
}

template <class T>
T read_value(std::istream& is, const char* what) {
  T v{};
  if (!(is >> v)) throw DataError(std::string("malformed value for ") + what);
  return v;
}

}  // namespace

void write_mesh(std::ostream& os, const Mesh2D& mesh) {
  os << std::setprecision(17);
  os << "hpfrac-mesh 1\n";
  os << "domain " << mesh.domain().name() << '\n';
  os << "elements " << mesh.num_elements() << '\n';
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto X = mesh.element_corners(e);
    os << "element " << e;
    for (const Point& p : X) os << ' ' << p.x << ' ' << p.y;
    os << ' ' << mesh.elements()[e].patch << ' ' << mesh.elements()[e].ring << '\n';
  }
  const auto bedges = mesh.boundary_edges();
  os << "boundary_edges " << bedges.size() << '\n';
  for (int id : bedges) {
    const MeshEdge& ed = mesh.edges()[id];
    const Point a = mesh.vertices()[ed.a], b = mesh.vertices()[ed.b];
    os << "bedge " << ed.elem[0] << ' ' << ed.local[0] << ' ' << a.x << ' ' << a.y << ' ' << b.x << ' ' << b.y
       << '\n';
  }
}

PolygonDomain read_mesh_domain(std::istream& is) {
  expect_keyword(is, "hpfrac-mesh");
  read_value<int>(is, "version");
  expect_keyword(is, "domain");
  const auto name = read_value<std::string>(is, "domain");
  if (name == "custom") throw DataError("mesh file refers to a custom domain; supply the domain file");
  return make_builtin_domain(parse_builtin(name));
}

Mesh2D read_mesh(std::istream& is, const PolygonDomain& domain) {
  expect_keyword(is, "hpfrac-mesh");
  read_value<int>(is, "version");
  expect_keyword(is, "domain");
  read_value<std::string>(is, "domain");
  expect_keyword(is, "elements");
  const int n = read_value<int>(is, "element count");
  if (n < 0) throw DataError("negative element count");
  std::vector<QuadInput> quads(n);
  for (int e = 0; e < n; ++e) {
    expect_keyword(is, "element");
    const int id = read_value<int>(is, "element id");
    if (id != e) throw DataError("element records must be numbered consecutively");
    for (auto& p : quads[e].p) {
      p.x = read_value<double>(is, "x");
      p.y = read_value<double>(is, "y");
    }
    quads[e].patch = read_value<int>(is, "patch");
    quads[e].ring = read_value<int>(is, "ring");
  }
  return Mesh2D::from_quads(domain, quads);
}

PolygonDomain read_domain(std::istream& is) {
  expect_keyword(is, "hpfrac-domain");
  read_value<int>(is, "version");
  PolygonDomain d;
  expect_keyword(is, "vertices");
  const int nv = read_value<int>(is, "vertex count");
  for (int i = 0; i < nv; ++i) {
    const double x = read_value<double>(is, "x");
    const double y = read_value<double>(is, "y");
    d.vertices.push_back({x, y});
  }
  expect_keyword(is, "edges");
  const int ne = read_value<int>(is, "edge count");
  std::string line;
  std::getline(is, line);
  for (int i = 0; i < ne; ++i) {
    if (!std::getline(is, line)) throw DataError("missing edge record");
    std::istringstream ls(line);
    int a = -1, b = -1;
    if (!(ls >> a >> b)) throw DataError("malformed edge record '" + line + "'");
    std::string tag;
    if (ls >> tag) {
      if (tag != "slit") throw DataError("unknown edge tag '" + tag + "'");
      d.slit_edges.push_back(i);
    }
    d.edges.push_back({a, b});
  }
  expect_keyword(is, "cells");
  const int nc = read_value<int>(is, "cell count");
  for (int i = 0; i < nc; ++i) {
    Rect r;
    r.x0 = read_value<double>(is, "x0");
    r.y0 = read_value<double>(is, "y0");
    r.x1 = read_value<double>(is, "x1");
    r.y1 = read_value<double>(is, "y1");
    d.macro_cells.push_back(r);
  }
  validate_domain(d);
  return d;
}

void write_domain(std::ostream& os, const PolygonDomain& d) {
  os << std::setprecision(17) << "hpfrac-domain 1\n";
  os << "vertices " << d.vertices.size() << '\n';
  for (const Point& p : d.vertices) os << p.x << ' ' << p.y << '\n';
  os << "edges " << d.edges.size() << '\n';
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e)
    os << d.edges[e][0] << ' ' << d.edges[e][1] << (d.is_slit_edge(e) ? " slit" : "") << '\n';
  os << "cells " << d.macro_cells.size() << '\n';
  for (const Rect& r : d.macro_cells) os << r.x0 << ' ' << r.y0 << ' ' << r.x1 << ' ' << r.y1 << '\n';
}

}  // namespace hpfrac
