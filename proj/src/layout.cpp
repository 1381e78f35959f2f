#include <algorithm>
#include <cmath>
#include <functional>

#include "hpfrac/errors.hpp"
#include "hpfrac/mesh.hpp"

namespace hpfrac {

namespace {

Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

std::array<Point, 4> cell_corners(const Rect& r) {
  return {Point{r.x0, r.y0}, Point{r.x1, r.y0}, Point{r.x1, r.y1}, Point{r.x0, r.y1}};
}

void orient(MacroPatch& mp, const std::array<Point, 4>& c, int o, int along) {
  const int n1 = (o + 1) % 4, n3 = (o + 3) % 4;
  const int across = along == n1 ? n3 : n1;
  mp.origin = c[o];
  mp.axis_u = sub(c[along], c[o]);
  mp.axis_v = sub(c[across], c[o]);
}

std::string cell_name(const Rect& r) {
  return "[" + std::to_string(r.x0) + "," + std::to_string(r.x1) + "]x[" + std::to_string(r.y0) + "," +
         std::to_string(r.y1) + "]";
}

Mesh2D build_from_patterns(const PolygonDomain& domain, std::vector<MacroPatch> patches) {
  std::vector<QuadInput> quads;
  for (int pi = 0; pi < static_cast<int>(patches.size()); ++pi) {
    const MacroPatch& mp = patches[pi];
    for (const RefQuad& rq : refine_pattern(mp.pattern)) {
      QuadInput q;
      q.patch = pi;
      q.ring = rq.ring;
      for (int i = 0; i < 4; ++i) {
        const Point r = rq.p[i];
        q.p[i] = {mp.origin.x + r.x * mp.axis_u.x + r.y * mp.axis_v.x,
                  mp.origin.y + r.x * mp.axis_u.y + r.y * mp.axis_v.y};
      }
      quads.push_back(q);
    }
  }
  Mesh2D mesh = Mesh2D::from_quads(domain, quads, std::move(patches));
  const ConformityReport rep = check_conformity(mesh);
  if (!rep.pass) throw ConformityError("generated mesh is not conforming: " + rep.summary());
  return mesh;
}

}  // namespace

std::vector<MacroPatch> classify_layout(const PolygonDomain& domain) {
  validate_domain(domain);
  std::vector<MacroPatch> out;
  for (const Rect& cell : domain.macro_cells) {
    if (!(cell.x1 > cell.x0 && cell.y1 > cell.y0)) throw GeometryError("macro cell " + cell_name(cell) + " is empty");
    MacroPatch mp;
    mp.cell = cell;
    const auto c = cell_corners(cell);
    std::array<bool, 4> vtx{};
    for (int k = 0; k < 4; ++k) {
      mp.edge_on_boundary[k] = domain.segment_on_boundary(c[k], c[(k + 1) % 4]);
      mp.corner_on_boundary[k] = domain.point_on_boundary(c[k]);
      vtx[k] = domain.is_vertex(c[k]);
    }
    std::vector<int> E;
    for (int k = 0; k < 4; ++k)
      if (mp.edge_on_boundary[k]) E.push_back(k);
    auto unsupported = [&](const std::string& why) {
      return GeometryError("unsupported macro layout at cell " + cell_name(cell) + ": " + why);
    };
    if (E.empty()) {
      std::vector<int> touch;
      for (int k = 0; k < 4; ++k)
        if (mp.corner_on_boundary[k]) touch.push_back(k);
      if (touch.empty()) {
        mp.pattern.kind = PatternKind::trivial;
        orient(mp, c, 0, 1);
      } else if (touch.size() == 1 && vtx[touch[0]]) {
        mp.pattern.kind = PatternKind::corner;
        orient(mp, c, touch[0], (touch[0] + 1) % 4);
      } else {
        throw unsupported("cell touches the boundary only in isolated non-vertex points");
      }
    } else if (E.size() == 1) {
      const int ka = E[0], kb = (E[0] + 1) % 4;
      if (mp.corner_on_boundary[(ka + 2) % 4] || mp.corner_on_boundary[(ka + 3) % 4])
        throw unsupported("cell touches the boundary away from its boundary edge");
      if (vtx[ka] && vtx[kb]) throw unsupported("boundary edge of the cell connects two domain vertices");
      if (vtx[ka] || vtx[kb]) {
        mp.pattern.kind = PatternKind::mixed;
        const int o = vtx[ka] ? ka : kb;
        orient(mp, c, o, o == ka ? kb : ka);
      } else {
        mp.pattern.kind = PatternKind::boundary_layer;
        orient(mp, c, ka, kb);
      }
    } else if (E.size() == 2) {
      int o = -1;
      if (E[1] == (E[0] + 1) % 4) o = E[1];
      if (E[0] == (E[1] + 1) % 4) o = E[0];
      if (o < 0) throw unsupported("two opposite cell edges lie on the boundary");
      if (mp.corner_on_boundary[(o + 2) % 4]) throw unsupported("corner cell touches the boundary at its far corner");
      if (vtx[(o + 1) % 4] || vtx[(o + 3) % 4]) throw unsupported("corner cell edge ends in a second domain vertex");
      mp.pattern.kind = PatternKind::tensor;
      orient(mp, c, o, (o + 1) % 4);
    } else {
      throw unsupported("more than two cell edges lie on the boundary");
    }
    out.push_back(mp);
  }
  return out;
}

Mesh2D build_geometric_bl_mesh(const PolygonDomain& domain, int L, int n, double sigma) {
  if (L < 0 || n < L) throw ParameterError("build_geometric_bl_mesh: requires n >= L >= 0");
  if (!(sigma > 0 && sigma < 1)) throw ParameterError("build_geometric_bl_mesh: sigma must lie in (0,1)");
  auto patches = classify_layout(domain);
  for (MacroPatch& mp : patches) {
    switch (mp.pattern.kind) {
      case PatternKind::trivial: mp.pattern = trivial_pattern(); break;
      case PatternKind::boundary_layer: mp.pattern = bl_pattern(L, sigma); break;
      case PatternKind::tensor: mp.pattern = tensor_pattern(L, n, sigma); break;
      case PatternKind::mixed: mp.pattern = mixed_pattern(L, n, sigma); break;
      case PatternKind::corner: mp.pattern = corner_pattern(n + L, sigma); break;
    }
  }
  return build_from_patterns(domain, std::move(patches));
}

double minimal_strip_width(int L, int q, double lambda, double eps, double kappa0, double sigma) {
  if (!(eps > 0)) throw ParameterError("minimal mesh: eps must be positive");
  if (!(lambda > 0)) throw ParameterError("minimal mesh: lambda must be positive");
  if (q < 1 || L < 0) throw ParameterError("minimal mesh: requires q >= 1 and L >= 0");
  if (!(kappa0 > 0)) throw ParameterError("minimal mesh: kappa0 must be positive");
  const double floor = 1e-10 * std::pow(sigma, -L);
  return std::max(std::min(kappa0, lambda * q * eps), floor);
}

Mesh2D build_minimal_mesh(const PolygonDomain& domain, int L, int q, double lambda, double eps, double kappa0,
                          double sigma) {
  validate_domain(domain);
  if (kappa0 > 0.5 * domain.shortest_edge() + 1e-15)
    throw ParameterError("minimal mesh: kappa0 must not exceed half the shortest domain edge");
  return build_minimal_mesh_width(domain, L, minimal_strip_width(L, q, lambda, eps, kappa0, sigma), sigma);
}

Mesh2D build_minimal_mesh_width(const PolygonDomain& domain, int L, double w, double sigma) {
  if (L < 0) throw ParameterError("minimal mesh: L must be >= 0");
  if (!(w > 0)) throw ParameterError("minimal mesh: strip width must be positive");
  if (!(sigma > 0 && sigma < 1)) throw ParameterError("minimal mesh: sigma must lie in (0,1)");
  auto patches = classify_layout(domain);
  auto pw = [&](double base, int from, int to) {
    std::vector<double> v;
    for (int i = from; i <= to; ++i) v.push_back(base * std::pow(sigma, i));
    return v;
  };
  for (MacroPatch& mp : patches) {
    if (mp.pattern.kind == PatternKind::trivial) continue;
    const double hu = std::hypot(mp.axis_u.x, mp.axis_u.y), hv = std::hypot(mp.axis_v.x, mp.axis_v.y);
    if (std::abs(hu - hv) > 1e-12 * hu) throw GeometryError("minimal meshes require square macro cells");
    const double om = w / hu;
    if (!(om < 1.0)) throw GeometryError("minimal mesh: strip width " + std::to_string(w) +
                                         " reaches the macro cell size " + std::to_string(hu));
    PatternSpec& p = mp.pattern;
    switch (p.kind) {
      case PatternKind::trivial: break;
      case PatternKind::boundary_layer: p.heights = {om}; break;
      case PatternKind::tensor:
        p.heights = {om};
        p.rings = pw(om, 1, L);
        break;
      case PatternKind::mixed:
        p.heights = {om};
        p.rings = pw(om, 0, L);
        p.slopes = {sigma};
        break;
      case PatternKind::corner: p.rings = pw(om, 0, L + 1); break;
    }
  }
  Mesh2D mesh = build_from_patterns(domain, std::move(patches));
  mesh.strip_width = w;
  return mesh;
}

}  // namespace hpfrac
