#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>

#include "hpfrac/errors.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/space.hpp"

using namespace hpfrac;

namespace {

double quad_area(const std::array<Point, 4>& p) {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) a += p[i].x * p[(i + 1) % 4].y - p[(i + 1) % 4].x * p[i].y;
  return 0.5 * a;
}

double total_area(const std::vector<RefQuad>& qs) {
  double a = 0.0;
  for (const auto& q : qs) a += quad_area(q.p);
  return a;
}

}  // namespace

TEST_SUITE("meshgen") {
  TEST_CASE("1D geometric mesh examples") {
    const auto m = build_1d_geo_mesh(1.0, 3, 0.25);
    REQUIRE(m.breakpoints.size() == 4);
    CHECK(m.breakpoints[0] == 0.0);
    CHECK(std::abs(m.breakpoints[1] - 1.0 / 16) < 1e-16);
    CHECK(std::abs(m.breakpoints[2] - 0.25) < 1e-16);
    CHECK(m.breakpoints[3] == 1.0);

    const auto one = build_1d_geo_mesh(1.0, 1, 0.5);
    CHECK(one.breakpoints == std::vector<double>{0.0, 1.0});

    const auto two = build_1d_geo_mesh(2.0, 2, 0.25);
    CHECK(two.breakpoints == std::vector<double>{0.0, 0.5, 2.0});
  }

  TEST_CASE("1D geometric ratio invariant") {
    for (double sigma : {0.1, 0.25, 0.5, 0.8})
      for (int M = 3; M <= 20; ++M) {
        const auto m = build_1d_geo_mesh(3.5, M, sigma);
        const auto& b = m.breakpoints;
        for (int i = 1; i + 2 <= M; ++i) {
          const double ratio = (b[i + 1] - b[i]) / (b[i + 2] - b[i + 1]);
          CHECK(std::abs(ratio - sigma) <= 1e-14 * sigma);
        }
      }
  }

  TEST_CASE("1D mesh parameter errors") {
    CHECK_THROWS_AS(build_1d_geo_mesh(1.0, 0, 0.5), ParameterError);
    CHECK_THROWS_AS(build_1d_geo_mesh(1.0, 2, 1.0), ParameterError);
    CHECK_THROWS_AS(build_1d_geo_mesh(1.0, 2, 0.0), ParameterError);
    CHECK_THROWS_AS(build_1d_geo_mesh(-1.0, 2, 0.5), ParameterError);
  }

  TEST_CASE("linear degree vector") {
    CHECK(linear_degree_vector(4, 1.0) == DegreeVector{1, 2, 3, 4});
    CHECK(linear_degree_vector(3, 0.5) == DegreeVector{1, 2, 2});
    CHECK(linear_degree_vector(1, 7.3) == DegreeVector{1});
    CHECK_THROWS_AS(linear_degree_vector(3, 0.0), ParameterError);
  }

  TEST_CASE("pattern examples") {
    const auto bl = refine_pattern(bl_pattern(1, 0.5));
    REQUIRE(bl.size() == 2);
    CHECK(bl[0].p[0].y == 0.0);
    CHECK(bl[0].p[2].y == 0.5);
    CHECK(bl[1].p[2].y == 1.0);

    const auto triv = refine_pattern(trivial_pattern());
    REQUIRE(triv.size() == 1);
    CHECK(quad_area(triv[0].p) == doctest::Approx(1.0));

    // quad-only corner ring: two trapezoids around the inner square
    const auto corner = refine_pattern(corner_pattern(1, 0.5));
    REQUIRE(corner.size() == 3);
    CHECK(std::abs(quad_area(corner.back().p) - 0.25) < 1e-15);
  }

  TEST_CASE("pattern element counts match enumeration") {
    const double sigma = 0.3;
    for (int L = 0; L <= 6; ++L) {
      const auto bl = bl_pattern(L, sigma);
      CHECK(static_cast<int>(refine_pattern(bl).size()) == L + 1);
      CHECK(pattern_element_count(bl) == L + 1);
    }
    for (int n = 0; n <= 6; ++n) {
      const auto c = corner_pattern(n, sigma);
      CHECK(static_cast<int>(refine_pattern(c).size()) == 2 * n + 1);
      CHECK(pattern_element_count(c) == 2 * n + 1);
    }
    for (int L = 0; L <= 6; ++L)
      for (int n = L; n <= 6; ++n) {
        const auto t = tensor_pattern(L, n, sigma);
        const int expect_t = (L + 1) * (L + 1) - 1 + 2 * (n - L) + 1;
        CHECK(static_cast<int>(refine_pattern(t).size()) == expect_t);
        CHECK(pattern_element_count(t) == expect_t);
        const auto m = mixed_pattern(L, n, sigma);
        const int expect_m = n * (L + 2) + L + 1;
        CHECK(static_cast<int>(refine_pattern(m).size()) == expect_m);
        CHECK(pattern_element_count(m) == expect_m);
      }
  }

  TEST_CASE("patterns tile the unit square") {
    const double sigma = 0.25;
    for (int L = 0; L <= 4; ++L)
      for (int n = L; n <= 5; ++n) {
        CHECK(std::abs(total_area(refine_pattern(tensor_pattern(L, n, sigma))) - 1.0) < 1e-14);
        CHECK(std::abs(total_area(refine_pattern(mixed_pattern(L, n, sigma))) - 1.0) < 1e-14);
        CHECK(std::abs(total_area(refine_pattern(corner_pattern(n, sigma))) - 1.0) < 1e-14);
      }
  }

  TEST_CASE("pattern parameter errors") {
    CHECK_THROWS_AS(tensor_pattern(3, 2, 0.5), ParameterError);
    CHECK_THROWS_AS(mixed_pattern(2, 1, 0.5), ParameterError);
    CHECK_THROWS_AS(bl_pattern(2, 1.5), ParameterError);
  }

  TEST_CASE("geometric meshes of the square") {
    const auto sq = make_builtin_domain(BuiltinDomain::square);
    const Mesh2D m0 = build_geometric_bl_mesh(sq, 0, 0, 0.5);
    CHECK(m0.num_elements() == 9);
    const Mesh2D m1 = build_geometric_bl_mesh(sq, 1, 1, 0.5);
    // 4 corner cells Tensor(1,1) with 4 elements, 4 edge cells BL(1) with 2, one trivial cell
    CHECK(m1.num_elements() == 4 * 4 + 4 * 2 + 1);
    CHECK(check_conformity(m1).pass);
    const auto patches = classify_layout(sq);
    int tensors = 0, bls = 0, trivials = 0;
    for (const auto& p : patches) {
      tensors += p.pattern.kind == PatternKind::tensor;
      bls += p.pattern.kind == PatternKind::boundary_layer;
      trivials += p.pattern.kind == PatternKind::trivial;
    }
    CHECK(tensors == 4);
    CHECK(bls == 4);
    CHECK(trivials == 1);
  }

  TEST_CASE("L-shape layout and meshes") {
    const auto ls = make_builtin_domain(BuiltinDomain::lshape);
    CHECK(ls.macro_cells.size() == 27);
    const Mesh2D m = build_geometric_bl_mesh(ls, 4, 4, 0.25);
    const auto rep = check_conformity(m);
    CHECK(rep.pass);
    CHECK(rep.area_relative_error <= 1e-12);
    int prev = 0;
    for (int L = 1; L <= 5; ++L) {
      const int n = build_geometric_bl_mesh(ls, L, L, 0.25).num_elements();
      CHECK(n > prev);
      CHECK(n <= 40 * (L + 1) * (L + 1));
      prev = n;
    }
  }

  TEST_CASE("generated meshes are conforming and cover the domain") {
    for (auto d : {BuiltinDomain::square, BuiltinDomain::lshape, BuiltinDomain::slit}) {
      const auto dom = make_builtin_domain(d);
      for (int L = 0; L <= 3; ++L)
        for (int n = L; n <= 3; ++n) {
          const auto rep = check_conformity(build_geometric_bl_mesh(dom, L, n, 0.25));
          CHECK_MESSAGE(rep.pass, builtin_name(d), " L=", L, " n=", n, " ", rep.summary());
          CHECK(rep.area_relative_error <= 1e-12);
        }
      for (double eps : {1e-5, 1e-2, 1.0, 10.0}) {
        const auto rep = check_conformity(build_minimal_mesh(dom, 3, 3, 1.0, eps, 0.25));
        CHECK_MESSAGE(rep.pass, builtin_name(d), " eps=", eps, " ", rep.summary());
      }
    }
  }

  TEST_CASE("slit sides are not adjacent") {
    const auto dom = make_builtin_domain(BuiltinDomain::slit);
    const Mesh2D m = build_geometric_bl_mesh(dom, 2, 2, 0.25);
    CHECK(check_conformity(m).pass);
    std::map<std::pair<double, double>, int> copies;
    int on_slit = 0;
    for (const auto& e : m.edges()) {
      const Point a = m.vertices()[e.a], b = m.vertices()[e.b];
      const bool slit = std::abs(a.y) < 1e-14 && std::abs(b.y) < 1e-14 && a.x <= 1e-14 && b.x <= 1e-14;
      if (!slit) continue;
      ++on_slit;
      CHECK(e.count() == 1);
      ++copies[{std::min(a.x, b.x), std::max(a.x, b.x)}];
    }
    CHECK(on_slit > 0);
    for (const auto& [seg, c] : copies) CHECK(c == 2);
  }

  TEST_CASE("T-junction is reported") {
    PolygonDomain dom = make_builtin_domain(BuiltinDomain::square);
    std::vector<QuadInput> quads(3);
    quads[0].p = {Point{0, 0}, Point{0.5, 0}, Point{0.5, 1}, Point{0, 1}};
    quads[1].p = {Point{0.5, 0}, Point{1, 0}, Point{1, 0.5}, Point{0.5, 0.5}};
    quads[2].p = {Point{0.5, 0.5}, Point{1, 0.5}, Point{1, 1}, Point{0.5, 1}};
    const Mesh2D m = Mesh2D::from_quads(dom, quads);
    const auto rep = check_conformity(m);
    CHECK_FALSE(rep.pass);
    bool found = false;
    for (const auto& is : rep.issues)
      if (is.kind == "T-junction") {
        found = true;
        CHECK(is.vertex >= 0);
        const Point v = m.vertices()[is.vertex];
        CHECK(v.x == 0.5);
        CHECK(v.y == 0.5);
      }
    CHECK(found);
  }

  TEST_CASE("minimal mesh strip widths") {
    const auto sq = make_builtin_domain(BuiltinDomain::square);
    const Mesh2D a = build_minimal_mesh(sq, 2, 2, 0.1, 0.01, 0.25);
    REQUIRE(a.strip_width);
    CHECK(std::abs(*a.strip_width - 0.002) < 1e-15);
    for (int L = 1; L <= 3; ++L) {
      const Mesh2D b = build_minimal_mesh(sq, L, 3, 0.7, 10.0, 0.25);
      CHECK(*b.strip_width == 0.25);
    }
    CHECK_THROWS_AS(build_minimal_mesh(sq, 2, 2, 1.0, 1.0, 0.6), ParameterError);
    CHECK_THROWS_AS(build_minimal_mesh_width(sq, 2, 0.4), GeometryError);
  }

  TEST_CASE("minimal mesh dof count grows linearly in L") {
    const auto sq = make_builtin_domain(BuiltinDomain::square);
    std::vector<double> n;
    for (int L = 1; L <= 4; ++L) {
      auto mesh = std::make_shared<const Mesh2D>(build_minimal_mesh(sq, L, 1, 0.1, 0.1, 0.25));
      CHECK(check_conformity(*mesh).pass);
      n.push_back(HpSpace(mesh, 1).dim());
    }
    const double d1 = n[1] - n[0], d2 = n[2] - n[1], d3 = n[3] - n[2];
    CHECK(d1 > 0);
    CHECK(d1 == d2);
    CHECK(d2 == d3);
  }

  TEST_CASE("unsupported domains") {
    PolygonDomain tri;
    tri.vertices = {{0, 0}, {1, 0}, {0, 1}};
    tri.edges = {{0, 1}, {1, 2}, {2, 0}};
    tri.macro_cells = {{0, 0, 1, 1}};
    CHECK_THROWS_AS(validate_domain(tri), GeometryError);
    CHECK_THROWS_AS(build_geometric_bl_mesh(tri, 1, 1, 0.5), GeometryError);
  }
}
