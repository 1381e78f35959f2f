#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "hpfrac/errors.hpp"
#include "hpfrac/extension.hpp"
#include "hpfrac/io.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/sinc.hpp"
#include "hpfrac/space.hpp"

using namespace hpfrac;

namespace {

std::string rectangle_domain_text() {
  std::ostringstream os;
  os << "hpfrac-domain 1\nvertices 4\n0 0\n2 0\n2 1\n0 1\nedges 4\n0 1\n1 2\n2 3\n3 0\ncells 18\n";
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 6; ++i) os << i / 3.0 << ' ' << j / 3.0 << ' ' << (i + 1) / 3.0 << ' ' << (j + 1) / 3.0 << '\n';
  return os.str();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("mesh round trip") {
    for (auto d : {BuiltinDomain::square, BuiltinDomain::lshape, BuiltinDomain::slit}) {
      const Mesh2D mesh = build_geometric_bl_mesh(make_builtin_domain(d), 2, 3, 0.25);
      std::stringstream ss;
      write_mesh(ss, mesh);
      const std::string text = ss.str();
      std::istringstream h(text);
      const PolygonDomain dom = read_mesh_domain(h);
      CHECK(dom.builtin_id == d);
      std::istringstream body(text);
      const Mesh2D back = read_mesh(body, dom);
      CHECK(back.num_elements() == mesh.num_elements());
      CHECK(back.num_vertices() == mesh.num_vertices());
      CHECK(back.num_edges() == mesh.num_edges());
      CHECK(check_conformity(back).pass);
      for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto a = mesh.element_corners(e), b = back.element_corners(e);
        for (int k = 0; k < 4; ++k) {
          CHECK(a[k].x == b[k].x);
          CHECK(a[k].y == b[k].y);
        }
      }
    }
  }

  TEST_CASE("custom domain file") {
    std::istringstream is(rectangle_domain_text());
    const PolygonDomain dom = read_domain(is);
    CHECK_FALSE(dom.builtin_id.has_value());
    CHECK(dom.macro_cells.size() == 18);
    CHECK(std::abs(dom.area() - 2.0) < 1e-15);
    const Mesh2D mesh = build_geometric_bl_mesh(dom, 2, 2, 0.25);
    CHECK(check_conformity(mesh).pass);

    std::stringstream out;
    write_domain(out, dom);
    const PolygonDomain again = read_domain(out);
    CHECK(again.vertices.size() == 4);
    CHECK(again.edges == dom.edges);
    CHECK(again.macro_cells.size() == 18);

    std::stringstream ms;
    write_mesh(ms, mesh);
    CHECK_THROWS_AS(read_mesh_domain(ms), DataError);
  }

  TEST_CASE("slit tags survive a round trip") {
    std::stringstream ss;
    write_domain(ss, make_builtin_domain(BuiltinDomain::slit));
    CHECK(ss.str().find(" slit\n") != std::string::npos);
    const PolygonDomain dom = read_domain(ss);
    CHECK(dom.slit_edges == std::vector<int>{5});
  }

  TEST_CASE("malformed files raise DataError") {
    for (const char* bad : {
             "hpfrac-domian 1\n",
             "hpfrac-domain 1\nvertices 4\n0 0\n1 0\n",
             "hpfrac-domain 1\nvertices 3\n0 0\n1 0\n0 1\nedges 3\n0 1\n1 2 wall\n2 0\ncells 0\n",
             "hpfrac-domain 1\nvertices 3\n0 0\n1 0\n0 1\nedges 3\n0 1\nx y\n",
         }) {
      std::istringstream is(bad);
      CHECK_THROWS_AS(read_domain(is), DataError);
    }
    std::istringstream tri("hpfrac-domain 1\nvertices 3\n0 0\n1 0\n0 1\nedges 3\n0 1\n1 2\n2 0\ncells 0\n");
    CHECK_THROWS_AS(read_domain(tri), GeometryError);

    const PolygonDomain sq = make_builtin_domain(BuiltinDomain::square);
    for (const char* bad : {
             "hpfrac-mesh 1\ndomain square\nelements 1\nelement 3 0 0 1 0 1 1 0 1 0 0\n",
             "hpfrac-mesh 1\ndomain square\nelements 1\nelement 0 0 0 1 zero\n",
             "hpfrac-mesh 1\ndomain square\nelements -2\n",
             "mesh 1\n",
         }) {
      std::istringstream is(bad);
      CHECK_THROWS_AS(read_mesh(is, sq), DataError);
    }
  }

  TEST_CASE("field output") {
    auto mesh = std::make_shared<const Mesh2D>(
        build_geometric_bl_mesh(make_builtin_domain(BuiltinDomain::square), 1, 1, 0.25));
    auto sp = std::make_shared<const HpSpace>(mesh, 2);
    const Field f = l2_project(sp, [](Point p) { return p.x * (1 - p.x) * p.y; });
    std::ostringstream os;
    write_field(os, f);
    std::istringstream is(os.str());
    std::string word;
    int version = 0, q = 0, n = 0;
    is >> word >> version;
    CHECK(word == "hpfrac-field");
    is >> word >> q;
    CHECK(word == "degree");
    CHECK(q == 2);
    is >> word >> n;
    CHECK(word == "coefficients");
    REQUIRE(n == sp->dim());
    for (int i = 0; i < n; ++i) {
      double v = 0;
      is >> v;
      CHECK(v == f.coeffs[i]);
    }
  }

  TEST_CASE("solve summaries are valid JSON") {
    const PolygonDomain sq = make_builtin_domain(BuiltinDomain::square);
    const Function2D one = [](Point) { return 1.0; };
    const ExtensionSolution ext = solve_extension(sq, one, 0.5, 1, MeshCase::B);
    const auto je = nlohmann::json::parse(extension_summary_json(ext, "square"));
    CHECK(je["method"] == "extension");
    CHECK(je["domain"] == "square");
    CHECK(je["N_ls"].get<int>() == ext.num_linear_systems());
    CHECK(je["modes"].size() == ext.modes.size());
    CHECK(je["functional"].get<double>() == ext.stored_functional());

    const SincSolution sn = solve_sinc(sq, one, 0.5, 1, MeshCase::A);
    const auto js = nlohmann::json::parse(sinc_summary_json(sn, "square"));
    CHECK(js["method"] == "sinc");
    CHECK(js["case"] == "A");
    CHECK(js["K1"].get<int>() == sn.rule.K1);
    CHECK(js["nodes"].size() == sn.nodes.size());
    CHECK(js["warnings"].is_array());
  }
}
