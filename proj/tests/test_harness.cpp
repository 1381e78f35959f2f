#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "hpfrac/assembly.hpp"
#include "hpfrac/errors.hpp"
#include "hpfrac/linsolve.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/mms.hpp"
#include "hpfrac/oracle.hpp"
#include "hpfrac/space.hpp"
#include "hpfrac/study.hpp"

using namespace hpfrac;

namespace {

// int u and u(1/2, 1/2) for -Lap u = 1 on the unit square, summed to 30 digits.
constexpr double kPoissonIntegral = 0.0351442537387884288971;
constexpr double kPoissonCentre = 0.0736713532815138155639;

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("series oracle reference values") {
    const struct {
      double s, J;
    } cases[] = {{0.2, 0.18084690207343807}, {0.5, 0.17010642517625416}, {0.8, 0.17008276064424338}};
    for (const auto& c : cases) {
      const SquareSeriesOracle o = series_oracle_square(c.s, 2001);
      CHECK(std::abs(o.J_ref - c.J) < 1e-13 * c.J);
      CHECK(o.J_tail > 0);
      CHECK(std::abs(o.J_ref - (o.J_truncated + o.J_tail)) < 1e-16);
    }
  }

  TEST_CASE("tail-corrected oracle is stable under truncation") {
    for (double s : {0.2, 0.4, 0.8}) {
      const double a = series_oracle_square(s, 1001).J_ref;
      const double b = series_oracle_square(s, 2001).J_ref;
      const double c = series_oracle_square(s, 4001).J_ref;
      CHECK(std::abs(a - c) < 1e-7 * c);
      CHECK(std::abs(b - c) < 1e-12 * c);
      OracleOptions raw;
      raw.tail_correction = false;
      const SquareSeriesOracle r = series_oracle_square(s, 2001, raw);
      CHECK(r.J_tail == 0.0);
      CHECK(r.J_ref < c);
    }
  }

  TEST_CASE("oracle at s = 1 reproduces the Poisson problem") {
    OracleOptions opt;
    opt.allow_unit_order = true;
    const SquareSeriesOracle o = series_oracle_square(1.0, 2001, opt);
    CHECK(o.d_s == 1.0);
    CHECK(std::abs(o.J_ref - kPoissonIntegral) < 1e-13);
    CHECK(std::abs(o.evaluate({0.5, 0.5}, 401) - kPoissonCentre) < 1e-8);

    auto mesh = std::make_shared<const Mesh2D>(
        build_geometric_bl_mesh(make_builtin_domain(BuiltinDomain::square), 4, 4, 0.25));
    auto sp = std::make_shared<const HpSpace>(mesh, 8);
    const Operators ops = assemble_operators(*sp, {}, ExecPolicy::serial);
    const Eigen::VectorXd F = assemble_load(*sp, [](Point) { return 1.0; }, ExecPolicy::serial);
    const Eigen::VectorXd x = factor_spd(ops.stiffness).solve(F);
    CHECK(std::abs(F.dot(x) - kPoissonIntegral) < 1e-9);
    const Field u = field_from_free(sp, x);
    for (const Point p : {Point{0.5, 0.5}, Point{0.2, 0.7}, Point{0.05, 0.9}})
      CHECK(std::abs(evaluate_field(u, {p})[0] - o.evaluate(p, 401)) < 1e-6);
    CHECK_THROWS_AS(series_oracle_square(1.0, 101), ParameterError);
  }

  TEST_CASE("oracle parameter checks") {
    CHECK_THROWS_AS(series_oracle_square(0.5, 100), ParameterError);
    CHECK_THROWS_AS(series_oracle_square(0.0, 101), ParameterError);
    CHECK(SquareSeriesOracle::eigenvalue(1, 1) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-15));
    CHECK(SquareSeriesOracle::coefficient(1, 3) == doctest::Approx(8.0 / (3 * M_PI * M_PI)).epsilon(1e-15));
    CHECK(SquareSeriesOracle::coefficient(2, 3) == 0.0);
  }

  TEST_CASE("error functional") {
    CHECK(error_functional(1.0, 0.96) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(error_functional(0.5, 0.5) == 0.0);
    CHECK(error_functional(0.5, 0.54) == doctest::Approx(0.2).epsilon(1e-14));
  }

  TEST_CASE("discrete solutions converge to the oracle") {
    const PolygonDomain sq = make_builtin_domain(BuiltinDomain::square);
    const double J_ref = series_oracle_square(0.5, 2001).J_ref;
    Steering st;
    double prev = 1.0;
    for (int p = 1; p <= 3; ++p) {
      const MethodRun ext = run_method(sq, Method::extension, MeshCase::B, 0.5, p, st);
      const double e = error_functional(J_ref, ext.J);
      CHECK(ext.J < J_ref);
      CHECK(e < prev);
      prev = e;
    }
    CHECK(prev < 0.02);
  }

  TEST_CASE("study configuration parsing") {
    const StudyConfig c = parse_study_config(
        R"({"domains": ["square", "lshape"], "s": [0.4], "p_min": 1, "p_max": 3, "methods": ["sinc"],
            "cases": ["A", "B"], "reference": "fine", "deterministic": true, "sigma_x": 0.2})");
    CHECK(c.domains.size() == 2);
    CHECK(c.p_values == std::vector<int>{1, 2, 3});
    CHECK(c.methods == std::vector<Method>{Method::sinc});
    CHECK(c.cases.size() == 2);
    CHECK(c.reference == ReferencePolicy::fine);
    CHECK(c.deterministic);
    CHECK(c.steering.sigma_x == 0.2);
  }

  TEST_CASE("invalid study configurations raise ConfigError") {
    for (const char* bad : {
             R"({"p": [1], "bogus": 1})",
             R"({"p_min": 1})",
             R"({"p": []})",
             R"({"p": [0]})",
             R"({"p": [1], "s": [1.0]})",
             R"({"p": [1], "domains": ["circle"]})",
             R"({"p": [1], "methods": ["fem"]})",
             R"({"p": [1], "cases": ["C"]})",
             R"({"p": [1], "reference": "exact"})",
             R"({"p": [1], "oracle_trunc": 2000})",
             R"({"p": [1], "solve_mode": "lu"})",
             R"({"p": [1], "s": "half"})",
             R"([1, 2])",
             R"({"p": [1],)",
         }) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_study_config(bad), ConfigError);
    }
    CHECK_THROWS_AS(load_study_config("/nonexistent/config.json"), ConfigError);
  }

  TEST_CASE("study rows, csv and determinism") {
    StudyConfig c = parse_study_config(R"({"p": [1, 2], "s": [0.5], "deterministic": true})");
    const auto rows = run_study(c);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].method == Method::extension);
    CHECK(rows[2].method == Method::sinc);
    for (const auto& r : rows) {
      CHECK_FALSE(r.failed);
      CHECK(r.seconds == 0.0);
      CHECK(r.error > 0);
      CHECK(r.n_dof > 0);
      CHECK(r.n_ls > 0);
    }
    CHECK(rows[1].error < rows[0].error);
    CHECK(rows[3].error < rows[2].error);
    std::ostringstream a, b;
    write_csv(a, rows);
    write_csv(b, run_study(c));
    CHECK(a.str() == b.str());
    const auto lines = split_lines(a.str());
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "domain,method,case,s,p,N_dof,N_ls,error,seconds");
    CHECK(lines[1].rfind("square,extension,B,0.5,1,", 0) == 0);
    CHECK(lines[4].rfind("square,sinc,B,0.5,2,", 0) == 0);
  }

  TEST_CASE("fine reference on a non-square domain") {
    const StudyConfig c = parse_study_config(
        R"({"domains": ["lshape"], "p": [1], "p_ref": 2, "s": [0.4], "methods": ["extension"],
            "reference": "fine", "check_reference_increment": true})");
    const auto rows = run_study(c);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].failed);
    CHECK(rows[0].J_ref > rows[0].J);
    CHECK(rows[0].seconds > 0);
    bool increment_note = false;
    for (const auto& n : rows[0].notes) increment_note |= n.find("reference increment") != std::string::npos;
    CHECK(increment_note);
  }

  TEST_CASE("failed solves produce nan rows and notes") {
    const StudyConfig c = parse_study_config(
        R"({"p": [1], "s": [0.5], "methods": ["extension"], "cases": ["A"], "kappa0": 0.9})");
    const auto rows = run_study(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].failed);
    std::ostringstream csv, notes;
    write_csv(csv, rows);
    write_notes(notes, rows);
    const auto lines = split_lines(csv.str());
    CHECK(lines[1].substr(lines[1].size() - 8) == ",nan,nan");
    CHECK(notes.str().rfind("row 1: error: ", 0) == 0);
  }

  TEST_CASE("manufactured solutions") {
    auto trivial = std::make_shared<const Mesh2D>(
        build_geometric_bl_mesh(make_builtin_domain(BuiltinDomain::square), 0, 0, 0.25));
    const MmsReport sine = mms_check(1.0, {2, 4, 6}, trivial, MmsSolution::sine);
    for (size_t i = 1; i < sine.rows.size(); ++i) CHECK(sine.rows[i].l2_error <= 0.25 * sine.rows[i - 1].l2_error);

    const double eps = 1e-3;
    auto minimal = std::make_shared<const Mesh2D>(
        build_minimal_mesh(make_builtin_domain(BuiltinDomain::square), 2, 4, 1.0, eps, 0.25));
    const MmsReport on_min = mms_check(eps, {4}, minimal, MmsSolution::boundary_layer);
    const MmsReport on_trivial = mms_check(eps, {4}, trivial, MmsSolution::boundary_layer);
    CHECK(on_min.rows[0].l2_error <= 0.1 * on_trivial.rows[0].l2_error);
  }
}
