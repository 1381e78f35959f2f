#include <doctest.h>

#include <cmath>
#include <random>

#include "hpfrac/errors.hpp"
#include "hpfrac/quadrature.hpp"

using namespace hpfrac;

namespace {

double apply(const QuadRule1D& r, const std::vector<double>& c) {
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    double v = 0.0;
    for (size_t k = c.size(); k-- > 0;) v = v * r.nodes[i] + c[k];
    s += r.weights[i] * v;
  }
  return s;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("gauss_legendre closed forms") {
    const auto r1 = gauss_legendre(1);
    REQUIRE(r1.size() == 1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const auto r2 = gauss_legendre(2);
    CHECK(std::abs(r2.nodes[0] + 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(r2.nodes[1] - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(r2.weights[0] - 1.0) < 1e-15);
    CHECK(std::abs(r2.weights[1] - 1.0) < 1e-15);

    const auto r3 = gauss_legendre(3);
    CHECK(std::abs(apply(r3, {0, 0, 0, 0, 1}) - 0.4) < 1e-15);
  }

  TEST_CASE("gauss_legendre exactness, symmetry and positivity") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int n = 1; n <= 40; ++n) {
      const auto r = gauss_legendre(n);
      for (int i = 0; i < n; ++i) {
        CHECK(r.weights[i] > 0);
        CHECK(std::abs(r.nodes[i] + r.nodes[n - 1 - i]) < 1e-14);
      }
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> c(2 * n);
        double exact = 0.0, scale = 0.0;
        for (int k = 0; k < 2 * n; ++k) {
          c[k] = coef(gen);
          const double m = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
          exact += c[k] * m;
          scale += std::abs(c[k]) * 2.0 / (k + 1);
        }
        CHECK(std::abs(apply(r, c) - exact) <= 1e-13 * scale);
      }
    }
  }

  TEST_CASE("cached rules agree with fresh ones") {
    for (int n : {1, 5, 17, 64}) {
      const auto& a = gauss_legendre_cached(n);
      const auto b = gauss_legendre(n);
      CHECK(a.nodes == b.nodes);
      CHECK(a.weights == b.weights);
    }
  }

  TEST_CASE("gauss_jacobi moments") {
    const auto r = gauss_jacobi(1, -0.5);
    CHECK(std::abs(r.weights[0] - 2.0) < 1e-14);

    const auto r4 = gauss_jacobi(4, 0.5);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += r4.weights[i] * std::pow(r4.nodes[i], 5);
    CHECK(std::abs(s - 2.0 / 13.0) < 1e-14);
  }

  TEST_CASE("gauss_jacobi with alpha = 0 is mapped Gauss-Legendre") {
    for (int n : {1, 3, 8, 20}) {
      const auto gj = gauss_jacobi(n, 0.0);
      const auto gl = map_rule(gauss_legendre(n), 0.0, 1.0);
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(gj.nodes[i] - gl.nodes[i]) < 1e-14);
        CHECK(std::abs(gj.weights[i] - gl.weights[i]) < 1e-14);
      }
    }
  }

  TEST_CASE("gauss_jacobi exactness for random polynomials") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (double alpha : {-0.9, -0.6, -0.2, 0.3, 0.6, 0.95, 1.6}) {
      for (int n = 1; n <= 25; ++n) {
        const auto r = gauss_jacobi(n, alpha);
        for (int i = 0; i < n; ++i) {
          CHECK(r.weights[i] > 0);
          CHECK(r.nodes[i] > 0);
          CHECK(r.nodes[i] < 1);
        }
        std::vector<double> c(2 * n);
        double exact = 0.0, scale = 0.0;
        for (int k = 0; k < 2 * n; ++k) {
          c[k] = coef(gen);
          exact += c[k] / (k + alpha + 1.0);
          scale += std::abs(c[k]) / (k + alpha + 1.0);
        }
        CHECK(std::abs(apply(r, c) - exact) <= 1e-13 * scale);
      }
    }
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(gauss_jacobi(3, -1.0), ParameterError);
    CHECK_THROWS_AS(gauss_jacobi(0, 0.5), ParameterError);
    CHECK_THROWS_AS(gauss_legendre(0), ParameterError);
  }
}
