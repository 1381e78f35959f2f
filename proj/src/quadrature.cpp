#include "hpfrac/quadrature.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>

#include "hpfrac/errors.hpp"

namespace hpfrac {

QuadRule1D gauss_legendre(int n) {
  if (n < 1) throw ParameterError("gauss_legendre: n must be >= 1");
  QuadRule1D rule;
  rule.kind = QuadRule1D::Kind::legendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const QuadRule1D& gauss_legendre_cached(int n) {
  constexpr int kMax = 96;
  static const std::array<QuadRule1D, kMax + 1> table = [] {
    std::array<QuadRule1D, kMax + 1> t;
    for (int k = 1; k <= kMax; ++k) t[k] = gauss_legendre(k);
    return t;
  }();
  if (n < 1 || n > kMax) throw ParameterError("gauss_legendre_cached: n out of range");
  return table[n];
}

QuadRule1D gauss_jacobi(int n, double alpha) {
  if (n < 1) throw ParameterError("gauss_jacobi: n must be >= 1");
  if (!(alpha > -1.0)) throw ParameterError("gauss_jacobi: alpha must be > -1");
  // Jacobi weight (1-x)^a (1+x)^b on (-1,1) with a = 0, b = alpha, then t = (1+x)/2.
  const double a = 0.0, b = alpha, ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      const double t = 2.0 * k + ab;
      diag(k) = (b * b - a * a) / (t * (t + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    const double beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    off(k - 1) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw SolverError("gauss_jacobi: tridiagonal eigensolve failed");
  // Zeroth moment of (1+x)^alpha on (-1,1), mapped to (0,1): 1/(alpha+1).
  const double mu0 = 1.0 / (alpha + 1.0);
  QuadRule1D rule;
  rule.kind = QuadRule1D::Kind::jacobi;
  rule.alpha = alpha;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = eig.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (1.0 + eig.eigenvalues()(i));
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

QuadRule1D map_rule(const QuadRule1D& rule, double a, double b) {
  QuadRule1D out = rule;
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < rule.size(); ++i) {
    out.nodes[i] = mid + half * rule.nodes[i];
    out.weights[i] = half * rule.weights[i];
  }
  return out;
}

}  // namespace hpfrac
