#include "hpfrac/sinc.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <quadmath.h>
#include <sstream>

#include "hpfrac/errors.hpp"
#include "hpfrac/extension.hpp"

namespace hpfrac {

std::string sinc_variant_name(SincVariant v) { return v == SincVariant::practical ? "practical" : "symmetric"; }

SincVariant parse_sinc_variant(const std::string& s) {
  if (s == "practical") return SincVariant::practical;
  if (s == "symmetric") return SincVariant::symmetric;
  throw ParameterError("unknown sinc variant '" + s + "'");
}

double SincRule::c_B() const { return std::sin(std::numbers::pi * s) / std::numbers::pi; }

namespace {

void check_order(double s) {
  if (!(s > 0 && s < 1)) throw ParameterError("sinc rule: s must lie in (0,1)");
}

void fill_nodes(SincRule& r) {
  const double cb = r.c_B();
  for (int l = -r.K1; l <= r.K2; ++l) {
    const double y = l * r.k;
    r.nodes.push_back(y);
    r.weights.push_back(cb * r.k * std::exp(-r.s * y));
    r.shifts.push_back(std::exp(-y));
  }
}

}  // namespace

SincRule build_sinc_rule(double s, double k) {
  check_order(s);
  if (!(k > 0)) throw ParameterError("sinc rule: k must be positive");
  SincRule r;
  r.s = s;
  r.k = k;
  r.variant = SincVariant::practical;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  r.K1 = static_cast<int>(std::ceil(pi2 / (2.0 * (1.0 - s) * k * k)));
  r.K2 = static_cast<int>(std::ceil(pi2 / (s * k * k)));
  fill_nodes(r);
  return r;
}

SincRule build_symmetric_sinc_rule(double s, int K) {
  check_order(s);
  if (K < 1) throw ParameterError("sinc rule: K must be >= 1");
  SincRule r;
  r.s = s;
  r.k = 1.0 / std::sqrt(static_cast<double>(K));
  r.variant = SincVariant::symmetric;
  r.K1 = K;
  r.K2 = K;
  fill_nodes(r);
  return r;
}

double scalar_apply(const SincRule& rule, double lambda) {
  if (!(lambda > 0)) throw ParameterError("scalar_apply: lambda must be positive");
  long double acc = 0.0L;
  for (int l = 0; l < rule.num_nodes(); ++l)
    acc += static_cast<long double>(rule.weights[l]) / (1.0L + static_cast<long double>(rule.shifts[l]) * lambda);
  return static_cast<double>(acc);
}

long double scalar_apply_error_extended(const SincRule& rule, double lambda) {
  if (!(lambda > 0)) throw ParameterError("scalar_apply: lambda must be positive");
  const __float128 pi = M_PIq;
  const __float128 s = rule.s, k = rule.k, lam = lambda;
  const __float128 cb = sinq(pi * s) / pi;
  __float128 sum = 0, comp = 0;
  for (int l = -rule.K1; l <= rule.K2; ++l) {
    const __float128 y = l * k;
    const __float128 term = cb * k * expq(-s * y) / (1 + expq(-y) * lam) - comp;
    const __float128 t = sum + term;
    comp = (t - sum) - term;
    sum = t;
  }
  const __float128 exact = powq(lam, -s);
  return static_cast<long double>(fabsq(sum - exact) / exact);
}

Eigen::VectorXd apply_to_matrix(const SincRule& rule, const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  for (int l = 0; l < rule.num_nodes(); ++l) {
    Eigen::LLT<Eigen::MatrixXd> llt(I + rule.shifts[l] * A);
    if (llt.info() != Eigen::Success) throw DefinitenessError("apply_to_matrix: shifted matrix not SPD");
    out += rule.weights[l] * llt.solve(b);
  }
  return out;
}

double SincSolution::stored_functional() const {
  double s = 0.0;
  for (const auto& n : nodes) s += n.weight * n.functional;
  return d_s * s;
}

SincSolution solve_sinc(const PolygonDomain& domain, const Function2D& f, double s, int p, MeshCase mesh_case,
                        const SincParams& params) {
  if (p < 1) throw ParameterError("solve_sinc: p must be >= 1");
  check_order(s);
  SincSolution sol;
  const double k = params.k.value_or(default_sinc_step(p));
  if (params.variant == SincVariant::practical) {
    sol.rule = build_sinc_rule(s, k);
  } else {
    sol.rule = build_symmetric_sinc_rule(s, params.K.value_or(static_cast<int>(std::ceil(1.0 / (k * k)))));
  }
  sol.d_s = extension_constant(s);
  sol.mesh_case = mesh_case;
  const SincRule& rule = sol.rule;
  if (mesh_case == MeshCase::B) {
    const int L = params.hp.L.value_or(p);
    const int K = std::max(rule.K1, rule.K2);
    const double lhs = std::pow(params.hp.sigma_x, L);
    const double bound = params.hp.c1 * std::exp(-0.5 * K);
    if (lhs > bound) {
      std::ostringstream os;
      os << "scale resolution violated: sigma^L = " << lhs << " > c1*exp(-K/2) = " << bound;
      sol.warnings.push_back(os.str());
    }
  }
  std::vector<double> ones(rule.num_nodes(), 1.0);
  sol.family = solve_shift_family(domain, f, rule.shifts, ones, mesh_case, p, params.hp);
  sol.nodes.resize(rule.num_nodes());
  for (int l = 0; l < rule.num_nodes(); ++l) {
    auto& n = sol.nodes[l];
    const auto& sh = sol.family.solves[l];
    n.y = rule.nodes[l];
    n.weight = rule.weights[l];
    n.eps2 = rule.shifts[l];
    n.n_dof = sh.n_dof;
    n.functional = sh.functional;
    n.w = sh.field;
    n.stats = sh.stats;
  }
  sol.n_dof_total = sol.family.n_dof_total;
  return sol;
}

double sinc_functional(const SincSolution& sol, const Function2D& f) {
  double s = 0.0;
  for (const auto& n : sol.nodes) {
    if (!n.w) throw ParameterError("sinc_functional: fields were not kept");
    s += n.weight * integrate_f_dot(*n.w, f);
  }
  return s;
}

}  // namespace hpfrac
