#include "hpfrac/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hpfrac/basis.hpp"
#include "hpfrac/errors.hpp"
#include "hpfrac/quadrature.hpp"

namespace hpfrac {

double extension_constant(double s) {
  if (!(s > 0 && s < 1)) throw ParameterError("extension constant: s must lie in (0,1)");
  return std::pow(2.0, 1.0 - 2.0 * s) * std::tgamma(1.0 - s) / std::tgamma(s);
}

int YExtensionSetup::dim() const {
  int d = 0;
  for (int r : degrees) d += r;
  return d;
}

YExtensionSetup make_y_setup(double s, double Y, int M, double sigma, const DegreeVector& degrees) {
  if (!(s > 0 && s < 1)) throw ParameterError("y setup: s must lie in (0,1)");
  if (static_cast<int>(degrees.size()) != M) throw ParameterError("y setup: one degree per y-element required");
  for (int r : degrees)
    if (r < 1 || r > 40) throw ParameterError("y setup: degrees must lie in [1,40]");
  YExtensionSetup st;
  st.s = s;
  st.alpha = 1.0 - 2.0 * s;
  st.d_s = extension_constant(s);
  st.Y = Y;
  st.sigma = sigma;
  st.mesh = build_1d_geo_mesh(Y, M, sigma);
  st.degrees = degrees;
  return st;
}

YExtensionSetup make_y_setup(double s, int p, const YSteering& steer) {
  if (p < 1) throw ParameterError("y setup: p must be >= 1");
  if (!(s > 0 && s < 1)) throw ParameterError("y setup: s must lie in (0,1)");
  const double Y = steer.Y.value_or(steer.y_factor * p);
  const int M = steer.M.value_or(std::max(1, static_cast<int>(std::lround(steer.m_factor * p / s))));
  const DegreeVector deg = steer.slope ? linear_degree_vector(M, *steer.slope) : uniform_degree_vector(M, steer.r.value_or(p));
  return make_y_setup(s, Y, M, steer.sigma, deg);
}

namespace {

struct YElementDofs {
  std::vector<int> global;  // -1 for the node at Y
  std::vector<int> shape;   // 1D shape index (0, 1, k)
};

std::vector<YElementDofs> y_dof_map(const YExtensionSetup& st) {
  const int M = st.mesh.num_elements();
  std::vector<YElementDofs> map(M);
  int next = M;
  for (int m = 0; m < M; ++m) {
    auto& d = map[m];
    d.global.push_back(m);
    d.shape.push_back(0);
    d.global.push_back(m + 1 < M ? m + 1 : -1);
    d.shape.push_back(1);
    for (int k = 2; k <= st.degrees[m]; ++k) {
      d.global.push_back(next++);
      d.shape.push_back(k);
    }
  }
  return map;
}

}  // namespace

YMatrices assemble_y_matrices(const YExtensionSetup& st) {
  const int n = st.dim();
  const int M = st.mesh.num_elements();
  YMatrices out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  const auto map = y_dof_map(st);
  for (int m = 0; m < M; ++m) {
    const double a = st.mesh.breakpoints[m], b = st.mesh.breakpoints[m + 1], h = b - a;
    const int r = st.degrees[m];
    std::vector<double> xi, wt;
    if (m == 0) {
      const QuadRule1D gj = gauss_jacobi(r + 2, st.alpha);
      const double scale = std::pow(h, 1.0 + st.alpha);
      for (int i = 0; i < gj.size(); ++i) {
        xi.push_back(2.0 * gj.nodes[i] - 1.0);
        wt.push_back(scale * gj.weights[i]);
      }
    } else {
      const QuadRule1D& gl = gauss_legendre_cached(std::min(r + 20, 96));
      for (int i = 0; i < gl.size(); ++i) {
        const double y = a + 0.5 * h * (gl.nodes[i] + 1.0);
        xi.push_back(gl.nodes[i]);
        wt.push_back(0.5 * h * gl.weights[i] * std::pow(y, st.alpha));
      }
    }
    const ShapeTable tab = tabulate_shape_1d(r, xi);
    const auto& dm = map[m];
    const int nl = static_cast<int>(dm.global.size());
    for (int i = 0; i < nl; ++i) {
      const int gi = dm.global[i];
      if (gi < 0) continue;
      for (int j = i; j < nl; ++j) {
        const int gj = dm.global[j];
        if (gj < 0) continue;
        double s = 0.0, mm = 0.0;
        for (size_t p = 0; p < xi.size(); ++p) {
          s += wt[p] * tab.d(p, dm.shape[i]) * tab.d(p, dm.shape[j]);
          mm += wt[p] * tab.v(p, dm.shape[i]) * tab.v(p, dm.shape[j]);
        }
        s *= 4.0 / (h * h);
        out.S(gi, gj) += s;
        out.M(gi, gj) += mm;
        if (gi != gj) {
          out.S(gj, gi) += s;
          out.M(gj, gi) += mm;
        }
      }
    }
  }
  return out;
}

namespace {

double eval_y(const YExtensionSetup& st, const Eigen::VectorXd& coeffs, double y, bool deriv) {
  const auto& bp = st.mesh.breakpoints;
  if (coeffs.size() != st.dim()) throw ParameterError("evaluate_y: coefficient vector has wrong size");
  if (y < 0 || y > st.Y * (1 + 1e-14)) throw ParameterError("evaluate_y: y outside (0, Y)");
  int m = static_cast<int>(std::upper_bound(bp.begin(), bp.end(), y) - bp.begin()) - 1;
  m = std::clamp(m, 0, st.mesh.num_elements() - 1);
  const double a = bp[m], b = bp[m + 1];
  const double xi = std::clamp(2.0 * (y - a) / (b - a) - 1.0, -1.0, 1.0);
  double v[64], d[64];
  shape_1d(st.degrees[m], xi, v, d);
  const double* w = deriv ? d : v;
  const double scale = deriv ? 2.0 / (b - a) : 1.0;
  const auto map = y_dof_map(st);
  double s = 0.0;
  for (size_t i = 0; i < map[m].global.size(); ++i)
    if (map[m].global[i] >= 0) s += coeffs[map[m].global[i]] * w[map[m].shape[i]];
  return scale * s;
}

}  // namespace

double evaluate_y(const YExtensionSetup& st, const Eigen::VectorXd& coeffs, double y) {
  return eval_y(st, coeffs, y, false);
}

double evaluate_y_derivative(const YExtensionSetup& st, const Eigen::VectorXd& coeffs, double y) {
  return eval_y(st, coeffs, y, true);
}

Eigen::VectorXd y_trace_vector(const YExtensionSetup& st) {
  Eigen::VectorXd t = Eigen::VectorXd::Zero(st.dim());
  t[0] = 1.0;
  return t;
}

DiagSystem diagonalize(const YExtensionSetup& setup) {
  const YMatrices ym = assemble_y_matrices(setup);
  DiagSystem ds;
  static_cast<EigSystem&>(ds) = gen_eig_sym(ym.S, ym.M, y_trace_vector(setup));
  ds.setup = setup;
  return ds;
}

double ExtensionSolution::stored_functional() const {
  double s = 0.0;
  for (const auto& m : modes) s += m.v0 * m.functional;
  return diag.setup.d_s * s;
}

ExtensionSolution solve_extension(const PolygonDomain& domain, const Function2D& f, double s, int p,
                                  MeshCase mesh_case, const ExtensionParams& params) {
  if (p < 1) throw ParameterError("solve_extension: p must be >= 1");
  ExtensionSolution sol;
  sol.mesh_case = mesh_case;
  sol.diag = diagonalize(make_y_setup(s, p, params.y));
  const auto& dg = sol.diag;
  if (dg.cond_estimate > params.cond_threshold) {
    std::ostringstream os;
    os << "y-eigenproblem condition estimate " << dg.cond_estimate << " exceeds " << params.cond_threshold;
    sol.warnings.push_back(os.str());
  }
  const int nm = static_cast<int>(dg.mu.size());
  std::vector<double> mus(nm), rhs(nm);
  for (int i = 0; i < nm; ++i) {
    mus[i] = dg.mu[i];
    rhs[i] = dg.setup.d_s * dg.v0[i];
  }
  if (mesh_case == MeshCase::B) {
    const int L = params.hp.L.value_or(p);
    const double lhs = std::pow(params.hp.sigma_x, L);
    const double rhs_bound = params.hp.c1 * std::sqrt(dg.mu.minCoeff());
    if (lhs > rhs_bound) {
      std::ostringstream os;
      os << "scale resolution violated: sigma^L = " << lhs << " > c1*min sqrt(mu) = " << rhs_bound;
      sol.warnings.push_back(os.str());
    }
  }
  sol.family = solve_shift_family(domain, f, mus, rhs, mesh_case, p, params.hp);
  sol.modes.resize(nm);
  for (int i = 0; i < nm; ++i) {
    auto& m = sol.modes[i];
    const auto& sh = sol.family.solves[i];
    m.mu = mus[i];
    m.v0 = dg.v0[i];
    m.n_dof = sh.n_dof;
    m.functional = sh.functional;
    m.U = sh.field;
    m.stats = sh.stats;
  }
  sol.n_dof_total = sol.family.n_dof_total;
  return sol;
}

double trace_functional(const ExtensionSolution& sol, const Function2D& f) {
  double s = 0.0;
  for (const auto& m : sol.modes) {
    if (!m.U) throw ParameterError("trace_functional: fields were not kept");
    s += m.v0 * integrate_f_dot(*m.U, f);
  }
  return s;
}

double energy_pythagoras(const ExtensionSolution& sol) { return shifted_energy(sol.family); }

}  // namespace hpfrac
