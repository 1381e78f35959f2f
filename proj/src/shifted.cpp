#include "hpfrac/shifted.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <omp.h>

#include "hpfrac/errors.hpp"

namespace hpfrac {

MeshCase parse_case(const std::string& s) {
  if (s == "A" || s == "a") return MeshCase::A;
  if (s == "B" || s == "b") return MeshCase::B;
  throw ParameterError("unknown case '" + s + "' (expected A or B)");
}

std::string case_name(MeshCase c) { return c == MeshCase::A ? "A" : "B"; }

namespace {

struct Resolved {
  int q, L, n;
  double kappa0;
};

Resolved resolve(const PolygonDomain& domain, int p, const HpParams& prm) {
  Resolved r{prm.q.value_or(p), prm.L.value_or(p), prm.n.value_or(p),
             prm.kappa0.value_or(0.25 * domain.shortest_edge())};
  if (r.q < 1) throw ParameterError("polynomial degree q must be >= 1");
  return r;
}

ExecPolicy effective(ExecPolicy policy) {
  return policy == ExecPolicy::parallel && omp_get_max_threads() > 1 ? ExecPolicy::parallel : ExecPolicy::serial;
}

template <class Body>
void run_indexed(int count, ExecPolicy policy, Body&& body, const char* what) {
  if (effective(policy) == ExecPolicy::serial) {
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (const std::exception& e) {
        throw SolverError(std::string(what) + " " + std::to_string(i) + ": " + e.what());
      }
    }
    return;
  }
  std::exception_ptr err = nullptr;
  int err_index = -1;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(hpfrac_shift_error)
      if (!err || i < err_index) {
        err = std::current_exception();
        err_index = i;
      }
    }
  }
  if (err) {
    try {
      std::rethrow_exception(err);
    } catch (const std::exception& e) {
      throw SolverError(std::string(what) + " " + std::to_string(err_index) + ": " + e.what());
    }
  }
}

void finish(ShiftSolution& out, const std::shared_ptr<const HpSpace>& space, const Eigen::VectorXd& x,
            const Eigen::VectorXd& F, bool keep) {
  out.functional = F.dot(x);
  out.n_dof = space->num_free();
  if (keep) out.field = field_from_free(space, x);
}

}  // namespace

ShiftFamily solve_shift_family(const PolygonDomain& domain, const Function2D& f, const std::vector<double>& mus,
                               const std::vector<double>& rhs_scales, MeshCase mesh_case, int p,
                               const HpParams& prm) {
  if (mus.size() != rhs_scales.size()) throw ParameterError("solve_shift_family: size mismatch");
  const Resolved r = resolve(domain, p, prm);
  const int count = static_cast<int>(mus.size());
  ShiftFamily fam;
  fam.solves.resize(count);
  for (int i = 0; i < count; ++i) {
    if (!(mus[i] >= 0)) throw ParameterError("solve_shift_family: negative scale");
    fam.solves[i].mu = mus[i];
    fam.solves[i].rhs_scale = rhs_scales[i];
  }

  if (mesh_case == MeshCase::B) {
    auto mesh = std::make_shared<const Mesh2D>(build_geometric_bl_mesh(domain, r.L, r.n, prm.sigma_x));
    auto space = std::make_shared<const HpSpace>(mesh, r.q);
    auto ops = std::make_shared<const Operators>(assemble_operators(*space, {}, prm.policy));
    const Eigen::VectorXd F = assemble_load(*space, f, prm.policy);
    fam.common_space = space;
    fam.common_ops = ops;
    if (effective(prm.policy) == ExecPolicy::serial) {
      ShiftedSolver solver(ops->mass, prm.solve_mode, prm.solve_tol);
      run_indexed(count, ExecPolicy::serial, [&](int i) {
        ShiftSolution& s = fam.solves[i];
        const Eigen::VectorXd x = solver.solve(combine(*ops, s.mu), s.rhs_scale * F, &s.stats);
        finish(s, space, x, F, prm.keep_fields);
      }, "shift");
    } else {
      std::exception_ptr err = nullptr;
      int err_index = -1;
#pragma omp parallel
      {
        std::unique_ptr<ShiftedSolver> solver;
        try {
          solver = std::make_unique<ShiftedSolver>(ops->mass, prm.solve_mode, prm.solve_tol);
        } catch (...) {
#pragma omp critical(hpfrac_shift_error)
          if (!err) err = std::current_exception();
        }
#pragma omp for schedule(dynamic, 1)
        for (int i = 0; i < count; ++i) {
          if (!solver) continue;
          try {
            ShiftSolution& s = fam.solves[i];
            const Eigen::VectorXd x = solver->solve(combine(*ops, s.mu), s.rhs_scale * F, &s.stats);
            finish(s, space, x, F, prm.keep_fields);
          } catch (...) {
#pragma omp critical(hpfrac_shift_error)
            if (!err || i < err_index) {
              err = std::current_exception();
              err_index = i;
            }
          }
        }
      }
      if (err) {
        try {
          std::rethrow_exception(err);
        } catch (const std::exception& e) {
          throw SolverError("shift " + std::to_string(err_index) + ": " + e.what());
        }
      }
    }
  } else {
    // Group scales sharing a strip width so each minimal mesh is built once.
    std::map<double, std::vector<int>> groups;
    for (int i = 0; i < count; ++i) {
      const double w = minimal_strip_width(r.L, r.q, prm.lambda, std::sqrt(mus[i]), r.kappa0, prm.sigma_x);
      fam.solves[i].strip_width = w;
      groups[w].push_back(i);
    }
    std::vector<std::pair<double, std::vector<int>>> list(groups.begin(), groups.end());
    validate_domain(domain);
    if (r.kappa0 > 0.5 * domain.shortest_edge() + 1e-15)
      throw ParameterError("minimal mesh: kappa0 must not exceed half the shortest domain edge");
    run_indexed(static_cast<int>(list.size()), prm.policy, [&](int g) {
      const auto& [w, members] = list[g];
      auto mesh = std::make_shared<const Mesh2D>(build_minimal_mesh_width(domain, r.L, w, prm.sigma_x));
      auto space = std::make_shared<const HpSpace>(mesh, r.q);
      const Operators ops = assemble_operators(*space, {}, ExecPolicy::serial);
      const Eigen::VectorXd F = assemble_load(*space, f, ExecPolicy::serial);
      ShiftedSolver solver(ops.mass, prm.solve_mode, prm.solve_tol);
      for (int i : members) {
        ShiftSolution& s = fam.solves[i];
        const Eigen::VectorXd x = solver.solve(combine(ops, s.mu), s.rhs_scale * F, &s.stats);
        finish(s, space, x, F, prm.keep_fields);
      }
    }, "mesh group");
  }
  for (const auto& s : fam.solves) fam.n_dof_total += s.n_dof;
  return fam;
}

double shifted_energy(const ShiftFamily& family) {
  double total = 0.0;
  std::map<const HpSpace*, std::shared_ptr<const Operators>> cache;
  for (const auto& s : family.solves) {
    if (!s.field) throw ParameterError("shifted_energy: fields were not kept");
    const Field& fld = *s.field;
    std::shared_ptr<const Operators> ops;
    if (family.common_ops && fld.space == family.common_space) {
      ops = family.common_ops;
    } else {
      auto it = cache.find(fld.space.get());
      if (it == cache.end())
        it = cache.emplace(fld.space.get(),
                           std::make_shared<const Operators>(assemble_operators(*fld.space, {}, ExecPolicy::serial)))
                 .first;
      ops = it->second;
    }
    const Eigen::VectorXd x = restrict_to_free(fld);
    total += s.mu * x.dot(ops->stiffness * x) + x.dot(ops->mass * x);
  }
  return total;
}

}  // namespace hpfrac
