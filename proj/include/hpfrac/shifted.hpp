#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hpfrac/assembly.hpp"
#include "hpfrac/linsolve.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/space.hpp"

namespace hpfrac {

// Case A: one minimal mesh per scale.  Case B: one common geometric mesh.
enum class MeshCase { A, B };

MeshCase parse_case(const std::string& s);
std::string case_name(MeshCase c);

struct HpParams {
  double sigma_x = 0.25;
  std::optional<int> q;  // defaults to p
  std::optional<int> L;  // defaults to p
  std::optional<int> n;  // defaults to p
  double lambda = 1.0;
  std::optional<double> kappa0;  // defaults to a quarter of the shortest domain edge
  double c1 = 1.0;
  SolveMode solve_mode = SolveMode::direct;
  double solve_tol = 1e-12;
  ExecPolicy policy = ExecPolicy::parallel;
  bool keep_fields = true;
};

struct ShiftSolution {
  double mu = 0.0;
  double rhs_scale = 0.0;
  int n_dof = 0;
  double functional = 0.0;  // load vector applied to the discrete solution
  double strip_width = 0.0;
  std::optional<Field> field;
  SolveStats stats;
};

struct ShiftFamily {
  std::vector<ShiftSolution> solves;
  std::shared_ptr<const HpSpace> common_space;
  std::shared_ptr<const Operators> common_ops;
  long long n_dof_total = 0;
};

/// Solves (mu_i K + M) u_i = rhs_scale_i F for every i, in Case A or B.
ShiftFamily solve_shift_family(const PolygonDomain& domain, const Function2D& f, const std::vector<double>& mus,
                               const std::vector<double>& rhs_scales, MeshCase mesh_case, int p,
                               const HpParams& params);

/// Sum of mu_i a(u_i, u_i) + ||u_i||^2 over the stored fields.
double shifted_energy(const ShiftFamily& family);

}  // namespace hpfrac
