#pragma once

#include <memory>
#include <vector>

#include "hpfrac/mesh.hpp"
#include "hpfrac/space.hpp"

namespace hpfrac {

// sine:           u = sin(pi x) sin(pi y),                  f = (2 pi^2 eps^2 + 1) u
// boundary_layer: u = g(x) g(y) with -eps^2 g'' + g = 1,    f = g(x) + g(y) - g(x) g(y)
// Both are posed on the unit square with homogeneous Dirichlet data.
enum class MmsSolution { sine, boundary_layer };

struct MmsRow {
  int q = 0;
  int n_dof = 0;
  double l2_error = 0.0;
  double h1_error = 0.0;  // H1 seminorm of the error
};

struct MmsReport {
  double eps = 0.0;
  MmsSolution kind = MmsSolution::sine;
  std::vector<MmsRow> rows;
};

/// Solves -eps^2 Lap u + u = f for each q on the given mesh and measures the error against the exact solution.
MmsReport mms_check(double eps, const std::vector<int>& qs, std::shared_ptr<const Mesh2D> mesh,
                    MmsSolution kind = MmsSolution::sine);

/// L2 norm of (field - u) and H1 seminorm of the difference using composite quadrature graded toward element edges.
std::pair<double, double> field_errors(const Field& field, const Function2D& u,
                                       const std::function<Point(Point)>& grad_u, int levels = 24);

}  // namespace hpfrac
