#include <cmath>

#include "hpfrac/errors.hpp"
#include "hpfrac/mesh.hpp"

namespace hpfrac {

Mesh1D build_1d_geo_mesh(double Y, int M, double sigma) {
  if (!(Y > 0)) throw ParameterError("build_1d_geo_mesh: Y must be positive");
  if (M < 1) throw ParameterError("build_1d_geo_mesh: M must be >= 1");
  if (!(sigma > 0 && sigma < 1)) throw ParameterError("build_1d_geo_mesh: sigma must lie in (0,1)");
  Mesh1D mesh;
  mesh.breakpoints.resize(M + 1);
  mesh.breakpoints[0] = 0.0;
  for (int i = 1; i <= M; ++i) mesh.breakpoints[i] = Y * std::pow(sigma, M - i);
  return mesh;
}

DegreeVector linear_degree_vector(int M, double slope) {
  if (M < 1) throw ParameterError("linear_degree_vector: M must be >= 1");
  if (!(slope > 0)) throw ParameterError("linear_degree_vector: slope must be positive");
  DegreeVector r(M);
  for (int i = 1; i <= M; ++i) r[i - 1] = 1 + static_cast<int>(std::ceil(slope * (i - 1) - 1e-12));
  return r;
}

DegreeVector uniform_degree_vector(int M, int r) {
  if (M < 1 || r < 1) throw ParameterError("uniform_degree_vector: M and r must be >= 1");
  return DegreeVector(M, r);
}

}  // namespace hpfrac
