#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "hpfrac/mesh.hpp"

namespace hpfrac {

/// One element-local shape function: sign * phi_ix(xi) * phi_iy(eta).
struct LocalDof {
  int global = -1;
  int ix = 0;
  int iy = 0;
  double sign = 1.0;
};

class HpSpace {
 public:
  HpSpace(std::shared_ptr<const Mesh2D> mesh, int q, bool dirichlet = true);
  HpSpace(std::shared_ptr<const Mesh2D> mesh, std::vector<std::array<int, 2>> degrees, bool dirichlet = true);

  const Mesh2D& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh2D>& mesh_ptr() const { return mesh_; }

  int dim() const { return dim_; }
  int num_free() const { return static_cast<int>(free_.size()); }
  int max_degree() const { return max_degree_; }
  bool has_dirichlet() const { return dirichlet_; }

  std::array<int, 2> element_degree(int e) const { return degrees_[e]; }
  const std::vector<LocalDof>& element_dofs(int e) const { return local_[e]; }

  /// Free-dof index of a global dof, or -1 when it is constrained.
  int free_index(int g) const { return free_index_[g]; }
  bool is_dirichlet(int g) const { return free_index_[g] < 0; }
  const std::vector<int>& free_dofs() const { return free_; }

  int num_vertex_dofs() const { return n_vertex_; }
  int vertex_dof(int v) const { return v; }
  /// Global dof of mode k (k >= 2) on a mesh edge, or -1 when the edge degree is below k.
  int edge_dof(int edge, int k) const;

 private:
  void build();

  std::shared_ptr<const Mesh2D> mesh_;
  std::vector<std::array<int, 2>> degrees_;
  bool dirichlet_ = true;
  int dim_ = 0;
  int n_vertex_ = 0;
  int max_degree_ = 0;
  std::vector<int> edge_degree_;
  std::vector<int> edge_offset_;
  std::vector<std::vector<LocalDof>> local_;
  std::vector<int> free_index_;
  std::vector<int> free_;
};

using Function2D = std::function<double(Point)>;

struct Field {
  std::shared_ptr<const HpSpace> space;
  Eigen::VectorXd coeffs;  // length dim, zero on constrained dofs
};

/// Lifts a vector over the free dofs to a full coefficient field.
Field field_from_free(std::shared_ptr<const HpSpace> space, const Eigen::VectorXd& free_values);
Eigen::VectorXd restrict_to_free(const Field& field);

struct Located {
  int element = -1;
  double xi = 0.0;
  double eta = 0.0;
};

/// Element containing p and its reference coordinates; throws LocationError when outside.
Located locate_point(const Mesh2D& mesh, Point p);

/// Bilinear map of element e at reference coordinates.
Point map_to_physical(const Mesh2D& mesh, int e, double xi, double eta);

double evaluate_in_element(const Field& field, int e, double xi, double eta);
std::vector<double> evaluate_field(const Field& field, const std::vector<Point>& points);

/// Integral of f * field using Gauss-Legendre with max(q)+4 points per direction.
double integrate_f_dot(const Field& field, const Function2D& f);

/// L2 projection of g onto the space (respecting its Dirichlet constraints).
Field l2_project(std::shared_ptr<const HpSpace> space, const Function2D& g);

}  // namespace hpfrac
