#include "hpfrac/space.hpp"

#include <algorithm>
#include <cmath>

#include "hpfrac/errors.hpp"

namespace hpfrac {

namespace {
constexpr int kMaxDegree = 40;
}

HpSpace::HpSpace(std::shared_ptr<const Mesh2D> mesh, int q, bool dirichlet)
    : HpSpace(mesh, std::vector<std::array<int, 2>>(mesh ? mesh->num_elements() : 0, {q, q}), dirichlet) {}

HpSpace::HpSpace(std::shared_ptr<const Mesh2D> mesh, std::vector<std::array<int, 2>> degrees, bool dirichlet)
    : mesh_(std::move(mesh)), degrees_(std::move(degrees)), dirichlet_(dirichlet) {
  if (!mesh_) throw ParameterError("HpSpace: null mesh");
  if (static_cast<int>(degrees_.size()) != mesh_->num_elements())
    throw ParameterError("HpSpace: one degree pair per element required");
  for (const auto& d : degrees_)
    if (d[0] < 1 || d[1] < 1 || d[0] > kMaxDegree || d[1] > kMaxDegree)
      throw ParameterError("HpSpace: degrees must lie in [1, " + std::to_string(kMaxDegree) + "]");
  build();
}

void HpSpace::build() {
  const Mesh2D& m = *mesh_;
  n_vertex_ = m.num_vertices();
  max_degree_ = 0;
  for (const auto& d : degrees_) max_degree_ = std::max({max_degree_, d[0], d[1]});

  edge_degree_.assign(m.num_edges(), kMaxDegree + 1);
  for (int e = 0; e < m.num_elements(); ++e)
    for (int le = 0; le < 4; ++le) {
      const int deg = (le == 0 || le == 2) ? degrees_[e][0] : degrees_[e][1];
      int& ed = edge_degree_[m.element_edge(e, le)];
      ed = std::min(ed, deg);
    }
  edge_offset_.assign(m.num_edges() + 1, 0);
  int next = n_vertex_;
  for (int i = 0; i < m.num_edges(); ++i) {
    edge_offset_[i] = next;
    next += edge_degree_[i] - 1;
  }
  edge_offset_[m.num_edges()] = next;

  local_.assign(m.num_elements(), {});
  static constexpr int vx[4] = {0, 1, 1, 0};
  static constexpr int vy[4] = {0, 0, 1, 1};
  for (int e = 0; e < m.num_elements(); ++e) {
    const auto& el = m.elements()[e];
    auto& loc = local_[e];
    const int qx = degrees_[e][0], qy = degrees_[e][1];
    loc.reserve((qx + 1) * (qy + 1));
    for (int i = 0; i < 4; ++i) loc.push_back({el.v[i], vx[i], vy[i], 1.0});
    for (int le = 0; le < 4; ++le) {
      const int ge = m.element_edge(e, le);
      const int a = el.v[kLocalEdgeVertex[le][0]], b = el.v[kLocalEdgeVertex[le][1]];
      const bool same = a < b;
      for (int k = 2; k <= edge_degree_[ge]; ++k) {
        const double sign = (same || k % 2 == 0) ? 1.0 : -1.0;
        const int g = edge_offset_[ge] + (k - 2);
        switch (le) {
          case 0: loc.push_back({g, k, 0, sign}); break;
          case 1: loc.push_back({g, 1, k, sign}); break;
          case 2: loc.push_back({g, k, 1, sign}); break;
          case 3: loc.push_back({g, 0, k, sign}); break;
        }
      }
    }
    for (int j = 2; j <= qy; ++j)
      for (int i = 2; i <= qx; ++i) loc.push_back({next++, i, j, 1.0});
  }
  dim_ = next;

  std::vector<char> constrained(dim_, 0);
  if (dirichlet_) {
    for (int ed : m.boundary_edges()) {
      constrained[m.edges()[ed].a] = 1;
      constrained[m.edges()[ed].b] = 1;
      for (int k = 2; k <= edge_degree_[ed]; ++k) constrained[edge_offset_[ed] + k - 2] = 1;
    }
  }
  free_index_.assign(dim_, -1);
  free_.clear();
  for (int g = 0; g < dim_; ++g)
    if (!constrained[g]) {
      free_index_[g] = static_cast<int>(free_.size());
      free_.push_back(g);
    }
}

int HpSpace::edge_dof(int edge, int k) const {
  if (k < 2 || k > edge_degree_[edge]) return -1;
  return edge_offset_[edge] + k - 2;
}

Field field_from_free(std::shared_ptr<const HpSpace> space, const Eigen::VectorXd& free_values) {
  if (free_values.size() != space->num_free()) throw ParameterError("field_from_free: size mismatch");
  Field f;
  f.coeffs = Eigen::VectorXd::Zero(space->dim());
  const auto& fr = space->free_dofs();
  for (int i = 0; i < space->num_free(); ++i) f.coeffs[fr[i]] = free_values[i];
  f.space = std::move(space);
  return f;
}

Eigen::VectorXd restrict_to_free(const Field& field) {
  const auto& fr = field.space->free_dofs();
  Eigen::VectorXd out(fr.size());
  for (size_t i = 0; i < fr.size(); ++i) out[i] = field.coeffs[fr[i]];
  return out;
}

}  // namespace hpfrac
