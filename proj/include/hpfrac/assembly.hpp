#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>

#include "hpfrac/space.hpp"

namespace hpfrac {

/// Symmetric sparse matrix over the free dofs, both triangles stored.
using SymSparse = Eigen::SparseMatrix<double>;

enum class ExecPolicy { serial, parallel };

// Empty callbacks stand for A = I and c = 1.
struct Coefficients {
  std::function<Eigen::Matrix2d(Point)> A;
  std::function<double(Point)> c;
};

struct RdSystem {
  SymSparse matrix;
  Eigen::VectorXd load;
};

struct Operators {
  SymSparse stiffness;
  SymSparse mass;
};

/// mu * (A grad u, grad v) + (c u, v) and (f, v) over the free dofs.
RdSystem assemble_rd(const HpSpace& space, double mu, const Coefficients& coef, const Function2D& f,
                     ExecPolicy policy = ExecPolicy::parallel);

Operators assemble_operators(const HpSpace& space, const Coefficients& coef = {},
                             ExecPolicy policy = ExecPolicy::parallel);

Eigen::VectorXd assemble_load(const HpSpace& space, const Function2D& f, ExecPolicy policy = ExecPolicy::parallel);

/// mu * K + M on the common sparsity pattern.
SymSparse combine(const Operators& ops, double mu);

/// Number of Gauss points per direction used for element matrices of degree q.
inline int assembly_points(int q) { return q + 2; }
inline int functional_points(int q) { return q + 4; }

}  // namespace hpfrac
