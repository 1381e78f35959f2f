#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>

#include "hpfrac/assembly.hpp"

namespace hpfrac {

enum class SolveMode { direct, cg };

std::string solve_mode_name(SolveMode m);

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Factorized SPD matrix (direct) or preconditioned CG state; solves are safe to call concurrently.
class FactorHandle {
 public:
  Eigen::VectorXd solve(const Eigen::VectorXd& b, SolveStats* stats = nullptr) const;
  int dim() const;
  SolveMode mode() const;

  struct Impl;

 private:
  friend FactorHandle factor_spd(const SymSparse&, SolveMode, double);
  std::shared_ptr<Impl> impl_;
};

FactorHandle factor_spd(const SymSparse& A, SolveMode mode = SolveMode::direct, double tol = 1e-12);

/// Repeated factorizations of matrices sharing one sparsity pattern; the
/// symbolic analysis happens once. One instance per thread.
class ShiftedSolver {
 public:
  ShiftedSolver(const SymSparse& pattern, SolveMode mode = SolveMode::direct, double tol = 1e-12);
  ~ShiftedSolver();
  ShiftedSolver(const ShiftedSolver&) = delete;
  ShiftedSolver& operator=(const ShiftedSolver&) = delete;

  Eigen::VectorXd solve(const SymSparse& A, const Eigen::VectorXd& b, SolveStats* stats = nullptr);

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

struct EigSystem {
  Eigen::VectorXd mu;  // descending
  Eigen::MatrixXd V;   // columns: eigenvectors with V^T S V = I
  Eigen::VectorXd v0;  // trace values t^T v_i when a trace vector is supplied
  double cond_estimate = 0.0;
};

/// Solves mu S v = M v for symmetric positive definite S and M.
/// When `trace` is given the sign is fixed so that trace^T v_i >= 0;
/// otherwise the entry of largest magnitude is made positive.
EigSystem gen_eig_sym(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M,
                      const std::optional<Eigen::VectorXd>& trace = std::nullopt);

}  // namespace hpfrac
