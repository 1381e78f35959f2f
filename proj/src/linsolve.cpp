#include "hpfrac/linsolve.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <mutex>

#include "hpfrac/errors.hpp"

#ifdef HPFRAC_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#endif

namespace hpfrac {

namespace {

#ifdef HPFRAC_HAVE_CHOLMOD
using DirectSolver = Eigen::CholmodSupernodalLLT<SymSparse, Eigen::Lower>;
#else
using DirectSolver = Eigen::SimplicialLLT<SymSparse, Eigen::Lower, Eigen::AMDOrdering<int>>;
#endif
using CgSolver = Eigen::ConjugateGradient<SymSparse, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>>;

void silence(DirectSolver& s) {
#ifdef HPFRAC_HAVE_CHOLMOD
  s.cholmod().print = 0;
#else
  (void)s;
#endif
}

double rel_residual(const SymSparse& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double nb = b.norm();
  const double r = (A * x - b).norm();
  return nb > 0 ? r / nb : r;
}

}  // namespace

std::string solve_mode_name(SolveMode m) { return m == SolveMode::direct ? "direct" : "cg"; }

struct FactorHandle::Impl {
  SolveMode mode = SolveMode::direct;
  double tol = 1e-12;
  SymSparse A;
  DirectSolver direct;
  CgSolver cg;
  mutable std::mutex mtx;
};

Eigen::VectorXd FactorHandle::solve(const Eigen::VectorXd& b, SolveStats* stats) const {
  if (!impl_) throw SolverError("solve on an empty factor handle");
  if (b.size() != impl_->A.rows()) throw ParameterError("solve: right-hand side has wrong size");
  Eigen::VectorXd x;
  SolveStats st;
  if (impl_->mode == SolveMode::direct) {
    {
      std::lock_guard<std::mutex> lock(impl_->mtx);
      x = impl_->direct.solve(b);
      st.relative_residual = rel_residual(impl_->A, x, b);
      if (st.relative_residual > impl_->tol) {
        x += impl_->direct.solve(Eigen::VectorXd(b - impl_->A * x));
        st.relative_residual = rel_residual(impl_->A, x, b);
        st.iterations = 1;
      }
    }
  } else {
    x = impl_->cg.solve(b);
    if (impl_->cg.info() != Eigen::Success)
      throw SolverError("cg: no convergence after " + std::to_string(impl_->cg.iterations()) + " iterations");
    st.iterations = static_cast<int>(impl_->cg.iterations());
    st.relative_residual = rel_residual(impl_->A, x, b);
  }
  if (stats) *stats = st;
  return x;
}

int FactorHandle::dim() const { return impl_ ? static_cast<int>(impl_->A.rows()) : 0; }
SolveMode FactorHandle::mode() const { return impl_ ? impl_->mode : SolveMode::direct; }

FactorHandle factor_spd(const SymSparse& A, SolveMode mode, double tol) {
  if (A.rows() != A.cols()) throw ParameterError("factor_spd: matrix must be square");
  FactorHandle h;
  h.impl_ = std::make_shared<FactorHandle::Impl>();
  auto& im = *h.impl_;
  im.mode = mode;
  im.tol = tol;
  im.A = A;
  im.A.makeCompressed();
  if (mode == SolveMode::direct) {
    silence(im.direct);
    im.direct.compute(im.A);
    if (im.direct.info() != Eigen::Success) throw SolverError("direct: Cholesky factorization hit a non-positive pivot");
  } else {
    im.cg.setTolerance(tol);
    im.cg.setMaxIterations(std::max<Eigen::Index>(1000, 10 * A.rows()));
    im.cg.compute(im.A);
    if (im.cg.info() != Eigen::Success) throw SolverError("cg: preconditioner construction failed");
  }
  return h;
}

struct ShiftedSolver::Impl {
  SolveMode mode = SolveMode::direct;
  double tol = 1e-12;
  DirectSolver direct;
  CgSolver cg;
};

ShiftedSolver::ShiftedSolver(const SymSparse& pattern, SolveMode mode, double tol) : impl_(std::make_unique<Impl>()) {
  impl_->mode = mode;
  impl_->tol = tol;
  if (mode == SolveMode::direct) {
    silence(impl_->direct);
    impl_->direct.analyzePattern(pattern);
  }
}

ShiftedSolver::~ShiftedSolver() = default;

Eigen::VectorXd ShiftedSolver::solve(const SymSparse& A, const Eigen::VectorXd& b, SolveStats* stats) {
  SolveStats st;
  Eigen::VectorXd x;
  if (impl_->mode == SolveMode::direct) {
    impl_->direct.factorize(A);
    if (impl_->direct.info() != Eigen::Success) throw SolverError("direct: Cholesky factorization hit a non-positive pivot");
    x = impl_->direct.solve(b);
    st.relative_residual = rel_residual(A, x, b);
    if (st.relative_residual > impl_->tol) {
      x += impl_->direct.solve(Eigen::VectorXd(b - A * x));
      st.relative_residual = rel_residual(A, x, b);
      st.iterations = 1;
    }
  } else {
    impl_->cg.setTolerance(impl_->tol);
    impl_->cg.setMaxIterations(std::max<Eigen::Index>(1000, 10 * A.rows()));
    impl_->cg.compute(A);
    x = impl_->cg.solve(b);
    if (impl_->cg.info() != Eigen::Success)
      throw SolverError("cg: no convergence after " + std::to_string(impl_->cg.iterations()) + " iterations");
    st.iterations = static_cast<int>(impl_->cg.iterations());
    st.relative_residual = rel_residual(A, x, b);
  }
  if (stats) *stats = st;
  return x;
}

}  // namespace hpfrac
