#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "hpfrac/errors.hpp"
#include "hpfrac/linsolve.hpp"

namespace hpfrac {

// Both matrices are first scaled by D = diag(S)^{-1/2}.  With S~ = L L^T and
// M~ = R R^T the pencil reduces to the one-sided Jacobi SVD of B = L^{-1} R:
// mu = sigma^2 and v = D L^{-T} u.
EigSystem gen_eig_sym(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M, const std::optional<Eigen::VectorXd>& trace) {
  const Eigen::Index n = S.rows();
  if (S.cols() != n || M.rows() != n || M.cols() != n) throw ParameterError("gen_eig_sym: dimension mismatch");
  if (trace && trace->size() != n) throw ParameterError("gen_eig_sym: trace vector has wrong size");
  if (n == 0) return {};
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(S(i, i) > 0)) throw DefinitenessError("gen_eig_sym: S has a non-positive diagonal entry");

  const Eigen::VectorXd d = S.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd Ss = d.asDiagonal() * S * d.asDiagonal();
  const Eigen::MatrixXd Ms = d.asDiagonal() * M * d.asDiagonal();

  Eigen::LLT<Eigen::MatrixXd> lls(Ss);
  if (lls.info() != Eigen::Success) throw DefinitenessError("gen_eig_sym: Cholesky factorization of S failed");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(Ms(i, i) > 0)) throw DefinitenessError("gen_eig_sym: M has a non-positive diagonal entry");
  const Eigen::VectorXd dm = Ms.diagonal().cwiseSqrt();
  const Eigen::MatrixXd Mss = dm.cwiseInverse().asDiagonal() * Ms * dm.cwiseInverse().asDiagonal();
  Eigen::LLT<Eigen::MatrixXd> llm(Mss);
  if (llm.info() != Eigen::Success) throw DefinitenessError("gen_eig_sym: Cholesky factorization of M failed");
  const Eigen::MatrixXd R = dm.asDiagonal() * Eigen::MatrixXd(llm.matrixL());

  const Eigen::MatrixXd L = lls.matrixL();
  const Eigen::MatrixXd B = L.triangularView<Eigen::Lower>().solve(R);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullU);
  const Eigen::VectorXd sig = svd.singularValues();
  const Eigen::MatrixXd U = svd.matrixU();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sig[a] > sig[b]; });

  const Eigen::MatrixXd W = L.transpose().triangularView<Eigen::Upper>().solve(U);
  EigSystem out;
  out.mu.resize(n);
  out.V.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index j = order[k];
    out.mu[k] = sig[j] * sig[j];
    Eigen::VectorXd v = d.asDiagonal() * W.col(j);
    double ref = 0.0;
    if (trace) {
      ref = trace->dot(v);
    } else {
      Eigen::Index imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      ref = v[imax];
    }
    if (ref < 0) v = -v;
    out.V.col(k) = v;
  }
  if (trace) out.v0 = out.V.transpose() * *trace;
  const Eigen::VectorXd ld = L.diagonal();
  out.cond_estimate = std::pow(ld.maxCoeff() / ld.minCoeff(), 2);
  for (Eigen::Index k = 0; k < n; ++k)
    if (!(out.mu[k] > 0)) throw DefinitenessError("gen_eig_sym: non-positive eigenvalue");
  return out;
}

}  // namespace hpfrac
