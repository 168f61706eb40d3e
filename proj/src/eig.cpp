#include "qcanvas/eig.hpp"

namespace qcanvas {

EigSolution solve_generalized_eig(const Eigen::MatrixXd& h,
                                  const Eigen::MatrixXd& s) {
  if (h.rows() != h.cols() || s.rows() != s.cols() || h.rows() != s.rows())
    throw std::invalid_argument("generalized eigensolve: dimension mismatch");

  // Probe the Cholesky factorization first so a non-p.d. overlap is
  // reported as its own failure mode.
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite(
        "overlap matrix is not positive-definite (Cholesky pivot <= 0)");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      h, s, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("generalized eigensolve did not converge");

  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qcanvas
