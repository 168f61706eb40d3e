#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace qcanvas {

/// Thrown when the overlap matrix is not positive-definite (a parameter
/// misconfiguration, distinct from generic solve failures).
struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigSolution {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXd coefficients;   // columns c_i, S-orthonormal: C^T S C = I
};

/// Solves H C = S C diag(eps) for symmetric H and s.p.d. S via Cholesky
/// reduction to a standard symmetric problem.
EigSolution solve_generalized_eig(const Eigen::MatrixXd& h,
                                  const Eigen::MatrixXd& s);

}  // namespace qcanvas
