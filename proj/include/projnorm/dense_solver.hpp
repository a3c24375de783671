#pragma once

#include <Eigen/Dense>

namespace projnorm {

/// Cholesky factorization of a symmetric positive definite matrix after
/// symmetric Jacobi scaling D^{-1/2} M D^{-1/2}. The scaling keeps mass
/// matrices whose element sizes span many orders of magnitude well
/// conditioned. Throws Error(SolveFailure) when the matrix is not SPD.
class SpdSolver {
 public:
  explicit SpdSolver(const Eigen::MatrixXd& matrix);

  Eigen::Index size() const noexcept { return scale_.size(); }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd inverse() const;

 private:
  Eigen::VectorXd scale_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

bool is_positive_definite(const Eigen::MatrixXd& matrix);

/// LU with full pivoting; Error(SolveFailure) on a numerically singular matrix.
Eigen::VectorXd solve_general(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs);
Eigen::MatrixXd invert_general(const Eigen::MatrixXd& matrix);

}  // namespace projnorm
