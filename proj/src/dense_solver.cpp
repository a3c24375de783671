#include "projnorm/dense_solver.hpp"

#include <cmath>
#include <string>

#include "projnorm/error.hpp"

namespace projnorm {

SpdSolver::SpdSolver(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::SolveFailure, "matrix is not square");
  }
  const Eigen::Index n = matrix.rows();
  scale_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = matrix(i, i);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::SolveFailure,
                  "non-positive diagonal entry at row " + std::to_string(i));
    }
    scale_[i] = 1.0 / std::sqrt(d);
  }
  const Eigen::MatrixXd scaled = scale_.asDiagonal() * matrix * scale_.asDiagonal();
  llt_.compute(scaled);
  if (llt_.info() != Eigen::Success) {
    throw Error(ErrorCode::SolveFailure, "Cholesky factorization failed (matrix not SPD)");
  }
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& rhs) const {
  const Eigen::VectorXd scaled = scale_.cwiseProduct(rhs);
  return scale_.cwiseProduct(llt_.solve(scaled));
}

Eigen::MatrixXd SpdSolver::inverse() const {
  const Eigen::MatrixXd scaled_inverse =
      llt_.solve(Eigen::MatrixXd::Identity(size(), size()));
  return scale_.asDiagonal() * scaled_inverse * scale_.asDiagonal();
}

bool is_positive_definite(const Eigen::MatrixXd& matrix) {
  try {
    SpdSolver solver(matrix);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Eigen::VectorXd solve_general(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix);
  if (!lu.isInvertible()) throw Error(ErrorCode::SolveFailure, "matrix is singular");
  return lu.solve(rhs);
}

Eigen::MatrixXd invert_general(const Eigen::MatrixXd& matrix) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix);
  if (!lu.isInvertible()) throw Error(ErrorCode::SolveFailure, "matrix is singular");
  return lu.inverse();
}

}  // namespace projnorm
