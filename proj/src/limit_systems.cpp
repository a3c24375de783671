#include <string>

#include "projnorm/counterexample.hpp"
#include "projnorm/dense_solver.hpp"
#include "projnorm/error.hpp"

namespace projnorm {
namespace {

double alternating(int j) { return j % 2 == 0 ? 1.0 : -1.0; }

void check_rings(int rings) {
  if (rings < 1) {
    throw Error(ErrorCode::InvalidParameter, "J must be >= 1, got " + std::to_string(rings));
  }
}

}  // namespace

Eigen::VectorXd LimitSystem::solve() const { return solve_general(matrix, rhs); }

LimitSystem limit_system_2d(int rings) {
  check_rings(rings);
  const int n = rings + 2;
  LimitSystem system{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  system.matrix(0, 0) = 1.5;
  system.matrix(0, 1) = 0.5;
  system.rhs[0] = -2.0;
  for (int j = 1; j <= rings + 1; ++j) {
    system.matrix(j, j - 1) = 1.0;
    system.matrix(j, j) = 1.0;
    system.rhs[j] = 2.0 * alternating(j);
  }
  return system;
}

Eigen::VectorXd limit_solution_2d(int rings) {
  check_rings(rings);
  Eigen::VectorXd x(rings + 2);
  x[0] = -1.0;
  x[1] = -1.0;
  for (int j = 2; j <= rings + 1; ++j) x[j] = (2.0 * j - 1.0) * alternating(j);
  return x;
}

LimitSystem limit_system_pyramid(int rings, int dim) {
  check_rings(rings);
  if (dim < 3) throw Error(ErrorCode::InvalidParameter, "pyramid limit system needs d >= 3");
  const int n = rings + 3;
  const int apex = n - 1;
  const double coupling = (dim - 2) / 2.0;
  const double load = (dim + 2) / 2.0;
  LimitSystem system{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  system.matrix(0, 0) = 1.5;
  system.matrix(0, 1) = 0.5;
  system.matrix(0, apex) = coupling;
  system.rhs[0] = -load;
  for (int j = 1; j <= rings + 1; ++j) {
    system.matrix(j, j - 1) = 1.0;
    system.matrix(j, j) = 1.0;
    system.matrix(j, apex) = coupling;
    system.rhs[j] = alternating(j) * load;
  }
  system.matrix(apex, 0) = 1.0;
  system.matrix(apex, 1) = 0.5;
  system.matrix(apex, apex) = 1.0 + (dim - 3) / 2.0;
  system.rhs[apex] = -load;
  return system;
}

}  // namespace projnorm
