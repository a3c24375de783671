#include <algorithm>
#include <cmath>
#include <limits>

#include "projnorm/clipping.hpp"
#include "projnorm/dense_solver.hpp"
#include "projnorm/error.hpp"
#include "projnorm/projection.hpp"

namespace projnorm {

double integrate_abs(const SimplicialMesh& mesh, std::span<const double> volumes,
                     const SplineFunction& g) {
  if (g.nodal_values.size() != mesh.num_vertices() || volumes.size() != mesh.num_simplices()) {
    throw Error(ErrorCode::LengthMismatch, "spline or volume list does not match mesh");
  }
  std::vector<double> values(static_cast<std::size_t>(mesh.dim()) + 1);
  double total = 0.0;
  for (SimplexId s = 0; s < mesh.num_simplices(); ++s) {
    const auto& ids = mesh.simplex(s).vertices;
    for (std::size_t k = 0; k < ids.size(); ++k) values[k] = g.nodal_values[ids[k]];
    total += integrate_abs_linear(values, volumes[s]);
  }
  return total;
}

constexpr double kTieTolerance = 1e-12;

OperatorNorm exact_operator_norm(const SimplicialMesh& mesh) {
  const std::vector<double> volumes = simplex_volumes(mesh);
  std::vector<double> values;
  for (const auto& dual : dual_basis(mesh)) values.push_back(integrate_abs(mesh, volumes, dual.psi));
  OperatorNorm best{*std::max_element(values.begin(), values.end()), 0};
  // Values equal up to rounding count as ties.
  const double floor = best.norm * (1.0 - kTieTolerance);
  while (values[best.argmax] < floor) ++best.argmax;
  return best;
}

double inverse_infinity_norm_bound(const NormalizedSystem& system) {
  const Eigen::MatrixXd inverse = invert_general(system.matrix);
  const double row_sum = inverse.cwiseAbs().rowwise().sum().maxCoeff();
  return rhs_bound_factor(system.dim) * row_sum;
}

double min_neighbor_coefficient(const SimplicialMesh& mesh, const NormalizedSystem& system) {
  double c0 = std::numeric_limits<double>::infinity();
  for (const auto& [p, q] : mesh_edges(mesh)) {
    const auto i = static_cast<Eigen::Index>(p);
    const auto j = static_cast<Eigen::Index>(q);
    c0 = std::min({c0, system.matrix(i, j), system.matrix(j, i)});
  }
  return c0;
}

CoefficientBoundCheck coefficient_bound_check(const SimplicialMesh& mesh) {
  if (mesh.dim() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "the neighbor-coefficient bound is stated in 2D");
  }
  const CellwiseConstant ones{std::vector<double>(mesh.num_simplices(), 1.0)};
  const NormalizedSystem system = normalized_system(mesh, ones);
  CoefficientBoundCheck check;
  check.c0 = min_neighbor_coefficient(mesh, system);
  if (!(check.c0 > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "neighbor coefficients must be positive");
  }
  check.bound = (1.0 + 2.0 * check.c0) / (check.c0 * check.c0);
  check.exact_norm = exact_operator_norm(mesh).norm;
  check.satisfied = check.exact_norm <= check.bound + 1e-8;
  return check;
}

}  // namespace projnorm
