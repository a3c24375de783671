#include <algorithm>
#include <cmath>

#include "projnorm/dense_solver.hpp"
#include "projnorm/error.hpp"
#include "projnorm/projection.hpp"

namespace projnorm {
namespace {

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double relative_residual(const Eigen::SparseMatrix<double>& mass, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& load) {
  const double scale = load.lpNorm<Eigen::Infinity>();
  const double r = (mass * x - load).lpNorm<Eigen::Infinity>();
  return scale > 0.0 ? r / scale : r;
}

void check_data(const SimplicialMesh& mesh, const CellwiseConstant& f) {
  if (f.values.size() != mesh.num_simplices()) {
    throw Error(ErrorCode::LengthMismatch,
                "data has " + std::to_string(f.values.size()) + " values for " +
                    std::to_string(mesh.num_simplices()) + " simplices");
  }
  for (double v : f.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "data must be finite");
  }
}

}  // namespace

double CellwiseConstant::sup_norm() const noexcept { return max_abs(values); }
double SplineFunction::sup_norm() const noexcept { return max_abs(nodal_values); }

double rhs_bound_factor(int dim) noexcept { return (dim + 2) / 2.0; }

MassMatrix assemble_mass(const SimplicialMesh& mesh) {
  const double d = mesh.dim();
  const double denominator = (d + 1.0) * (d + 2.0);
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& s : mesh.simplices()) {
    const double off = simplex_volume(mesh, s) / denominator;
    for (VertexId p : s.vertices) {
      for (VertexId q : s.vertices) {
        triplets.emplace_back(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q),
                              p == q ? 2.0 * off : off);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(mesh.num_vertices());
  Eigen::SparseMatrix<double> entries(n, n);
  entries.setFromTriplets(triplets.begin(), triplets.end());
  return MassMatrix(std::move(entries));
}

Eigen::VectorXd assemble_load(const SimplicialMesh& mesh, const CellwiseConstant& f) {
  check_data(mesh, f);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_vertices()));
  const double vertices_per_simplex = mesh.dim() + 1.0;
  for (SimplexId s = 0; s < mesh.num_simplices(); ++s) {
    const double share = f.values[s] * simplex_volume(mesh, s) / vertices_per_simplex;
    for (VertexId p : mesh.simplex(s).vertices) load[static_cast<Eigen::Index>(p)] += share;
  }
  return load;
}

NormalizedSystem normalized_system(const SimplicialMesh& mesh, const CellwiseConstant& f) {
  const Eigen::VectorXd load = assemble_load(mesh, f);
  Eigen::MatrixXd matrix = assemble_mass(mesh).dense();
  const Eigen::VectorXd diagonal = matrix.diagonal();
  for (Eigen::Index p = 0; p < matrix.rows(); ++p) {
    if (!(diagonal[p] > 0.0)) {
      throw Error(ErrorCode::InvalidVertex,
                  "vertex " + std::to_string(p) + " belongs to no simplex");
    }
    matrix.row(p) /= diagonal[p];
    matrix(p, p) = 1.0;
  }
  return NormalizedSystem{mesh.dim(), std::move(matrix), load.cwiseQuotient(diagonal)};
}

Projection solve_mass_system(const MassMatrix& mass, const Eigen::VectorXd& load) {
  if (load.size() != mass.size()) {
    throw Error(ErrorCode::LengthMismatch, "load vector does not match mass matrix");
  }
  const SpdSolver solver(mass.dense());
  Eigen::VectorXd x = solver.solve(load);
  double residual = relative_residual(mass.sparse(), x, load);
  for (int step = 0; step < 3 && residual > 1e-14; ++step) {
    const Eigen::VectorXd correction = solver.solve(load - mass.sparse() * x);
    const Eigen::VectorXd refined = x + correction;
    const double refined_residual = relative_residual(mass.sparse(), refined, load);
    if (!(refined_residual < residual)) break;
    x = refined;
    residual = refined_residual;
  }
  if (!(residual <= kResidualTolerance)) {
    throw Error(ErrorCode::SolveFailure, "relative residual " + std::to_string(residual) +
                                             " exceeds tolerance");
  }
  return Projection{SplineFunction{{x.data(), x.data() + x.size()}}, residual};
}

Projection project(const SimplicialMesh& mesh, const CellwiseConstant& f) {
  return solve_mass_system(assemble_mass(mesh), assemble_load(mesh, f));
}

std::vector<DualFunction> dual_basis(const SimplicialMesh& mesh) {
  const Eigen::MatrixXd inverse = SpdSolver(assemble_mass(mesh).dense()).inverse();
  std::vector<DualFunction> duals;
  duals.reserve(mesh.num_vertices());
  for (Eigen::Index p = 0; p < inverse.rows(); ++p) {
    // M^{-1} is symmetric; read a column for contiguous storage.
    const auto column = inverse.col(p);
    duals.push_back(DualFunction{static_cast<VertexId>(p),
                                 SplineFunction{{column.data(), column.data() + column.size()}}});
  }
  return duals;
}

}  // namespace projnorm
