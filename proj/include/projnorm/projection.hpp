#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <span>
#include <vector>

#include "projnorm/mesh.hpp"

namespace projnorm {

/// Data constant on each simplex, ordered like the mesh simplex list.
struct CellwiseConstant {
  std::vector<double> values;

  double sup_norm() const noexcept;
};

/// Element of V(T): continuous, linear on every simplex, stored by nodal values.
/// Its sup norm over the domain is the largest nodal magnitude.
struct SplineFunction {
  std::vector<double> nodal_values;

  double sup_norm() const noexcept;
  Eigen::Map<const Eigen::VectorXd> vector() const {
    return {nodal_values.data(), static_cast<Eigen::Index>(nodal_values.size())};
  }
};

/// Gram matrix of the hat basis, (phi_P, phi_Q).
class MassMatrix {
 public:
  explicit MassMatrix(Eigen::SparseMatrix<double> entries) : entries_(std::move(entries)) {}

  Eigen::Index size() const noexcept { return entries_.rows(); }
  double operator()(VertexId p, VertexId q) const {
    return entries_.coeff(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
  }
  const Eigen::SparseMatrix<double>& sparse() const noexcept { return entries_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries_); }

 private:
  Eigen::SparseMatrix<double> entries_;
};

/// Per simplex, int phi_i phi_j = |S| (1 + delta_ij) / ((d+1)(d+2)).
MassMatrix assemble_mass(const SimplicialMesh& mesh);

/// Entry P is sum over simplices S containing P of f_S |S| / (d+1).
Eigen::VectorXd assemble_load(const SimplicialMesh& mesh, const CellwiseConstant& f);

/// Galerkin system with every row divided by its diagonal entry.
struct NormalizedSystem {
  int dim = 0;
  Eigen::MatrixXd matrix;  // a_PQ = (phi_Q, phi_P) / (phi_P, phi_P)
  Eigen::VectorXd rhs;     // b_P = (f, phi_P) / (phi_P, phi_P)
};

NormalizedSystem normalized_system(const SimplicialMesh& mesh, const CellwiseConstant& f);

/// Factor relating the data sup norm to the bound on ||b||_inf: (d+2)/2.
double rhs_bound_factor(int dim) noexcept;

struct Projection {
  SplineFunction spline;
  double residual = 0.0;  // ||M x - F||_inf / ||F||_inf (absolute when F = 0)
};

/// Relative residual above which a solve is reported as SolveFailure.
inline constexpr double kResidualTolerance = 1e-10;

/// L2-orthogonal projection of cellwise-constant data onto V(T).
Projection project(const SimplicialMesh& mesh, const CellwiseConstant& f);

/// Solve M x = load directly, for loads that do not come from cellwise data.
Projection solve_mass_system(const MassMatrix& mass, const Eigen::VectorXd& load);

/// psi_P = sum_Q (M^{-1})_{PQ} phi_Q, so that (psi_P, phi_Q) = delta_PQ.
struct DualFunction {
  VertexId vertex;
  SplineFunction psi;
};

std::vector<DualFunction> dual_basis(const SimplicialMesh& mesh);

/// Exact integral of |g| over the domain.
double integrate_abs(const SimplicialMesh& mesh, std::span<const double> volumes,
                     const SplineFunction& g);

struct OperatorNorm {
  double norm = 0.0;
  VertexId argmax = 0;
};

/// ||P||_{Linf->Linf} = max_P int |psi_P|; ties (equal to 1e-12 relative) go to the
/// lowest vertex id.
OperatorNorm exact_operator_norm(const SimplicialMesh& mesh);

/// (d+2)/2 * ||A^{-1}||_inf, the max absolute row sum of the explicit inverse.
double inverse_infinity_norm_bound(const NormalizedSystem& system);

/// Smallest normalized coefficient a_PQ over ordered neighbor pairs.
double min_neighbor_coefficient(const SimplicialMesh& mesh, const NormalizedSystem& system);

struct CoefficientBoundCheck {
  double c0 = 0.0;
  double bound = 0.0;  // (1 + 2 c0) / c0^2
  double exact_norm = 0.0;
  bool satisfied = false;
};

/// Empirical check of the bound (1 + 2 c0) / c0^2 on a 2D mesh.
CoefficientBoundCheck coefficient_bound_check(const SimplicialMesh& mesh);

}  // namespace projnorm
