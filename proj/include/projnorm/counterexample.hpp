#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "projnorm/mesh.hpp"
#include "projnorm/projection.hpp"

namespace projnorm {

/// Ring index of a simplex of a tagged counterexample mesh: j for the annulus
/// between the squares of side t^{j-1} and t^j, J+1 for the innermost square.
/// Apex vertices are ignored, so pyramid simplices inherit the ring of their
/// base triangle.
int simplex_ring(const SimplicialMesh& mesh, SimplexId s);

/// f = (-1)^j on ring j. Error(MissingLabels) for untagged meshes.
CellwiseConstant oscillating_data(const SimplicialMesh& mesh);

/// Normalized system collapsed onto symmetry orbits: one row per orbit taken
/// from a representative vertex, columns summed within each orbit.
struct ReducedSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<std::size_t> orbit_map;  // orbit index per vertex

  Eigen::VectorXd solve() const;
  Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const;
};

/// Error(NotEquivariant) when rows inside an orbit disagree after column
/// collapsing, or b is not constant on an orbit (tolerance 1e-12).
ReducedSystem reduce_by_symmetry(const NormalizedSystem& system, const OrbitPartition& orbits);

/// t -> 0 limit of the reduced system.
struct LimitSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;

  Eigen::VectorXd solve() const;
};

/// Unknowns (x_0, ..., x_{J+1}).
LimitSystem limit_system_2d(int rings);

/// Closed form: x_0 = x_1 = -1, x_j = (2j-1)(-1)^j for j = 2..J+1.
Eigen::VectorXd limit_solution_2d(int rings);

/// Unknowns (x_0, ..., x_{J+1}, x'), x' the common apex value.
LimitSystem limit_system_pyramid(int rings, int dim);

/// Everything computed for one (J, t, d) counterexample instance.
struct CounterexampleRun {
  SimplicialMesh mesh;
  CellwiseConstant data;
  NormalizedSystem system;
  OrbitPartition orbits;
  ReducedSystem reduced;
  Eigen::VectorXd reduced_solution;
  Projection full;
};

/// d = 2 builds T_J, d >= 3 the pyramid partition.
CounterexampleRun run_counterexample(int rings, double ratio, int dim);

struct SweepRecord {
  int rings = 0;
  double ratio = 0.0;
  int dim = 2;
  double sup_norm = 0.0;
  std::optional<double> exact_operator_norm;
  double limit_error = 0.0;  // max over orbits of |x_j - xhat_j|
  double ainv_bound = 0.0;
};

struct SweepOptions {
  bool exact_norm = true;
};

SweepRecord sweep_point(int rings, double ratio, int dim, SweepOptions options = {});

/// One record per t, in the given order.
std::vector<SweepRecord> convergence_study(int rings, std::span<const double> ratios, int dim = 2,
                                           SweepOptions options = {});

/// One record per J, in the given order.
std::vector<SweepRecord> growth_sweep(std::span<const int> rings, double ratio, int dim,
                                      SweepOptions options = {});

/// Least-squares slope of sup_norm against J.
double growth_slope(std::span<const SweepRecord> records);

/// Header J,t,d,sup_norm,exact_operator_norm,limit_error,ainv_bound; 12 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records);

}  // namespace projnorm
