#include "projnorm/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "projnorm/dense_solver.hpp"
#include "projnorm/error.hpp"

namespace projnorm {
namespace {

constexpr double kEquivarianceTolerance = 1e-12;

int outermost_ring_count(const SimplicialMesh& mesh) {
  if (!mesh.has_tags()) {
    throw Error(ErrorCode::MissingLabels, "mesh carries no counterexample vertex tags");
  }
  int rings = 0;
  for (VertexId v = 0; v < mesh.num_vertices(); ++v) {
    const VertexTag tag = *mesh.tag(v);
    if (tag.kind == VertexTag::Kind::Corner) rings = std::max(rings, tag.ring);
  }
  return rings;
}

int ring_of(const SimplicialMesh& mesh, SimplexId s, int rings) {
  int ring = -1;
  for (VertexId v : mesh.simplex(s).vertices) {
    const VertexTag tag = *mesh.tag(v);
    if (tag.kind == VertexTag::Kind::Corner) ring = std::max(ring, tag.ring);
    if (tag.kind == VertexTag::Kind::Center) ring = std::max(ring, rings + 1);
  }
  if (ring < 1) {
    throw Error(ErrorCode::MissingLabels,
                "simplex " + std::to_string(s) + " has no ring-tagged base vertex");
  }
  return ring;
}

}  // namespace

int simplex_ring(const SimplicialMesh& mesh, SimplexId s) {
  return ring_of(mesh, s, outermost_ring_count(mesh));
}

CellwiseConstant oscillating_data(const SimplicialMesh& mesh) {
  const int rings = outermost_ring_count(mesh);
  CellwiseConstant f;
  f.values.reserve(mesh.num_simplices());
  for (SimplexId s = 0; s < mesh.num_simplices(); ++s) {
    f.values.push_back(ring_of(mesh, s, rings) % 2 == 0 ? 1.0 : -1.0);
  }
  return f;
}

Eigen::VectorXd ReducedSystem::solve() const { return solve_general(matrix, rhs); }

Eigen::VectorXd ReducedSystem::expand(const Eigen::VectorXd& reduced) const {
  Eigen::VectorXd full(static_cast<Eigen::Index>(orbit_map.size()));
  for (std::size_t v = 0; v < orbit_map.size(); ++v) {
    full[static_cast<Eigen::Index>(v)] = reduced[static_cast<Eigen::Index>(orbit_map[v])];
  }
  return full;
}

ReducedSystem reduce_by_symmetry(const NormalizedSystem& system, const OrbitPartition& orbits) {
  const Eigen::Index n = system.matrix.rows();
  if (static_cast<Eigen::Index>(orbits.orbit_of.size()) != n) {
    throw Error(ErrorCode::LengthMismatch, "orbit partition does not match the system size");
  }
  const auto m = static_cast<Eigen::Index>(orbits.size());

  // Column-collapsed matrix: n rows, one column per orbit.
  Eigen::MatrixXd collapsed = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index q = 0; q < n; ++q) {
    collapsed.col(static_cast<Eigen::Index>(orbits.orbit_of[q])) += system.matrix.col(q);
  }

  ReducedSystem reduced{Eigen::MatrixXd(m, m), Eigen::VectorXd(m), orbits.orbit_of};
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& members = orbits.orbits[static_cast<std::size_t>(k)];
    const auto rep = static_cast<Eigen::Index>(members.front());
    reduced.matrix.row(k) = collapsed.row(rep);
    reduced.rhs[k] = system.rhs[rep];
    for (VertexId v : members) {
      const auto row = static_cast<Eigen::Index>(v);
      const double row_gap = (collapsed.row(row) - collapsed.row(rep)).lpNorm<Eigen::Infinity>();
      const double rhs_gap = std::abs(system.rhs[row] - system.rhs[rep]);
      if (row_gap > kEquivarianceTolerance ||
          rhs_gap > kEquivarianceTolerance * std::max(1.0, std::abs(system.rhs[rep]))) {
        throw Error(ErrorCode::NotEquivariant,
                    "vertex " + std::to_string(v) + " disagrees with its orbit representative");
      }
    }
  }
  return reduced;
}

CounterexampleRun run_counterexample(int rings, double ratio, int dim) {
  if (dim < 2) throw Error(ErrorCode::InvalidParameter, "counterexample needs d >= 2");
  SimplicialMesh mesh = dim == 2 ? build_counterexample_2d(rings, ratio)
                                 : build_pyramid_partition(rings, ratio, dim);
  CellwiseConstant data = oscillating_data(mesh);
  NormalizedSystem system = normalized_system(mesh, data);
  OrbitPartition orbits = symmetry_orbits(mesh, counterexample_symmetries(mesh));
  ReducedSystem reduced = reduce_by_symmetry(system, orbits);
  Eigen::VectorXd reduced_solution = reduced.solve();
  Projection full = project(mesh, data);
  return CounterexampleRun{std::move(mesh),    std::move(data),
                           std::move(system),  std::move(orbits),
                           std::move(reduced), std::move(reduced_solution),
                           std::move(full)};
}

}  // namespace projnorm
