#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "projnorm/error.hpp"
#include "projnorm/mesh.hpp"

namespace projnorm {

double simplex_volume(const SimplicialMesh& mesh, const Simplex& simplex) {
  const int d = mesh.dim();
  if (simplex.size() != static_cast<std::size_t>(d) + 1) {
    throw Error(ErrorCode::InvalidParameter, "simplex needs d+1 vertices");
  }
  for (VertexId v : simplex.vertices) {
    if (v >= mesh.num_vertices()) {
      throw Error(ErrorCode::InvalidVertex, "simplex references vertex " + std::to_string(v));
    }
  }
  const Point& origin = mesh.vertex(simplex.vertices[0]);
  Eigen::MatrixXd edges(d, d);
  for (int k = 0; k < d; ++k) {
    const Point& p = mesh.vertex(simplex.vertices[k + 1]);
    for (int r = 0; r < d; ++r) edges(r, k) = p[r] - origin[r];
  }
  double factorial = 1.0;
  for (int k = 2; k <= d; ++k) factorial *= k;
  const double volume = std::abs(edges.determinant()) / factorial;
  if (!(volume > kVolumeEpsilon)) {
    throw Error(ErrorCode::DegenerateSimplex, "simplex volume " + std::to_string(volume));
  }
  return volume;
}

double simplex_volume(const SimplicialMesh& mesh, SimplexId s) {
  return simplex_volume(mesh, mesh.simplex(s));
}

std::vector<double> simplex_volumes(const SimplicialMesh& mesh) {
  std::vector<double> volumes;
  volumes.reserve(mesh.num_simplices());
  for (const auto& s : mesh.simplices()) volumes.push_back(simplex_volume(mesh, s));
  return volumes;
}

AngleStats angle_stats(const SimplicialMesh& mesh) {
  if (mesh.dim() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "angle_stats needs a 2D mesh");
  }
  AngleStats stats{std::numbers::pi, 0.0};
  for (const auto& s : mesh.simplices()) {
    for (int k = 0; k < 3; ++k) {
      const Point& a = mesh.vertex(s.vertices[k]);
      const Point& b = mesh.vertex(s.vertices[(k + 1) % 3]);
      const Point& c = mesh.vertex(s.vertices[(k + 2) % 3]);
      const double ux = b[0] - a[0], uy = b[1] - a[1];
      const double vx = c[0] - a[0], vy = c[1] - a[1];
      // atan2 stays accurate for needle-shaped triangles where acos does not.
      const double angle = std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
      stats.min_angle = std::min(stats.min_angle, angle);
      stats.max_angle = std::max(stats.max_angle, angle);
    }
  }
  return stats;
}

VertexStar vertex_star(const SimplicialMesh& mesh, VertexId p) {
  if (p >= mesh.num_vertices()) {
    throw Error(ErrorCode::InvalidVertex, "no vertex " + std::to_string(p));
  }
  VertexStar star{p, {}, {}};
  std::set<VertexId> neighbors;
  for (SimplexId s : mesh.incident_simplices(p)) {
    star.simplices.push_back(s);
    for (VertexId q : mesh.simplex(s).vertices) {
      if (q != p) neighbors.insert(q);
    }
  }
  star.neighbors.assign(neighbors.begin(), neighbors.end());
  return star;
}

std::vector<std::pair<VertexId, VertexId>> mesh_edges(const SimplicialMesh& mesh) {
  std::set<std::pair<VertexId, VertexId>> edges;
  for (const auto& s : mesh.simplices()) {
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        edges.insert(std::minmax(s.vertices[a], s.vertices[b]));
      }
    }
  }
  return {edges.begin(), edges.end()};
}

}  // namespace projnorm
