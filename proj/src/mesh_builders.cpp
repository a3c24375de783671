#include <cmath>
#include <string>

#include "projnorm/error.hpp"
#include "projnorm/mesh.hpp"

namespace projnorm {
namespace {

// Clockwise with y up: (1,1), (1,-1), (-1,-1), (-1,1).
constexpr double kCornerX[4] = {1.0, 1.0, -1.0, -1.0};
constexpr double kCornerY[4] = {1.0, -1.0, -1.0, 1.0};

void check_counterexample_parameters(int rings, double ratio) {
  if (rings < 1) {
    throw Error(ErrorCode::InvalidParameter, "J must be >= 1, got " + std::to_string(rings));
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "t must lie in (0,1), got " + std::to_string(ratio));
  }
  // t^(2J) (1-t)^2 bounds the smallest element area from below.
  const double log_area = 2.0 * rings * std::log(ratio) + 2.0 * std::log1p(-ratio);
  if (log_area < std::log(1e-250)) {
    throw Error(ErrorCode::UnderflowRisk,
                "t^(2J)(1-t)^2 falls below 1e-250 for J=" + std::to_string(rings));
  }
}

// Corner (j, i) with i in 1..4 lives at index 4j + i - 1; the center follows.
VertexId corner_id(int ring, int corner) {
  const int i = ((corner - 1) % 4 + 4) % 4;
  return static_cast<VertexId>(4 * ring + i);
}

}  // namespace

SimplicialMesh build_counterexample_2d(int rings, double ratio) {
  check_counterexample_parameters(rings, ratio);

  std::vector<Point> vertices;
  std::map<VertexId, std::string> labels;
  vertices.reserve(4 * rings + 5);
  double scale = 1.0;
  for (int j = 0; j <= rings; ++j) {
    for (int i = 1; i <= 4; ++i) {
      labels[vertices.size()] = format_tag(VertexTag::make_corner(j, i));
      vertices.push_back(Point{{scale * kCornerX[i - 1], scale * kCornerY[i - 1]}});
    }
    scale *= ratio;
  }
  const VertexId center = vertices.size();
  labels[center] = format_tag(VertexTag::make_center());
  vertices.push_back(Point{{0.0, 0.0}});

  std::vector<Simplex> simplices;
  simplices.reserve(8 * rings + 4);
  for (int j = 1; j <= rings; ++j) {
    for (int i = 1; i <= 4; ++i) {
      // Trapezoid P_{j-1,i-1} P_{j,i-1} P_{j,i} P_{j-1,i}, cut along P_{j-1,i-1}-P_{j,i}.
      const VertexId outer_prev = corner_id(j - 1, i - 1);
      const VertexId outer = corner_id(j - 1, i);
      const VertexId inner_prev = corner_id(j, i - 1);
      const VertexId inner = corner_id(j, i);
      simplices.push_back(Simplex{{outer_prev, inner_prev, inner}});
      simplices.push_back(Simplex{{outer_prev, inner, outer}});
    }
  }
  for (int i = 1; i <= 4; ++i) {
    simplices.push_back(Simplex{{corner_id(rings, i - 1), corner_id(rings, i), center}});
  }
  return SimplicialMesh(2, std::move(vertices), std::move(simplices), std::move(labels));
}

SimplicialMesh build_pyramid_partition(int rings, double ratio, int dim) {
  if (dim < 3) {
    throw Error(ErrorCode::InvalidParameter, "pyramid partition needs d >= 3");
  }
  const SimplicialMesh base = build_counterexample_2d(rings, ratio);

  std::vector<Point> vertices;
  vertices.reserve(base.num_vertices() + dim - 2);
  for (const auto& p : base.vertices()) {
    Point lifted{std::vector<double>(dim, 0.0)};
    lifted.coords[0] = p[0];
    lifted.coords[1] = p[1];
    vertices.push_back(std::move(lifted));
  }
  std::map<VertexId, std::string> labels = base.labels();
  std::vector<VertexId> apexes;
  for (int m = 3; m <= dim; ++m) {
    Point e{std::vector<double>(dim, 0.0)};
    e.coords[m - 1] = 1.0;
    apexes.push_back(vertices.size());
    labels[vertices.size()] = format_tag(VertexTag::make_apex(m));
    vertices.push_back(std::move(e));
  }

  std::vector<Simplex> simplices;
  simplices.reserve(base.num_simplices());
  for (const auto& triangle : base.simplices()) {
    Simplex s = triangle;
    s.vertices.insert(s.vertices.end(), apexes.begin(), apexes.end());
    simplices.push_back(std::move(s));
  }
  return SimplicialMesh(dim, std::move(vertices), std::move(simplices), std::move(labels));
}

SimplicialMesh build_uniform_square(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  const auto stride = static_cast<VertexId>(n + 1);
  std::vector<Point> vertices;
  vertices.reserve(stride * stride);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.push_back(Point{{static_cast<double>(i) / n, static_cast<double>(j) / n}});
    }
  }
  std::vector<Simplex> simplices;
  simplices.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const VertexId a = j * stride + i;
      const VertexId b = a + 1;
      const VertexId c = a + stride + 1;
      const VertexId d = a + stride;
      simplices.push_back(Simplex{{a, b, c}});
      simplices.push_back(Simplex{{a, c, d}});
    }
  }
  return SimplicialMesh(2, std::move(vertices), std::move(simplices));
}

SimplicialMesh build_interval_partition(std::span<const double> breakpoints) {
  if (breakpoints.size() < 2) {
    throw Error(ErrorCode::InvalidParameter, "need at least two breakpoints");
  }
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (!std::isfinite(breakpoints[k])) {
      throw Error(ErrorCode::InvalidParameter, "breakpoints must be finite");
    }
    if (k > 0 && !(breakpoints[k] > breakpoints[k - 1])) {
      throw Error(ErrorCode::InvalidParameter, "breakpoints must be strictly increasing");
    }
  }
  std::vector<Point> vertices;
  std::vector<Simplex> simplices;
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    vertices.push_back(Point{{breakpoints[k]}});
    if (k > 0) simplices.push_back(Simplex{{k - 1, k}});
  }
  return SimplicialMesh(1, std::move(vertices), std::move(simplices));
}

}  // namespace projnorm
