#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "projnorm/error.hpp"
#include "projnorm/mesh.hpp"
#include "projnorm/mesh_io.hpp"
#include "support/oracles.hpp"

using namespace projnorm;

namespace {

SimplicialMesh single_simplex(std::vector<Point> points) {
  const int d = static_cast<int>(points.front().dim());
  Simplex s;
  for (std::size_t k = 0; k < points.size(); ++k) s.vertices.push_back(k);
  return SimplicialMesh(d, std::move(points), {s});
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

double total_volume(const SimplicialMesh& mesh) {
  double sum = 0.0;
  for (double v : simplex_volumes(mesh)) sum += v;
  return sum;
}

}  // namespace

TEST_CASE("simplex_volume of reference simplices") {
  const auto tri = single_simplex({Point{{0, 0}}, Point{{1, 0}}, Point{{0, 1}}});
  CHECK(simplex_volume(tri, 0) == doctest::Approx(0.5).epsilon(1e-15));

  const auto tet =
      single_simplex({Point{{0, 0, 0}}, Point{{1, 0, 0}}, Point{{0, 1, 0}}, Point{{0, 0, 1}}});
  CHECK(simplex_volume(tet, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const auto flat = single_simplex({Point{{0, 0}}, Point{{1, 0}}, Point{{2, 0}}});
  CHECK(code_of([&] { simplex_volume(flat, 0); }) == ErrorCode::DegenerateSimplex);
}

TEST_CASE("simplex_volume is invariant under vertex reordering and rigid motion") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 4;
    std::vector<Point> pts(d + 1, Point{std::vector<double>(d)});
    for (auto& p : pts) for (double& c : p.coords) c = u(rng);
    const auto mesh = single_simplex(pts);
    const double reference = simplex_volume(mesh, 0);

    Simplex reversed = mesh.simplex(0);
    std::reverse(reversed.vertices.begin(), reversed.vertices.end());
    CHECK(simplex_volume(mesh, reversed) == doctest::Approx(reference).epsilon(1e-12));

    // Rotation in the (0, last) coordinate plane plus a translation.
    const double angle = u(rng) * std::numbers::pi;
    std::vector<Point> moved = pts;
    for (auto& p : moved) {
      const double a = p.coords[0];
      const double b = p.coords[d - 1];
      if (d > 1) {
        p.coords[0] = std::cos(angle) * a - std::sin(angle) * b;
        p.coords[d - 1] = std::sin(angle) * a + std::cos(angle) * b;
      }
      for (double& c : p.coords) c += 3.0;
    }
    CHECK(simplex_volume(single_simplex(moved), 0) == doctest::Approx(reference).epsilon(1e-12));
    CHECK(reference == doctest::Approx(oracle::volume(mesh, mesh.simplex(0))).epsilon(1e-12));
  }
}

TEST_CASE("build_counterexample_2d sizes, labels and coverage") {
  auto t1 = build_counterexample_2d(1, 0.3);
  CHECK(t1.num_vertices() == 9);
  CHECK(t1.num_simplices() == 12);
  auto t2 = build_counterexample_2d(2, 0.3);
  CHECK(t2.num_vertices() == 13);
  CHECK(t2.num_simplices() == 20);
  CHECK(total_volume(build_counterexample_2d(3, 0.3)) == doctest::Approx(4.0).epsilon(1e-14));

  // P_{j,i} = t^j (+-1, +-1) in the clockwise convention.
  for (VertexId v = 0; v < t2.num_vertices(); ++v) {
    const auto tag = t2.tag(v);
    REQUIRE(tag.has_value());
    if (tag->kind == VertexTag::Kind::Center) {
      CHECK(t2.vertex(v) == Point{{0.0, 0.0}});
      continue;
    }
    const double scale = std::pow(0.3, tag->ring);
    const double xs[] = {1, 1, -1, -1};
    const double ys[] = {1, -1, -1, 1};
    CHECK(t2.vertex(v)[0] == doctest::Approx(scale * xs[tag->corner - 1]));
    CHECK(t2.vertex(v)[1] == doctest::Approx(scale * ys[tag->corner - 1]));
  }
  CHECK(t2.has_tags());
}

TEST_CASE("counterexample area and size invariants over J and t") {
  for (int J = 1; J <= 12; ++J) {
    for (double t : {0.01, 0.05, 0.1, 0.3, 0.5, 0.9}) {
      const auto mesh = build_counterexample_2d(J, t);
      CHECK(mesh.num_simplices() == static_cast<std::size_t>(8 * J + 4));
      CHECK(mesh.num_vertices() == static_cast<std::size_t>(4 * J + 5));
      CHECK(std::abs(total_volume(mesh) - 4.0) <= 1e-12 * 4.0);
    }
  }
}

TEST_CASE("counterexample constructor rejects bad parameters") {
  CHECK(code_of([] { build_counterexample_2d(0, 0.3); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { build_counterexample_2d(2, 0.0); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { build_counterexample_2d(2, 1.0); }) == ErrorCode::InvalidParameter);
  // 1e-3^(2*130) is far below the area guard.
  CHECK(code_of([] { build_counterexample_2d(130, 1e-3); }) == ErrorCode::UnderflowRisk);
  CHECK_NOTHROW(build_counterexample_2d(12, 0.01));
}

TEST_CASE("build_pyramid_partition") {
  const auto base = build_counterexample_2d(1, 0.3);
  const auto p3 = build_pyramid_partition(1, 0.3, 3);
  CHECK(p3.num_vertices() == 10);
  CHECK(p3.num_simplices() == 12);
  for (SimplexId s = 0; s < p3.num_simplices(); ++s) {
    CHECK(simplex_volume(p3, s) == doctest::Approx(simplex_volume(base, s) / 3.0).epsilon(1e-14));
  }
  const auto p4 = build_pyramid_partition(1, 0.3, 4);
  CHECK(p4.num_vertices() == 11);
  CHECK(p4.num_simplices() == 12);
  for (SimplexId s = 0; s < p4.num_simplices(); ++s) {
    CHECK(simplex_volume(p4, s) / simplex_volume(base, s) ==
          doctest::Approx(2.0 / 24.0).epsilon(1e-14));
  }
  CHECK(p4.tag(9) == VertexTag::make_apex(3));
  CHECK(p4.tag(10) == VertexTag::make_apex(4));
  CHECK(p4.vertex(10) == Point{{0, 0, 0, 1}});
  CHECK(code_of([] { build_pyramid_partition(1, 0.3, 2); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("build_uniform_square") {
  const auto m1 = build_uniform_square(1);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_simplices() == 2);
  const auto m2 = build_uniform_square(2);
  CHECK(m2.num_vertices() == 9);
  CHECK(m2.num_simplices() == 8);
  for (double a : simplex_volumes(build_uniform_square(3))) {
    CHECK(a == doctest::Approx(1.0 / 18.0).epsilon(1e-14));
  }
  CHECK(code_of([] { build_uniform_square(0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("build_interval_partition") {
  const std::vector<double> unit{0.0, 1.0};
  const auto one = build_interval_partition(unit);
  CHECK(one.num_simplices() == 1);
  CHECK(simplex_volume(one, 0) == 1.0);
  const std::vector<double> two{0.0, 0.1, 1.0};
  const auto split = build_interval_partition(two);
  CHECK(simplex_volume(split, 0) == doctest::Approx(0.1));
  CHECK(simplex_volume(split, 1) == doctest::Approx(0.9));
  const std::vector<double> dup{0.0, 1.0, 1.0};
  CHECK(code_of([&] { build_interval_partition(dup); }) == ErrorCode::InvalidParameter);
  const std::vector<double> unsorted{0.0, 2.0, 1.0};
  CHECK(code_of([&] { build_interval_partition(unsorted); }) == ErrorCode::InvalidParameter);
  const std::vector<double> lonely{0.0};
  CHECK(code_of([&] { build_interval_partition(lonely); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("angle_stats") {
  const auto grid = angle_stats(build_uniform_square(2));
  CHECK(grid.min_angle == doctest::Approx(std::numbers::pi / 4));
  CHECK(grid.max_angle == doctest::Approx(std::numbers::pi / 2));

  const auto equilateral =
      single_simplex({Point{{0, 0}}, Point{{1, 0}}, Point{{0.5, std::sqrt(3.0) / 2}}});
  const auto eq = angle_stats(equilateral);
  CHECK(eq.min_angle == doctest::Approx(std::numbers::pi / 3));
  CHECK(eq.max_angle == doctest::Approx(std::numbers::pi / 3));

  // Minimum angle degenerates as t -> 0 while the maximum stays at 3pi/4.
  const auto coarse = angle_stats(build_counterexample_2d(4, 0.1));
  const auto fine = angle_stats(build_counterexample_2d(4, 0.01));
  CHECK(fine.min_angle < coarse.min_angle);
  CHECK(fine.max_angle <= 3 * std::numbers::pi / 4 + 1e-12);
  CHECK(coarse.max_angle <= 3 * std::numbers::pi / 4 + 1e-12);

  CHECK(code_of([] { angle_stats(build_pyramid_partition(1, 0.3, 3)); }) ==
        ErrorCode::UnsupportedDimension);
}

TEST_CASE("vertex_star") {
  const auto grid = build_uniform_square(2);
  const auto center = vertex_star(grid, 4);
  CHECK(center.simplices.size() == 6);
  CHECK(center.neighbors.size() == 6);

  const auto corner = vertex_star(build_uniform_square(1), 0);
  CHECK(corner.simplices.size() == 2);
  CHECK(corner.neighbors.size() == 3);

  // Interior ring corners of T_J touch three triangles of each adjacent ring.
  const auto tj = build_counterexample_2d(4, 0.3);
  for (VertexId v = 0; v < tj.num_vertices(); ++v) {
    const auto tag = *tj.tag(v);
    if (tag.kind == VertexTag::Kind::Corner && tag.ring >= 1 && tag.ring <= 3) {
      const auto star = vertex_star(tj, v);
      CHECK(star.simplices.size() == 6);
      CHECK(star.neighbors.size() == 6);
    }
  }
  CHECK(code_of([&] { vertex_star(grid, 99); }) == ErrorCode::InvalidVertex);
}

TEST_CASE("vertex_star of the grid center omits the two off-diagonal corners") {
  const auto star = vertex_star(build_uniform_square(2), 4);
  const std::vector<VertexId> expected{0, 1, 3, 5, 7, 8};
  CHECK(star.neighbors == expected);
}

TEST_CASE("mesh constructor checks structure") {
  CHECK(code_of([] {
          SimplicialMesh(2, {Point{{0, 0}}, Point{{1, 0}}}, {Simplex{{0, 1, 2}}});
        }) == ErrorCode::InvalidVertex);
  CHECK(code_of([] {
          SimplicialMesh(2, {Point{{0, 0}}, Point{{1, 0}}, Point{{0, 1}}}, {Simplex{{0, 1, 1}}});
        }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] {
          SimplicialMesh(2, {Point{{0, NAN}}, Point{{1, 0}}, Point{{0, 1}}}, {Simplex{{0, 1, 2}}});
        }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { SimplicialMesh(0, {}, {}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("tags format and parse") {
  for (const auto& tag : {VertexTag::make_corner(3, 2), VertexTag::make_center(),
                          VertexTag::make_apex(5)}) {
    CHECK(parse_tag(format_tag(tag)) == tag);
  }
  CHECK_FALSE(parse_tag("ring 2").has_value());
  CHECK_FALSE(parse_tag("apex").has_value());
  CHECK_FALSE(parse_tag("center 1").has_value());
  CHECK_FALSE(parse_tag("hub").has_value());
}

TEST_CASE("mesh JSON round trip is lossless") {
  for (const auto& mesh : {build_counterexample_2d(3, 0.3), build_pyramid_partition(2, 0.1, 4),
                           build_uniform_square(2)}) {
    const std::string text = mesh_to_json(mesh);
    const auto back = parse_mesh_json(text);
    CHECK(back.dim() == mesh.dim());
    CHECK(back.vertices() == mesh.vertices());
    CHECK(back.simplices() == mesh.simplices());
    CHECK(back.labels() == mesh.labels());
    CHECK(mesh_to_json(back) == text);
  }
}

TEST_CASE("mesh JSON writer uses 17 significant digits") {
  const auto mesh = build_counterexample_2d(1, 0.3);
  const std::string text = mesh_to_json(mesh);
  CHECK(text.find("0.29999999999999999") != std::string::npos);
  CHECK(text.find("\"4\": \"ring 1 corner 1\"") != std::string::npos);
  CHECK(text.find("\"8\": \"center\"") != std::string::npos);
}

TEST_CASE("mesh JSON reader rejects malformed input") {
  CHECK(code_of([] { parse_mesh_json("{"); }) == ErrorCode::MalformedInput);
  CHECK(code_of([] { parse_mesh_json(R"({"dim": 2, "vertices": [[0,0]]})"); }) ==
        ErrorCode::MalformedInput);
  CHECK(code_of([] {
          parse_mesh_json(R"({"dim": 1, "vertices": [[0],[1]], "simplices": [[0,5]]})");
        }) == ErrorCode::MalformedInput);
  CHECK(code_of([] {
          parse_mesh_json(
              R"({"dim": 1, "vertices": [[0],[1]], "simplices": [[0,1]], "labels": {"x": "center"}})");
        }) == ErrorCode::MalformedInput);
  const auto ok = parse_mesh_json(R"({"dim": 1, "vertices": [[0],[1]], "simplices": [[0,1]]})");
  CHECK(ok.num_simplices() == 1);
  CHECK(ok.labels().empty());
}
