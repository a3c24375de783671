#include <doctest.h>

#include <numeric>
#include <sstream>

#include "projnorm/counterexample.hpp"
#include "projnorm/dense_solver.hpp"
#include "projnorm/error.hpp"

using namespace projnorm;

namespace {

int count_value(const CellwiseConstant& f, double v) {
  return static_cast<int>(std::count(f.values.begin(), f.values.end(), v));
}

}  // namespace

TEST_CASE("oscillating data") {
  SUBCASE("one ring") {
    const auto f = oscillating_data(build_counterexample_2d(1, 0.3));
    CHECK(f.values.size() == 12);
    CHECK(count_value(f, -1.0) == 8);
    CHECK(count_value(f, 1.0) == 4);
    CHECK(f.sup_norm() == 1.0);
  }
  SUBCASE("two rings alternate inward") {
    const auto mesh = build_counterexample_2d(2, 0.3);
    const auto f = oscillating_data(mesh);
    for (SimplexId s = 0; s < mesh.num_simplices(); ++s) {
      const int ring = simplex_ring(mesh, s);
      CHECK(f.values[s] == (ring % 2 == 0 ? 1.0 : -1.0));
    }
    CHECK(count_value(f, -1.0) == 8 + 4);
    CHECK(count_value(f, 1.0) == 8);
  }
  SUBCASE("pyramid simplices inherit the base value") {
    const auto base = build_counterexample_2d(1, 0.3);
    const auto pyramid = build_pyramid_partition(1, 0.3, 3);
    CHECK(oscillating_data(pyramid).values == oscillating_data(base).values);
  }
  SUBCASE("untagged mesh") {
    try {
      oscillating_data(build_uniform_square(2));
      FAIL("expected MissingLabels");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingLabels);
    }
  }
}

TEST_CASE("symmetry reduction") {
  SUBCASE("dimensions") {
    for (int J = 1; J <= 6; ++J) {
      CHECK(run_counterexample(J, 0.1, 2).reduced.matrix.rows() == J + 2);
      CHECK(run_counterexample(J, 0.1, 3).reduced.matrix.rows() == J + 3);
    }
    CHECK(run_counterexample(2, 0.1, 4).reduced.matrix.rows() == 5);
  }
  SUBCASE("identity orbits leave the system unchanged") {
    const auto mesh = build_counterexample_2d(2, 0.2);
    const auto system = normalized_system(mesh, oscillating_data(mesh));
    const auto orbits = symmetry_orbits(mesh, identity_permutation(mesh.num_vertices()));
    const auto reduced = reduce_by_symmetry(system, orbits);
    CHECK((reduced.matrix - system.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK((reduced.rhs - system.rhs).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("data breaking the symmetry is rejected") {
    const auto mesh = build_counterexample_2d(2, 0.2);
    auto f = oscillating_data(mesh);
    f.values[0] = -f.values[0];
    const auto system = normalized_system(mesh, f);
    const auto orbits = symmetry_orbits(mesh, counterexample_symmetries(mesh));
    try {
      reduce_by_symmetry(system, orbits);
      FAIL("expected NotEquivariant");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotEquivariant);
    }
  }
  SUBCASE("expanded reduced solution solves the full system") {
    for (int d : {2, 3, 4}) {
      for (int J = 1; J <= 5; ++J) {
        for (double t : {0.3, 0.05, 0.01}) {
          const auto run = run_counterexample(J, t, d);
          const Eigen::VectorXd expanded = run.reduced.expand(run.reduced_solution);
          const Eigen::VectorXd direct = solve_general(run.system.matrix, run.system.rhs);
          const double scale = direct.lpNorm<Eigen::Infinity>();
          CHECK((expanded - direct).lpNorm<Eigen::Infinity>() <= 1e-9 * scale);
          CHECK((expanded - run.full.spline.vector()).lpNorm<Eigen::Infinity>() <= 1e-9 * scale);
        }
      }
    }
  }
}

TEST_CASE("reduced matrix structure") {
  SUBCASE("tridiagonal for the planar mesh") {
    for (int J = 1; J <= 8; ++J) {
      for (double t : {0.3, 0.01}) {
        const auto& a = run_counterexample(J, t, 2).reduced.matrix;
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
          for (Eigen::Index c = 0; c < a.cols(); ++c) {
            if (std::abs(r - c) > 1) CHECK(std::abs(a(r, c)) <= 1e-14);
          }
        }
      }
    }
  }
  SUBCASE("pyramid couples every orbit to the apex only") {
    const auto& a = run_counterexample(4, 0.1, 3).reduced.matrix;
    const Eigen::Index apex = a.rows() - 1;
    for (Eigen::Index r = 0; r < apex; ++r) {
      for (Eigen::Index c = 0; c < apex; ++c) {
        if (std::abs(r - c) > 1) CHECK(std::abs(a(r, c)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("planar limit system") {
  SUBCASE("one ring") {
    const auto limit = limit_system_2d(1);
    Eigen::MatrixXd expected(3, 3);
    expected << 1.5, 0.5, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0;
    CHECK(limit.matrix == expected);
    CHECK(limit.rhs == Eigen::Vector3d(-2.0, -2.0, 2.0));
    const Eigen::VectorXd x = limit.solve();
    CHECK((x - Eigen::Vector3d(-1.0, -1.0, 3.0)).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
  SUBCASE("closed form") {
    Eigen::VectorXd three(5);
    three << -1.0, -1.0, 3.0, -5.0, 7.0;
    CHECK(limit_solution_2d(3) == three);
    CHECK(limit_solution_2d(4)[5] == -9.0);
    CHECK(limit_solution_2d(2).lpNorm<Eigen::Infinity>() == 5.0);
    for (int J = 1; J <= 20; ++J) {
      const auto limit = limit_system_2d(J);
      CHECK(std::abs(limit.matrix.determinant()) > 0.5);
      CHECK((limit.solve() - limit_solution_2d(J)).lpNorm<Eigen::Infinity>() <= 1e-12);
      CHECK(limit_solution_2d(J).lpNorm<Eigen::Infinity>() == 2.0 * J + 1.0);
    }
  }
  SUBCASE("invalid ring count") {
    CHECK_THROWS_AS(limit_system_2d(0), Error);
    CHECK_THROWS_AS(limit_solution_2d(-1), Error);
  }
}

TEST_CASE("pyramid limit system") {
  const auto three = limit_system_pyramid(1, 3);
  CHECK(three.matrix.rows() == 4);
  for (Eigen::Index j = 0; j <= 2; ++j) {
    CHECK(three.matrix(j, 3) == 0.5);
    CHECK(std::abs(three.rhs[j]) == 2.5);
  }
  CHECK(three.matrix(3, 3) == 1.0);
  CHECK(limit_system_pyramid(2, 4).matrix(4, 4) == 1.5);
  CHECK(std::abs(limit_system_pyramid(5, 3).matrix.determinant()) > 0.0);
  CHECK_THROWS_AS(limit_system_pyramid(1, 2), Error);

  std::vector<double> j_values;
  std::vector<double> norms;
  for (int J = 2; J <= 10; ++J) {
    j_values.push_back(J);
    norms.push_back(limit_system_pyramid(J, 3).solve().lpNorm<Eigen::Infinity>());
  }
  const double mj = std::accumulate(j_values.begin(), j_values.end(), 0.0) / j_values.size();
  const double mn = std::accumulate(norms.begin(), norms.end(), 0.0) / norms.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    sxy += (j_values[k] - mj) * (norms[k] - mn);
    sxx += (j_values[k] - mj) * (j_values[k] - mj);
  }
  CHECK(sxy / sxx > 0.5);
}

TEST_CASE("reduced system approaches the limit system") {
  SUBCASE("planar entries converge") {
    for (int J : {1, 3, 5}) {
      const auto limit = limit_system_2d(J);
      double previous = 1e300;
      for (double t : {0.1, 0.01, 1e-3, 1e-4}) {
        const auto run = run_counterexample(J, t, 2);
        const double gap = (run.reduced.matrix - limit.matrix).cwiseAbs().maxCoeff();
        CHECK(gap < previous);
        previous = gap;
      }
      CHECK(previous <= 1e-3);
    }
  }
  SUBCASE("super-diagonal is quadratic in t") {
    const int J = 3;
    for (Eigen::Index row = 1; row <= J; ++row) {
      const double at_t = run_counterexample(J, 0.01, 2).reduced.matrix(row, row + 1);
      const double at_half = run_counterexample(J, 0.005, 2).reduced.matrix(row, row + 1);
      CHECK(at_t > 0.0);
      CHECK(at_half / at_t == doctest::Approx(0.25).epsilon(0.05));
    }
  }
  SUBCASE("pyramid entries within 0.05 at small t") {
    for (int d : {3, 4}) {
      const auto run = run_counterexample(3, 1e-3, d);
      const auto limit = limit_system_pyramid(3, d);
      CHECK((run.reduced.matrix - limit.matrix).cwiseAbs().maxCoeff() <= 0.05);
      CHECK((run.reduced.rhs - limit.rhs).cwiseAbs().maxCoeff() <= 0.05);
    }
  }
}

TEST_CASE("convergence study") {
  const std::vector<double> ratios{0.2, 0.1, 0.05};
  const auto records = convergence_study(2, ratios);
  REQUIRE(records.size() == 3);
  CHECK(records[1].limit_error < records[0].limit_error);
  CHECK(records[2].limit_error < records[1].limit_error);
  // O(t): halving t at most about halves the error.
  CHECK(records[2].limit_error / records[1].limit_error >= 0.4);

  const std::vector<double> tiny{1e-3};
  const auto close = convergence_study(2, tiny);
  CHECK(close[0].sup_norm >= 4.9);
  CHECK(close[0].sup_norm <= 5.1);
}

TEST_CASE("growth sweep") {
  const std::vector<int> five{5};
  const auto planar = growth_sweep(five, 0.01, 2);
  CHECK(planar[0].sup_norm == doctest::Approx(11.0).epsilon(0.05));
  REQUIRE(planar[0].exact_operator_norm.has_value());
  CHECK(planar[0].sup_norm <= *planar[0].exact_operator_norm);
  CHECK(*planar[0].exact_operator_norm <= planar[0].ainv_bound + 1e-8);

  std::vector<int> rings;
  for (int J = 2; J <= 8; ++J) rings.push_back(J);
  const auto spatial = growth_sweep(rings, 0.01, 3, SweepOptions{false});
  CHECK(growth_slope(spatial) >= 0.5);
  for (const auto& r : spatial) CHECK_FALSE(r.exact_operator_norm.has_value());

  CHECK_THROWS_AS(growth_slope(std::span<const SweepRecord>(spatial.data(), 1)), Error);
}

TEST_CASE("2J lower bound at small ratio") {
  for (int J = 1; J <= 8; ++J) {
    const auto r = sweep_point(J, 1e-3, 2, SweepOptions{false});
    CHECK(r.sup_norm >= 2.0 * J);
  }
}

TEST_CASE("nodal values alternate with the ring index") {
  for (int J = 2; J <= 5; ++J) {
    const auto run = run_counterexample(J, 0.01, 2);
    for (Eigen::Index j = 2; j <= J + 1; ++j) {
      const double expected_sign = j % 2 == 0 ? 1.0 : -1.0;
      CHECK(run.reduced_solution[j] * expected_sign > 0.0);
    }
  }
}

TEST_CASE("witness never exceeds the exact norm") {
  for (int J = 1; J <= 4; ++J) {
    for (double t : {0.3, 0.01}) {
      const auto r = sweep_point(J, t, 2);
      CHECK(r.sup_norm <= *r.exact_operator_norm + 1e-10);
    }
  }
  const auto r = sweep_point(2, 0.1, 3);
  CHECK(r.sup_norm <= *r.exact_operator_norm + 1e-10);
}

TEST_CASE("sweep CSV") {
  const std::vector<int> rings{1, 2};
  auto records = growth_sweep(rings, 0.1, 2);
  records[1].exact_operator_norm.reset();
  std::ostringstream out;
  write_sweep_csv(out, records);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "J,t,d,sup_norm,exact_operator_norm,limit_error,ainv_bound");
  std::getline(in, line);
  CHECK(line.rfind("1,0.1,2,", 0) == 0);
  CHECK(std::count(line.begin(), line.end(), ',') == 6);
  std::getline(in, line);
  CHECK(line.find(",,") != std::string::npos);
  CHECK_FALSE(std::getline(in, line));

  std::ostringstream again;
  write_sweep_csv(again, records);
  CHECK(again.str() == out.str());
}
