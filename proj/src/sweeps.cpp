#include <cmath>
#include <ostream>

#include "projnorm/counterexample.hpp"
#include "projnorm/error.hpp"
#include "projnorm/mesh_io.hpp"

namespace projnorm {

SweepRecord sweep_point(int rings, double ratio, int dim, SweepOptions options) {
  const CounterexampleRun run = run_counterexample(rings, ratio, dim);
  const Eigen::VectorXd limit =
      dim == 2 ? limit_solution_2d(rings) : limit_system_pyramid(rings, dim).solve();

  SweepRecord record;
  record.rings = rings;
  record.ratio = ratio;
  record.dim = dim;
  record.sup_norm = run.full.spline.sup_norm();
  record.limit_error = (run.reduced_solution - limit).lpNorm<Eigen::Infinity>();
  record.ainv_bound = inverse_infinity_norm_bound(run.system);
  if (options.exact_norm) record.exact_operator_norm = exact_operator_norm(run.mesh).norm;
  return record;
}

std::vector<SweepRecord> convergence_study(int rings, std::span<const double> ratios, int dim,
                                           SweepOptions options) {
  std::vector<SweepRecord> records;
  records.reserve(ratios.size());
  for (double t : ratios) records.push_back(sweep_point(rings, t, dim, options));
  return records;
}

std::vector<SweepRecord> growth_sweep(std::span<const int> rings, double ratio, int dim,
                                      SweepOptions options) {
  std::vector<SweepRecord> records;
  records.reserve(rings.size());
  for (int j : rings) records.push_back(sweep_point(j, ratio, dim, options));
  return records;
}

double growth_slope(std::span<const SweepRecord> records) {
  if (records.size() < 2) {
    throw Error(ErrorCode::InvalidParameter, "slope needs at least two sweep points");
  }
  const double n = static_cast<double>(records.size());
  double mean_j = 0.0;
  double mean_norm = 0.0;
  for (const auto& r : records) {
    mean_j += r.rings / n;
    mean_norm += r.sup_norm / n;
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& r : records) {
    sxy += (r.rings - mean_j) * (r.sup_norm - mean_norm);
    sxx += (r.rings - mean_j) * (r.rings - mean_j);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidParameter, "slope needs distinct J values");
  return sxy / sxx;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << "J,t,d,sup_norm,exact_operator_norm,limit_error,ainv_bound\n";
  for (const auto& r : records) {
    out << r.rings << ',' << format_real(r.ratio, 12) << ',' << r.dim << ','
        << format_real(r.sup_norm, 12) << ','
        << (r.exact_operator_norm ? format_real(*r.exact_operator_norm, 12) : "") << ','
        << format_real(r.limit_error, 12) << ',' << format_real(r.ainv_bound, 12) << '\n';
  }
}

}  // namespace projnorm
