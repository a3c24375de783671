#include "projnorm/clipping.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace projnorm {
namespace {

constexpr double kZeroTolerance = 1e-14;
constexpr double kDropFraction = 1e-16;

void accumulate(std::vector<double>& values, double volume, double drop_below, SignedParts& parts) {
  if (volume < drop_below) return;
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return;
  std::size_t pos = values.size();
  std::size_t neg = values.size();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (std::abs(values[k]) <= kZeroTolerance * scale) values[k] = 0.0;
    if (values[k] > 0.0 && (pos == values.size() || values[k] > values[pos])) pos = k;
    if (values[k] < 0.0 && (neg == values.size() || values[k] < values[neg])) neg = k;
  }
  if (pos == values.size() || neg == values.size()) {
    double sum = 0.0;
    for (double v : values) sum += v;
    const double integral = volume * sum / static_cast<double>(values.size());
    (integral >= 0.0 ? parts.positive : parts.negative) += std::abs(integral);
    return;
  }
  const double vp = values[pos];
  const double vn = values[neg];
  const double s = vp / (vp - vn);  // crossing at pos + s (neg - pos)

  std::vector<double> near_pos = values;
  near_pos[neg] = 0.0;
  accumulate(near_pos, volume * s, drop_below, parts);

  values[pos] = 0.0;
  accumulate(values, volume * (1.0 - s), drop_below, parts);
}

}  // namespace

SignedParts integrate_linear_parts(std::span<const double> vertex_values, double volume) {
  SignedParts parts;
  std::vector<double> values(vertex_values.begin(), vertex_values.end());
  accumulate(values, volume, kDropFraction * volume, parts);
  return parts;
}

}  // namespace projnorm
