#pragma once

#include <span>

namespace projnorm {

struct SignedParts {
  double positive = 0.0;  // integral of max(g, 0)
  double negative = 0.0;  // integral of max(-g, 0)

  double absolute() const noexcept { return positive + negative; }
};

/// Exact integrals of the positive and negative parts of a linear function over
/// a simplex, given its values at the d+1 vertices and the simplex volume.
///
/// The simplex is cut recursively along sign-changing edges at the zero of the
/// function. Each cut replaces one endpoint by the crossing point, so the two
/// children have volume fractions s and 1-s, and the count of sign-changing
/// edges drops in both. Leaves are one-signed and integrate exactly as
/// volume times the mean vertex value.
SignedParts integrate_linear_parts(std::span<const double> vertex_values, double volume);

inline double integrate_abs_linear(std::span<const double> vertex_values, double volume) {
  return integrate_linear_parts(vertex_values, volume).absolute();
}

}  // namespace projnorm
