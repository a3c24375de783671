#pragma once

#include <iosfwd>
#include <optional>

#include "projnorm/mesh.hpp"
#include "projnorm/projection.hpp"

namespace projnorm {

struct ProjectionReport {
  SplineFunction projection;
  double sup_norm = 0.0;
  double residual = 0.0;
  OperatorNorm exact_norm;
  double ainv_bound = 0.0;
  double c0 = 0.0;
  std::optional<double> coefficient_bound;  // 2D only
};

ProjectionReport make_projection_report(const SimplicialMesh& mesh, const CellwiseConstant& f);

/// {"mesh", "nodal_values", "sup_norm", "residual", "exact_operator_norm",
///  "ainv_bound", "c0", "prop1_bound"}; reals with 17 significant digits.
void write_report_json(std::ostream& out, const SimplicialMesh& mesh,
                       const ProjectionReport& report);

}  // namespace projnorm
