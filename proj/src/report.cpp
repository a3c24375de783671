#include "projnorm/report.hpp"

#include <ostream>

#include "projnorm/mesh_io.hpp"

namespace projnorm {

ProjectionReport make_projection_report(const SimplicialMesh& mesh, const CellwiseConstant& f) {
  ProjectionReport report;
  Projection projection = project(mesh, f);
  report.sup_norm = projection.spline.sup_norm();
  report.residual = projection.residual;
  report.projection = std::move(projection.spline);
  report.exact_norm = exact_operator_norm(mesh);
  const NormalizedSystem system = normalized_system(mesh, f);
  report.ainv_bound = inverse_infinity_norm_bound(system);
  report.c0 = min_neighbor_coefficient(mesh, system);
  if (mesh.dim() == 2 && report.c0 > 0.0) {
    report.coefficient_bound = (1.0 + 2.0 * report.c0) / (report.c0 * report.c0);
  }
  return report;
}

void write_report_json(std::ostream& out, const SimplicialMesh& mesh,
                       const ProjectionReport& report) {
  auto real = [](double v) { return format_real(v, 17); };
  out << "{\n  \"mesh\": ";
  write_mesh_json(out, mesh, 2);
  out << ",\n  \"nodal_values\": [";
  const auto& values = report.projection.nodal_values;
  for (std::size_t k = 0; k < values.size(); ++k) out << (k ? ", " : "") << real(values[k]);
  out << "],\n  \"sup_norm\": " << real(report.sup_norm)
      << ",\n  \"residual\": " << real(report.residual)
      << ",\n  \"exact_operator_norm\": " << real(report.exact_norm.norm)
      << ",\n  \"ainv_bound\": " << real(report.ainv_bound)
      << ",\n  \"c0\": " << real(report.c0)
      << ",\n  \"prop1_bound\": " << (report.coefficient_bound ? real(*report.coefficient_bound) : "null")
      << "\n}\n";
}

}  // namespace projnorm
