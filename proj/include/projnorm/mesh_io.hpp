#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "projnorm/mesh.hpp"

namespace projnorm {

/// printf-style "%.<digits>g" rendering used by every text writer.
std::string format_real(double value, int significant_digits);

/// Mesh JSON: {"dim", "vertices", "simplices", "labels"} with 17 significant digits.
void write_mesh_json(std::ostream& out, const SimplicialMesh& mesh, int indent = 0);
std::string mesh_to_json(const SimplicialMesh& mesh);

/// Throws Error(MalformedInput) on schema violations.
SimplicialMesh parse_mesh_json(std::string_view text);
SimplicialMesh read_mesh_file(const std::string& path);

}  // namespace projnorm
