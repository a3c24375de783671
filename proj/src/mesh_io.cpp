#include "projnorm/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "projnorm/error.hpp"

namespace projnorm {

std::string format_real(double value, int significant_digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
  return buffer;
}

void write_mesh_json(std::ostream& out, const SimplicialMesh& mesh, int indent) {
  const std::string pad(indent, ' ');
  out << "{\n" << pad << "  \"dim\": " << mesh.dim() << ",\n" << pad << "  \"vertices\": [";
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    out << (v ? ",\n" : "\n") << pad << "    [";
    const auto& coords = mesh.vertex(v).coords;
    for (std::size_t r = 0; r < coords.size(); ++r) {
      out << (r ? ", " : "") << format_real(coords[r], 17);
    }
    out << ']';
  }
  out << '\n' << pad << "  ],\n" << pad << "  \"simplices\": [";
  for (std::size_t s = 0; s < mesh.num_simplices(); ++s) {
    out << (s ? ",\n" : "\n") << pad << "    [";
    const auto& ids = mesh.simplex(s).vertices;
    for (std::size_t k = 0; k < ids.size(); ++k) out << (k ? ", " : "") << ids[k];
    out << ']';
  }
  out << '\n' << pad << "  ],\n" << pad << "  \"labels\": {";
  bool first = true;
  for (const auto& [v, text] : mesh.labels()) {
    out << (first ? "\n" : ",\n") << pad << "    \"" << v << "\": " << nlohmann::json(text).dump();
    first = false;
  }
  out << (first ? "" : "\n" + pad + "  ") << "}\n" << pad << '}';
}

std::string mesh_to_json(const SimplicialMesh& mesh) {
  std::ostringstream out;
  write_mesh_json(out, mesh);
  out << '\n';
  return out.str();
}

SimplicialMesh parse_mesh_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("mesh JSON: ") + e.what());
  }
  try {
    const int dim = doc.at("dim").get<int>();
    std::vector<Point> vertices;
    for (const auto& row : doc.at("vertices")) {
      vertices.push_back(Point{row.get<std::vector<double>>()});
    }
    std::vector<Simplex> simplices;
    for (const auto& row : doc.at("simplices")) {
      simplices.push_back(Simplex{row.get<std::vector<VertexId>>()});
    }
    std::map<VertexId, std::string> labels;
    if (auto it = doc.find("labels"); it != doc.end()) {
      for (const auto& [key, value] : it->items()) {
        std::size_t used = 0;
        const unsigned long id = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument("label key " + key);
        labels[id] = value.get<std::string>();
      }
    }
    return SimplicialMesh(dim, std::move(vertices), std::move(simplices), std::move(labels));
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("mesh JSON: ") + e.what());
  }
}

SimplicialMesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mesh_json(buffer.str());
}

}  // namespace projnorm
