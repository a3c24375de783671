#include "projnorm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "projnorm/error.hpp"

namespace projnorm {

bool Simplex::contains(VertexId v) const noexcept {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

std::string format_tag(const VertexTag& tag) {
  switch (tag.kind) {
    case VertexTag::Kind::Corner:
      return "ring " + std::to_string(tag.ring) + " corner " + std::to_string(tag.corner);
    case VertexTag::Kind::Center:
      return "center";
    case VertexTag::Kind::Apex:
      return "apex " + std::to_string(tag.apex);
  }
  return {};
}

std::optional<VertexTag> parse_tag(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word;
  if (!(in >> word)) return std::nullopt;
  std::string rest;
  if (word == "center") {
    if (in >> rest) return std::nullopt;
    return VertexTag::make_center();
  }
  if (word == "apex") {
    int m = 0;
    if (!(in >> m) || (in >> rest)) return std::nullopt;
    return VertexTag::make_apex(m);
  }
  if (word == "ring") {
    int j = 0;
    int i = 0;
    std::string corner_word;
    if (!(in >> j >> corner_word >> i) || corner_word != "corner" || (in >> rest)) {
      return std::nullopt;
    }
    return VertexTag::make_corner(j, i);
  }
  return std::nullopt;
}

SimplicialMesh::SimplicialMesh(int dim, std::vector<Point> vertices,
                               std::vector<Simplex> simplices,
                               std::map<VertexId, std::string> labels)
    : dim_(dim),
      vertices_(std::move(vertices)),
      simplices_(std::move(simplices)),
      labels_(std::move(labels)) {
  if (dim_ < 1) throw Error(ErrorCode::InvalidParameter, "mesh dimension must be >= 1");
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto& p = vertices_[v];
    if (p.dim() != static_cast<std::size_t>(dim_)) {
      throw Error(ErrorCode::InvalidParameter,
                  "vertex " + std::to_string(v) + " has wrong coordinate count");
    }
    for (double c : p.coords) {
      if (!std::isfinite(c)) {
        throw Error(ErrorCode::InvalidParameter,
                    "vertex " + std::to_string(v) + " has a non-finite coordinate");
      }
    }
  }
  incidence_.resize(vertices_.size());
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    const auto& ids = simplices_[s].vertices;
    if (ids.size() != static_cast<std::size_t>(dim_) + 1) {
      throw Error(ErrorCode::InvalidParameter,
                  "simplex " + std::to_string(s) + " needs exactly d+1 vertices");
    }
    std::vector<VertexId> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::InvalidParameter,
                  "simplex " + std::to_string(s) + " repeats a vertex");
    }
    for (VertexId v : ids) {
      if (v >= vertices_.size()) {
        throw Error(ErrorCode::InvalidVertex,
                    "simplex " + std::to_string(s) + " references vertex " + std::to_string(v));
      }
      incidence_[v].push_back(s);
    }
  }
  for (const auto& [v, text] : labels_) {
    if (v >= vertices_.size()) {
      throw Error(ErrorCode::InvalidVertex, "label for missing vertex " + std::to_string(v));
    }
  }
}

std::optional<VertexTag> SimplicialMesh::tag(VertexId v) const {
  auto it = labels_.find(v);
  if (it == labels_.end()) return std::nullopt;
  return parse_tag(it->second);
}

bool SimplicialMesh::has_tags() const {
  if (labels_.size() != vertices_.size()) return false;
  return std::all_of(labels_.begin(), labels_.end(),
                     [](const auto& kv) { return parse_tag(kv.second).has_value(); });
}

std::span<const SimplexId> SimplicialMesh::incident_simplices(VertexId v) const {
  if (v >= incidence_.size()) {
    throw Error(ErrorCode::InvalidVertex, "no vertex " + std::to_string(v));
  }
  return incidence_[v];
}

}  // namespace projnorm
