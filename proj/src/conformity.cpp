#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "projnorm/error.hpp"
#include "projnorm/mesh.hpp"

namespace projnorm {
namespace {

constexpr double kBarycentricTolerance = 1e-10;

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

Box bounding_box(const SimplicialMesh& mesh, const Simplex& s) {
  const auto d = static_cast<std::size_t>(mesh.dim());
  Box box{std::vector<double>(d, 1e308), std::vector<double>(d, -1e308)};
  for (VertexId v : s.vertices) {
    const Point& p = mesh.vertex(v);
    for (std::size_t r = 0; r < d; ++r) {
      box.lo[r] = std::min(box.lo[r], p[r]);
      box.hi[r] = std::max(box.hi[r], p[r]);
    }
  }
  return box;
}

bool boxes_touch(const Box& a, const Box& b) {
  for (std::size_t r = 0; r < a.lo.size(); ++r) {
    const double slack = 1e-12 * std::max({1.0, std::abs(a.hi[r]), std::abs(b.hi[r])});
    if (a.hi[r] + slack < b.lo[r] || b.hi[r] + slack < a.lo[r]) return false;
  }
  return true;
}

// Affine frame of a non-degenerate simplex, used to evaluate barycentric coordinates.
struct Frame {
  Eigen::VectorXd origin;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

Eigen::VectorXd as_vector(const Point& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.coords.data(), static_cast<Eigen::Index>(p.dim()));
}

Frame make_frame(const SimplicialMesh& mesh, const Simplex& s) {
  const int d = mesh.dim();
  Frame frame{as_vector(mesh.vertex(s.vertices[0])), {}};
  Eigen::MatrixXd edges(d, d);
  for (int k = 0; k < d; ++k) edges.col(k) = as_vector(mesh.vertex(s.vertices[k + 1])) - frame.origin;
  frame.lu.compute(edges);
  return frame;
}

bool inside_closed(const Frame& frame, const Point& p) {
  const Eigen::VectorXd tail = frame.lu.solve(as_vector(p) - frame.origin);
  const double head = 1.0 - tail.sum();
  return head >= -kBarycentricTolerance && tail.minCoeff() >= -kBarycentricTolerance;
}

// True when the open segment a-b meets the relative interior of the facet.
bool segment_crosses_facet(const SimplicialMesh& mesh, VertexId a, VertexId b,
                           const std::vector<VertexId>& facet) {
  const int d = mesh.dim();
  const Eigen::VectorXd pa = as_vector(mesh.vertex(a));
  const Eigen::VectorXd pb = as_vector(mesh.vertex(b));
  const Eigen::VectorXd f0 = as_vector(mesh.vertex(facet[0]));
  Eigen::MatrixXd system(d, d);
  system.col(0) = pb - pa;
  for (int k = 1; k < d; ++k) system.col(k) = f0 - as_vector(mesh.vertex(facet[k]));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd sol = lu.solve(f0 - pa);
  const double s = sol[0];
  if (!(s > kBarycentricTolerance && s < 1.0 - kBarycentricTolerance)) return false;
  double head = 1.0;
  for (int k = 1; k < d; ++k) {
    if (!(sol[k] > kBarycentricTolerance)) return false;
    head -= sol[k];
  }
  return head > kBarycentricTolerance;
}

std::vector<std::vector<VertexId>> facets_of(const Simplex& s) {
  std::vector<std::vector<VertexId>> facets;
  for (std::size_t skip = 0; skip < s.size(); ++skip) {
    std::vector<VertexId> facet;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k != skip) facet.push_back(s.vertices[k]);
    }
    facets.push_back(std::move(facet));
  }
  return facets;
}

std::optional<std::string> pair_conflict(const SimplicialMesh& mesh, const Simplex& first,
                                         const Frame& first_frame, const Simplex& second,
                                         const Frame& second_frame) {
  for (VertexId v : second.vertices) {
    if (!first.contains(v) && inside_closed(first_frame, mesh.vertex(v))) {
      return "vertex " + std::to_string(v) + " lies in a simplex it does not belong to";
    }
  }
  for (VertexId v : first.vertices) {
    if (!second.contains(v) && inside_closed(second_frame, mesh.vertex(v))) {
      return "vertex " + std::to_string(v) + " lies in a simplex it does not belong to";
    }
  }
  if (mesh.dim() < 2) return std::nullopt;
  const std::pair<const Simplex*, const Simplex*> orders[] = {{&first, &second},
                                                              {&second, &first}};
  for (const auto& [edge_owner, facet_owner] : orders) {
    const Simplex& edges_from = *edge_owner;
    const auto facets = facets_of(*facet_owner);
    for (std::size_t a = 0; a < edges_from.size(); ++a) {
      for (std::size_t b = a + 1; b < edges_from.size(); ++b) {
        for (const auto& facet : facets) {
          if (segment_crosses_facet(mesh, edges_from.vertices[a], edges_from.vertices[b], facet)) {
            return "edge " + std::to_string(edges_from.vertices[a]) + "-" +
                   std::to_string(edges_from.vertices[b]) + " crosses a facet";
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Violation> validate_conformity(const SimplicialMesh& mesh) {
  std::vector<Violation> violations;
  const auto n_simplices = mesh.num_simplices();

  std::vector<bool> usable(n_simplices, true);
  for (SimplexId s = 0; s < n_simplices; ++s) {
    try {
      simplex_volume(mesh, s);
    } catch (const Error& e) {
      usable[s] = false;
      violations.push_back({Violation::Kind::DegenerateSimplex, {s}, e.what()});
    }
  }

  std::map<std::vector<VertexId>, SimplexId> seen;
  for (SimplexId s = 0; s < n_simplices; ++s) {
    auto key = mesh.simplex(s).vertices;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = seen.emplace(std::move(key), s);
    if (!inserted) {
      usable[s] = false;
      violations.push_back({Violation::Kind::DuplicateSimplex, {it->second, s},
                            "simplex " + std::to_string(s) + " repeats simplex " +
                                std::to_string(it->second)});
    }
  }

  for (VertexId v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.incident_simplices(v).empty()) {
      violations.push_back({Violation::Kind::UnreferencedVertex, {},
                            "vertex " + std::to_string(v) + " belongs to no simplex"});
    }
  }

  std::map<std::vector<VertexId>, std::vector<SimplexId>> facet_owners;
  for (SimplexId s = 0; s < n_simplices; ++s) {
    if (!usable[s]) continue;
    for (auto facet : facets_of(mesh.simplex(s))) {
      std::sort(facet.begin(), facet.end());
      facet_owners[std::move(facet)].push_back(s);
    }
  }
  for (const auto& [facet, owners] : facet_owners) {
    if (owners.size() > 2) {
      violations.push_back({Violation::Kind::OvershareFacet, owners,
                            "a facet is shared by " + std::to_string(owners.size()) + " simplices"});
    }
  }

  std::vector<Box> boxes;
  std::vector<std::optional<Frame>> frames(n_simplices);
  boxes.reserve(n_simplices);
  for (SimplexId s = 0; s < n_simplices; ++s) {
    boxes.push_back(bounding_box(mesh, mesh.simplex(s)));
    if (usable[s]) frames[s] = make_frame(mesh, mesh.simplex(s));
  }
  for (SimplexId a = 0; a < n_simplices; ++a) {
    if (!usable[a]) continue;
    for (SimplexId b = a + 1; b < n_simplices; ++b) {
      if (!usable[b] || !boxes_touch(boxes[a], boxes[b])) continue;
      if (auto conflict =
              pair_conflict(mesh, mesh.simplex(a), *frames[a], mesh.simplex(b), *frames[b])) {
        violations.push_back({Violation::Kind::NonConformingPair, {a, b},
                              "simplices " + std::to_string(a) + " and " + std::to_string(b) +
                                  ": " + *conflict});
      }
    }
  }
  return violations;
}

}  // namespace projnorm
