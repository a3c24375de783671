#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "projnorm/error.hpp"
#include "projnorm/mesh.hpp"

namespace projnorm {
namespace {

std::set<std::vector<VertexId>> simplex_set(const SimplicialMesh& mesh,
                                            const VertexPermutation* perm) {
  std::set<std::vector<VertexId>> out;
  for (const auto& s : mesh.simplices()) {
    std::vector<VertexId> ids;
    ids.reserve(s.size());
    for (VertexId v : s.vertices) ids.push_back(perm ? (*perm)[v] : v);
    std::sort(ids.begin(), ids.end());
    out.insert(std::move(ids));
  }
  return out;
}

void check_permutation(const SimplicialMesh& mesh, const VertexPermutation& perm) {
  if (perm.size() != mesh.num_vertices()) {
    throw Error(ErrorCode::InvalidParameter, "permutation size does not match vertex count");
  }
  std::vector<bool> hit(perm.size(), false);
  for (VertexId image : perm) {
    if (image >= perm.size() || hit[image]) {
      throw Error(ErrorCode::InvalidParameter, "map is not a permutation of the vertices");
    }
    hit[image] = true;
  }
}

VertexId find_root(std::vector<VertexId>& parent, VertexId v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

// Sort key: corners by ring, then the center, then apexes; ties by lowest id.
std::tuple<int, int, VertexId> orbit_key(const SimplicialMesh& mesh,
                                         const std::vector<VertexId>& orbit, bool tagged) {
  const VertexId first = orbit.front();
  if (!tagged) return {0, 0, first};
  const VertexTag tag = *mesh.tag(first);
  switch (tag.kind) {
    case VertexTag::Kind::Corner: return {0, tag.ring, first};
    case VertexTag::Kind::Center: return {1, 0, first};
    case VertexTag::Kind::Apex: return {2, 0, first};
  }
  return {3, 0, first};
}

std::map<std::string, VertexId> label_index(const SimplicialMesh& mesh) {
  if (!mesh.has_tags()) {
    throw Error(ErrorCode::MissingLabels, "mesh carries no counterexample vertex tags");
  }
  std::map<std::string, VertexId> index;
  for (const auto& [v, text] : mesh.labels()) index[format_tag(*parse_tag(text))] = v;
  return index;
}

}  // namespace

VertexPermutation identity_permutation(std::size_t n) {
  VertexPermutation perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  return perm;
}

OrbitPartition symmetry_orbits(const SimplicialMesh& mesh,
                               std::span<const VertexPermutation> generators) {
  const auto reference = simplex_set(mesh, nullptr);
  for (const auto& perm : generators) {
    check_permutation(mesh, perm);
    if (simplex_set(mesh, &perm) != reference) {
      throw Error(ErrorCode::NotASymmetry, "permutation does not map the simplex set onto itself");
    }
  }

  const auto n = mesh.num_vertices();
  std::vector<VertexId> parent = identity_permutation(n);
  for (const auto& perm : generators) {
    for (VertexId v = 0; v < n; ++v) {
      const VertexId a = find_root(parent, v);
      const VertexId b = find_root(parent, perm[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<VertexId, std::vector<VertexId>> grouped;
  for (VertexId v = 0; v < n; ++v) grouped[find_root(parent, v)].push_back(v);

  OrbitPartition partition;
  for (auto& [root, members] : grouped) partition.orbits.push_back(std::move(members));
  const bool tagged = mesh.has_tags();
  std::sort(partition.orbits.begin(), partition.orbits.end(),
            [&](const auto& a, const auto& b) {
              return orbit_key(mesh, a, tagged) < orbit_key(mesh, b, tagged);
            });
  partition.orbit_of.assign(n, 0);
  for (std::size_t k = 0; k < partition.orbits.size(); ++k) {
    for (VertexId v : partition.orbits[k]) partition.orbit_of[v] = k;
  }
  partition.generators.assign(generators.begin(), generators.end());
  return partition;
}

OrbitPartition symmetry_orbits(const SimplicialMesh& mesh, const VertexPermutation& permutation) {
  return symmetry_orbits(mesh, std::span<const VertexPermutation>(&permutation, 1));
}

VertexPermutation quarter_turn(const SimplicialMesh& mesh) {
  const auto index = label_index(mesh);
  VertexPermutation perm = identity_permutation(mesh.num_vertices());
  for (VertexId v = 0; v < mesh.num_vertices(); ++v) {
    const VertexTag tag = *mesh.tag(v);
    if (tag.kind != VertexTag::Kind::Corner) continue;
    const auto image = VertexTag::make_corner(tag.ring, tag.corner % 4 + 1);
    auto it = index.find(format_tag(image));
    if (it == index.end()) {
      throw Error(ErrorCode::MissingLabels, "no vertex tagged " + format_tag(image));
    }
    perm[v] = it->second;
  }
  return perm;
}

std::vector<VertexPermutation> counterexample_symmetries(const SimplicialMesh& mesh) {
  std::vector<VertexPermutation> generators{quarter_turn(mesh)};
  std::vector<VertexId> apexes;
  for (VertexId v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.tag(v)->kind == VertexTag::Kind::Apex) apexes.push_back(v);
  }
  for (std::size_t a = 0; a < apexes.size(); ++a) {
    for (std::size_t b = a + 1; b < apexes.size(); ++b) {
      VertexPermutation swap = identity_permutation(mesh.num_vertices());
      std::swap(swap[apexes[a]], swap[apexes[b]]);
      generators.push_back(std::move(swap));
    }
  }
  return generators;
}

}  // namespace projnorm
