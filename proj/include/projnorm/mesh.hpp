#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace projnorm {

using VertexId = std::size_t;
using SimplexId = std::size_t;

/// A point in R^d.
struct Point {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const Point&, const Point&) = default;
};

/// A d-simplex given by d+1 distinct indices into the vertex table.
struct Simplex {
  std::vector<VertexId> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
  bool contains(VertexId v) const noexcept;

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Symbolic role of a vertex in the counterexample partitions: corner i of the
/// nested square with ring index j, the common center, or an apex e^m.
struct VertexTag {
  enum class Kind { Corner, Center, Apex };

  Kind kind = Kind::Corner;
  int ring = 0;
  int corner = 0;
  int apex = 0;

  static VertexTag make_corner(int ring, int corner) { return {Kind::Corner, ring, corner, 0}; }
  static VertexTag make_center() { return {Kind::Center, 0, 0, 0}; }
  static VertexTag make_apex(int m) { return {Kind::Apex, 0, 0, m}; }

  friend bool operator==(const VertexTag&, const VertexTag&) = default;
};

/// "ring 2 corner 3", "center", "apex 4".
std::string format_tag(const VertexTag& tag);
std::optional<VertexTag> parse_tag(std::string_view text);

/// Conforming simplicial partition. Immutable after construction; the
/// constructor checks structural invariants only (index ranges, distinct
/// vertices per simplex, finite coordinates). Geometric validity is reported
/// by validate_conformity.
class SimplicialMesh {
 public:
  SimplicialMesh(int dim, std::vector<Point> vertices, std::vector<Simplex> simplices,
                 std::map<VertexId, std::string> labels = {});

  int dim() const noexcept { return dim_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_simplices() const noexcept { return simplices_.size(); }

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& vertex(VertexId v) const { return vertices_.at(v); }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  const Simplex& simplex(SimplexId s) const { return simplices_.at(s); }

  const std::map<VertexId, std::string>& labels() const noexcept { return labels_; }
  std::optional<VertexTag> tag(VertexId v) const;
  bool has_tags() const;

  std::span<const SimplexId> incident_simplices(VertexId v) const;

 private:
  int dim_;
  std::vector<Point> vertices_;
  std::vector<Simplex> simplices_;
  std::map<VertexId, std::string> labels_;
  std::vector<std::vector<SimplexId>> incidence_;
};

/// Underflow guard for simplex volumes; not a quality threshold.
inline constexpr double kVolumeEpsilon = 1e-300;

// Constructors. All throw Error(InvalidParameter) on bad arguments.

/// Nested-squares triangulation T_J of [-1,1]^2: 4J+5 vertices, 8J+4 triangles.
SimplicialMesh build_counterexample_2d(int rings, double ratio);

/// d-dimensional partition: every triangle of T_J joined with the apexes e^3..e^d.
SimplicialMesh build_pyramid_partition(int rings, double ratio, int dim);

/// n x n grid on [0,1]^2, each cell split along its (i,j)-(i+1,j+1) diagonal.
SimplicialMesh build_uniform_square(int n);

SimplicialMesh build_interval_partition(std::span<const double> breakpoints);

// Geometry.

double simplex_volume(const SimplicialMesh& mesh, const Simplex& simplex);
double simplex_volume(const SimplicialMesh& mesh, SimplexId s);
std::vector<double> simplex_volumes(const SimplicialMesh& mesh);

struct AngleStats {
  double min_angle;
  double max_angle;
};
AngleStats angle_stats(const SimplicialMesh& mesh);

struct VertexStar {
  VertexId center;
  std::vector<SimplexId> simplices;
  std::vector<VertexId> neighbors;  // sorted
};
VertexStar vertex_star(const SimplicialMesh& mesh, VertexId p);

/// Unordered vertex pairs sharing a simplex, each listed once with first < second.
std::vector<std::pair<VertexId, VertexId>> mesh_edges(const SimplicialMesh& mesh);

// Conformity.

struct Violation {
  enum class Kind {
    BadSimplex,
    DegenerateSimplex,
    DuplicateSimplex,
    UnreferencedVertex,
    OvershareFacet,
    NonConformingPair,
  };
  Kind kind;
  std::vector<SimplexId> simplices;
  std::string message;
};

std::vector<Violation> validate_conformity(const SimplicialMesh& mesh);

// Symmetry.

/// perm[v] is the image of vertex v.
using VertexPermutation = std::vector<VertexId>;

struct OrbitPartition {
  std::vector<std::vector<VertexId>> orbits;  // each sorted; orbits ordered canonically
  std::vector<std::size_t> orbit_of;          // orbit index per vertex
  std::vector<VertexPermutation> generators;

  std::size_t size() const noexcept { return orbits.size(); }
};

/// Orbits of the group generated by the given permutations. Every generator
/// must map the simplex set onto itself (Error NotASymmetry otherwise).
/// Orbits of tagged meshes are ordered by ring index, then center, then apex;
/// untagged meshes order orbits by smallest vertex id.
OrbitPartition symmetry_orbits(const SimplicialMesh& mesh,
                               std::span<const VertexPermutation> generators);
OrbitPartition symmetry_orbits(const SimplicialMesh& mesh, const VertexPermutation& permutation);

VertexPermutation identity_permutation(std::size_t n);

/// Rotation by 90 degrees (corner i -> i+1) of a tagged counterexample mesh.
VertexPermutation quarter_turn(const SimplicialMesh& mesh);

/// Quarter turn plus every transposition of two apexes.
std::vector<VertexPermutation> counterexample_symmetries(const SimplicialMesh& mesh);

}  // namespace projnorm
