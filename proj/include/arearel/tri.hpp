#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace arearel {

/// Oriented triangle: vertex ids listed counterclockwise.
using Triangle = std::array<int, 3>;

/// Combinatorial triangulation of a square.
///
/// Vertices are numbered 0..vertex_count-1. The four corners are listed in the
/// cyclic order induced by the orientation (p, q, r, s), and every triangle is
/// listed with that same orientation, so the boundary is traversed
/// p -> q -> r -> s -> p.
struct Triangulation {
  int vertex_count = 0;
  std::array<int, 4> corners{0, 1, 2, 3};
  std::vector<Triangle> triangles;
  std::string name;

  int interior_count() const { return vertex_count - 4; }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  bool is_corner(int v) const;
};

enum class ViolationKind {
  NonSimplicial,
  BadBoundary,
  OrientationClash,
  CountMismatch,
  DiskTopology,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::string to_string(ViolationKind kind);

/// Empty result means the triangulation is valid.
std::vector<Violation> validate(const Triangulation& t);

/// Throws std::invalid_argument listing every violation.
void require_valid(const Triangulation& t);

/// All subdivision-free triangulations with `interior` interior vertices, one
/// per isomorphism class (dihedral symmetries of the square allowed), sorted by
/// canonical code. Supported for 0 <= interior <= 5.
std::vector<Triangulation> enumerate(int interior);

/// Same as enumerate() but keeps triangulations that contain subdivisions.
std::vector<Triangulation> enumerate_all(int interior);

/// First (lexicographically smallest) vertex triple that is pairwise joined by
/// edges but spans no triangle.
std::optional<std::array<int, 3>> has_subdivision(const Triangulation& t);
std::vector<std::array<int, 3>> subdivisions(const Triangulation& t);

/// Contracts the interior edge {a, b}. Returns nullopt when the contracted
/// complex would not be a triangulation of the square: {a, b} lies in a
/// subdivision, or both endpoints are corners. A corner endpoint survives;
/// otherwise the smaller id survives and higher ids shift down by one.
/// Throws std::invalid_argument if {a, b} is not an edge or lies on the boundary.
std::optional<Triangulation> contract_edge(const Triangulation& t, int a, int b);

/// Isomorphism invariant: equal iff the triangulations are isomorphic by a map
/// that sends corners to corners (rotations and reflections of the square,
/// reflections reversing orientation).
std::string canonical_code(const Triangulation& t);

/// Relabeling of `t` with vertex ids assigned by the canonical traversal.
/// If `triangle_map` is given, entry i receives the index in the result of
/// triangle i of `t`.
Triangulation canonical_form(const Triangulation& t, std::vector<int>* triangle_map = nullptr);

/// parts == 3: a new vertex joined to the three corners of triangle `tri`.
///   Triangle `tri` keeps its slot for the first part; the other two parts are
///   appended, so p_T' = p_T with A_tri replaced by A_tri + A_n + A_{n+1}.
/// parts == 2: a new vertex on the first interior edge of `tri`; both
///   triangles on that edge are split in two.
Triangulation subdivide_triangle(const Triangulation& t, int tri, int parts);

/// Undirected edges {a < b}.
std::vector<std::array<int, 2>> edges(const Triangulation& t);
std::vector<std::array<int, 2>> interior_edges(const Triangulation& t);
std::vector<std::vector<int>> neighbors(const Triangulation& t);

/// Triangles sharing an edge.
bool adjacent_triangles(const Triangulation& t, int i, int j);

/// Apply a vertex permutation: vertex v becomes perm[v].
Triangulation relabel(const Triangulation& t, const std::vector<int>& perm);

/// Catalog names in table order.
const std::vector<std::string>& catalog_names();
/// File stem for a catalog name, e.g. "T_{2,1}" -> "T_2_1".
std::string catalog_file_stem(const std::string& name);
/// Directory holding the catalog JSON files: $AREAREL_DATA/catalog if set,
/// else the data directory of the source tree.
std::string default_catalog_dir();
/// Loads and validates one named triangulation ("T_{2,1}", "T_2_1" and "T21" all work).
Triangulation load_catalog_entry(const std::string& name, const std::string& dir = default_catalog_dir());
std::vector<Triangulation> load_catalog(const std::string& dir = default_catalog_dir());

nlohmann::json to_json(const Triangulation& t);
Triangulation triangulation_from_json(const nlohmann::json& j);

}  // namespace arearel
