#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "arearel/exactnum.hpp"
#include "arearel/tri.hpp"

namespace arearel {

using Scalar = GaussianRational;

struct Point {
  Scalar x, y;
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

Point make_point(const BigRational& x, const BigRational& y);

/// Map from vertices to Q(i)^2. `tri` names the triangulation drawn.
struct Drawing {
  std::string tri;
  std::vector<Point> coords;
  bool is_real() const;
};

/// Half the determinant of [[1,1,1],[x1,x2,x3],[y1,y2,y3]].
Scalar signed_area(const Point& a, const Point& b, const Point& c);

/// Throws std::invalid_argument if the vertex count is wrong or the corners
/// do not form a (possibly degenerate) parallelogram.
void require_drawing(const Triangulation& t, const Drawing& d);

/// Areas in triangle order.
std::vector<Scalar> areas(const Triangulation& t, const Drawing& d);

/// Area of the boundary parallelogram.
Scalar boundary_area(const Triangulation& t, const Drawing& d);

/// Corners on the unit square, interior vertices at random rationals in [0,1]^2
/// with denominators at most 10^4; resampled until no triangle is degenerate.
Drawing sample_drawing(const Triangulation& t, uint64_t seed);

/// v -> M v + b applied to every vertex.
Drawing apply_affine(const Drawing& d, const std::array<Scalar, 4>& m, const std::array<Scalar, 2>& b);

nlohmann::json drawing_to_json(const Drawing& d);
Drawing drawing_from_json(const nlohmann::json& j);

// ---- elastic complex and bubbles ----

struct ElasticComplex {
  std::vector<std::array<int, 2>> edges;
  std::vector<int> triangles;  ///< triangles with all three vertices at one point
  std::vector<int> vertices;   ///< vertices on some elastic edge
  bool empty() const { return edges.empty(); }
};

ElasticComplex elastic_complex(const Triangulation& t, const Drawing& d);

/// Triangles on the side of the vertex cycle `cycle` away from the square's
/// outer face.
std::vector<int> inside_of_cycle(const Triangulation& t, const std::vector<int>& cycle);

struct Bubble {
  std::vector<int> cycle;              ///< S_1..S_n in order
  std::vector<int> inside;             ///< triangles of In(C)
  std::vector<int> interior_vertices;  ///< vertices of In(C) not on the cycle
  std::vector<int> ssr;                ///< the triangles S_i S_{i+1} R_i
};

/// All bubbles of the drawing, sorted by size of In(C) then cycle.
std::vector<Bubble> find_bubbles(const Triangulation& t, const Drawing& d);

// ---- simplification ----

struct SimplifiedDrawing {
  Triangulation tri;
  Drawing drawing;
  /// For each triangle of `tri`, the index of the input triangle it is, or -1
  /// for triangles created by the procedure (all degenerate).
  std::vector<int> origin;
};

/// Conditions (i)-(iii) of a simple drawing.
bool is_simple(const Triangulation& t, const Drawing& d);

/// Throws std::invalid_argument if there are no nondegenerate triangles or a
/// nonempty subset of the nondegenerate areas sums to zero.
SimplifiedDrawing simplify_drawing(const Triangulation& t, const Drawing& d);

// ---- constrained triangulations ----

struct Constraint {
  std::vector<int> triangles;  ///< S_i; empty after amalgamation
  std::set<int> vertices;      ///< Vxs(S_i), or a union after amalgamation
};

struct ConstrainedTriangulation {
  Triangulation base;
  std::vector<Constraint> constraints;

  /// One constraint per listed triangle set, vertices derived.
  static ConstrainedTriangulation from_triangle_sets(const Triangulation& t,
                                                     const std::vector<std::vector<int>>& sets);
  std::vector<int> living_triangles() const;
  std::vector<int> doomed_triangles() const;
};

/// Structural violations (contiguity, disjointness); empty when fine.
std::vector<std::string> check_constraints(const ConstrainedTriangulation& ct);

/// Empty result when every constraint is drawn on one line.
std::vector<std::string> validate_constrained(const ConstrainedTriangulation& ct, const Drawing& d);

ConstrainedTriangulation maximal_amalgamation(const ConstrainedTriangulation& ct);
bool is_comb_irreducible(const ConstrainedTriangulation& ct);

}  // namespace arearel
