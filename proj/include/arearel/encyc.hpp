#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arearel/poly.hpp"
#include "arearel/tri.hpp"

namespace arearel {

/// Area polynomials keyed by catalog name ("T_{2,1}").
using PolyStore = std::map<std::string, HomogPoly>;

struct Witness {
  std::string tri;
  std::vector<int> subset;  ///< variable indices of p_T kept
};

struct EncyclopediaEntry {
  PolyClass cls;
  int l = 0;
  int degree = 0;
  std::vector<Witness> provenance;  ///< at most 5
};

struct Volume {
  int l = 0;
  std::vector<EncyclopediaEntry> entries;  ///< sorted by (degree, canonical form)

  bool contains(const PolyClass& c) const;
  std::vector<PolyClass> classes() const;
};

/// All C(nvars, l) specializations in lexicographic subset order.
std::vector<std::pair<std::vector<int>, HomogPoly>> specializations_of(const HomogPoly& p, int l);

/// Catalog names whose polynomials build_volume(l) needs.
std::vector<std::string> required_triangulations(int l);

/// Throws std::invalid_argument for l outside 1..4 and std::runtime_error
/// naming the missing triangulations when the store is incomplete.
Volume build_volume(int l, const PolyStore& store, int jobs = 1);

struct AbridgeResult {
  std::vector<Volume> abridged;           ///< one per input volume
  bool closure_ok = false;                ///< subdivision closure reproduces the input
  std::vector<std::string> mismatches;    ///< human-readable, empty when closure_ok
};

/// volumes[i] must be E_{i+1}.
AbridgeResult abridge(const std::vector<Volume>& volumes);

/// Subdivision closure of abridged volumes, truncated at their count.
std::vector<std::vector<PolyClass>> subdivision_closure(const std::vector<Volume>& abridged);

struct PairForm {
  BigInt c;
  int e = 0;  ///< exponent of (A_i + A_j)
  int f = 0;  ///< exponent of (A_i - A_j)
};

/// p restricted to {A_i, A_j} as c (A_i+A_j)^e (A_i-A_j)^f. Throws
/// std::domain_error when the restriction has another factor.
PairForm pair_form(const HomogPoly& p, int i, int j);

/// Color 0 where the coefficient of A_i^d is positive, 1 where negative.
/// Cross-checked against the parity of pair_form exponents; a disagreement
/// throws std::logic_error.
std::vector<int> canonical_coloring(const Triangulation& t, const HomogPoly& p);

/// Graph encoding of a quadratic class: vertex colors from the leading signs,
/// an edge between same-colored vertices whose cross term sign differs from
/// the leading sign.
struct QuadGraph {
  std::vector<int> colors;
  std::vector<std::pair<int, int>> edges;
  bool has_triangle() const;
};
/// Throws std::invalid_argument if q is not quadratic with cross terms 0 or +-2 lc.
QuadGraph quadratic_graph(const HomogPoly& q);
/// True when every cross term is 0 or twice a leading coefficient in magnitude.
bool quadratic_cross_terms_ok(const HomogPoly& q);

nlohmann::json volume_to_json(const Volume& v);
Volume volume_from_json(const nlohmann::json& j);
std::string volume_to_text(const Volume& v);

}  // namespace arearel
