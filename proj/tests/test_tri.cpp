#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "arearel/tri.hpp"

using namespace arearel;

namespace {

Triangulation mirror(const Triangulation& t) {
  Triangulation m = t;
  for (auto& tr : m.triangles) std::swap(tr[1], tr[2]);
  m.corners = {t.corners[0], t.corners[3], t.corners[2], t.corners[1]};
  return m;
}

std::set<Triangle> rotations_normalized(const std::vector<Triangle>& ts) {
  std::set<Triangle> out;
  for (auto tr : ts) {
    // rotate so the smallest id comes first, keeping orientation
    while (tr[0] > tr[1] || tr[0] > tr[2]) tr = {tr[1], tr[2], tr[0]};
    out.insert(tr);
  }
  return out;
}

// Brute-force search for a vertex bijection that maps corners to corners by a
// symmetry of the square and triangles to triangles (orientation reversed
// under reflections).
bool isomorphic_oracle(const Triangulation& a, const Triangulation& b) {
  if (a.vertex_count != b.vertex_count || a.triangle_count() != b.triangle_count()) return false;
  int n = a.vertex_count;
  auto target = rotations_normalized(b.triangles);
  for (int refl = 0; refl < 2; ++refl)
    for (int rot = 0; rot < 4; ++rot) {
      std::vector<int> f(n, -1);
      std::vector<bool> used(n, false);
      for (int k = 0; k < 4; ++k) {
        int img = refl ? b.corners[(rot - k + 8) % 4] : b.corners[(rot + k) % 4];
        f[a.corners[k]] = img;
        used[img] = true;
      }
      std::vector<int> order;
      for (int v = 0; v < n; ++v)
        if (f[v] < 0) order.push_back(v);
      auto image_ok = [&](bool complete) {
        for (auto tr : a.triangles) {
          if (f[tr[0]] < 0 || f[tr[1]] < 0 || f[tr[2]] < 0) {
            if (complete) return false;
            continue;
          }
          Triangle im{f[tr[0]], f[tr[1]], f[tr[2]]};
          if (refl) std::swap(im[1], im[2]);
          while (im[0] > im[1] || im[0] > im[2]) im = {im[1], im[2], im[0]};
          if (!target.count(im)) return false;
        }
        return true;
      };
      std::function<bool(size_t)> go = [&](size_t k) {
        if (!image_ok(false)) return false;
        if (k == order.size()) return image_ok(true);
        for (int w = 0; w < n; ++w) {
          if (used[w]) continue;
          used[w] = true;
          f[order[k]] = w;
          if (go(k + 1)) return true;
          used[w] = false;
          f[order[k]] = -1;
        }
        return false;
      };
      if (go(0)) return true;
    }
  return false;
}

Triangulation random_relabel(const Triangulation& t, std::mt19937_64& rng) {
  std::vector<int> perm(t.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto r = relabel(t, perm);
  std::shuffle(r.triangles.begin(), r.triangles.end(), rng);
  return r;
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("catalog entries are valid and subdivision free") {
  auto names = catalog_names();
  REQUIRE(names.size() == 11);
  for (auto& n : names) {
    auto t = load_catalog_entry(n);
    CHECK(t.name == n);
    CHECK(validate(t).empty());
    CHECK(t.triangle_count() == 2 * t.interior_count() + 2);
    CHECK_FALSE(has_subdivision(t));
  }
  CHECK(load_catalog_entry("T_21").name == "T_{2,1}");
  CHECK(catalog_file_stem("T_{3,1,3,1}") == "T_3_1_3_1");
}

TEST_CASE("validation finds violations") {
  auto t = load_catalog_entry("T_1");
  auto bad = t;
  std::swap(bad.triangles[0][1], bad.triangles[0][2]);
  CHECK(has_kind(validate(bad), ViolationKind::OrientationClash));
  CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);

  // two triangles touching at a vertex only
  Triangulation bow;
  bow.vertex_count = 5;
  bow.corners = {0, 1, 2, 3};
  bow.triangles = {{0, 1, 4}, {2, 3, 4}};
  CHECK_FALSE(validate(bow).empty());

  auto extra = t;
  extra.triangles.pop_back();
  CHECK_FALSE(validate(extra).empty());
}

TEST_CASE("enumeration counts") {
  std::vector<size_t> expect{1, 1, 1, 2, 6};
  size_t total = 0;
  std::set<std::string> codes;
  for (int k = 0; k <= 4; ++k) {
    auto ts = enumerate(k);
    CHECK(ts.size() == expect[k]);
    for (auto& t : ts) {
      CHECK(validate(t).empty());
      CHECK(t.triangle_count() == 2 * k + 2);
      CHECK_FALSE(has_subdivision(t));
      codes.insert(canonical_code(t));
    }
    total += ts.size();
  }
  CHECK(total == 11);
  std::set<std::string> catalog;
  for (auto& t : load_catalog()) catalog.insert(canonical_code(t));
  CHECK(codes == catalog);
  CHECK_THROWS(enumerate(6));
}

TEST_CASE("subdivisions") {
  CHECK_FALSE(has_subdivision(load_catalog_entry("T_2")));
  CHECK_FALSE(has_subdivision(load_catalog_entry("T_0")));
  auto t = subdivide_triangle(load_catalog_entry("T_0"), 0, 3);
  CHECK(t.triangle_count() == 4);
  CHECK(validate(t).empty());
  CHECK(has_subdivision(t));
  CHECK_THROWS(subdivide_triangle(load_catalog_entry("T_0"), 5, 3));
  auto t2 = subdivide_triangle(load_catalog_entry("T_1"), 0, 2);
  CHECK(validate(t2).empty());
  CHECK(t2.triangle_count() == 6);
}

TEST_CASE("edge contraction") {
  auto t1 = load_catalog_entry("T_1");
  for (auto e : interior_edges(t1)) {
    auto c = contract_edge(t1, e[0], e[1]);
    REQUIRE(c);
    CHECK(validate(*c).empty());
    CHECK(canonical_code(*c) == canonical_code(load_catalog_entry("T_0")));
  }
  auto t2 = load_catalog_entry("T_2");
  std::vector<int> interior;
  for (int v = 0; v < t2.vertex_count; ++v)
    if (!t2.is_corner(v)) interior.push_back(v);
  auto c = contract_edge(t2, interior[0], interior[1]);
  REQUIRE(c);
  CHECK(canonical_code(*c) == canonical_code(t1));

  auto sub = subdivide_triangle(load_catalog_entry("T_1"), 0, 3);
  auto triple = has_subdivision(sub);
  REQUIRE(triple);
  auto [a, b, x] = *triple;
  if (!sub.is_corner(a) || !sub.is_corner(b)) CHECK_FALSE(contract_edge(sub, a, b));
  CHECK_THROWS_AS(contract_edge(t1, t1.corners[0], t1.corners[1]), std::invalid_argument);
}

TEST_CASE("contraction succeeds exactly off subdivisions") {
  for (int k = 1; k <= 3; ++k)
    for (auto& t : enumerate_all(k))
      for (auto e : interior_edges(t)) {
        bool both_corners = t.is_corner(e[0]) && t.is_corner(e[1]);
        bool in_sub = false;
        for (auto s : subdivisions(t)) {
          int hits = (s[0] == e[0] || s[1] == e[0] || s[2] == e[0]) + (s[0] == e[1] || s[1] == e[1] || s[2] == e[1]);
          if (hits == 2) in_sub = true;
        }
        auto c = contract_edge(t, e[0], e[1]);
        CHECK(c.has_value() == (!in_sub && !both_corners));
        if (c) {
          CHECK(validate(*c).empty());
          CHECK(c->interior_count() == t.interior_count() - 1);
        }
      }
}

TEST_CASE("canonical codes") {
  auto t1 = load_catalog_entry("T_1");
  auto rot = t1;
  rot.corners = {t1.corners[1], t1.corners[2], t1.corners[3], t1.corners[0]};
  CHECK(canonical_code(rot) == canonical_code(t1));
  CHECK(canonical_code(load_catalog_entry("T_3")) != canonical_code(load_catalog_entry("T_{2,1}")));
  for (auto& t : load_catalog()) {
    auto m = mirror(t);
    CHECK(validate(m).empty());
    CHECK(isomorphic_oracle(t, m));
    CHECK(canonical_code(m) == canonical_code(t));
  }
}

TEST_CASE("canonical code agrees with the isomorphism oracle") {
  auto cat = load_catalog();
  for (size_t i = 0; i < cat.size(); ++i)
    for (size_t j = i; j < cat.size(); ++j)
      CHECK(isomorphic_oracle(cat[i], cat[j]) == (canonical_code(cat[i]) == canonical_code(cat[j])));
}

TEST_CASE("canonical code is invariant under relabeling") {
  std::mt19937_64 rng(21);
  for (auto& t : load_catalog()) {
    auto code = canonical_code(t);
    for (int trial = 0; trial < 100; ++trial) {
      auto r = random_relabel(t, rng);
      CHECK(canonical_code(r) == code);
    }
  }
}

TEST_CASE("canonical form carries a triangle map") {
  std::mt19937_64 rng(4);
  for (auto& t : load_catalog()) {
    auto r = random_relabel(t, rng);
    std::vector<int> map;
    auto c = canonical_form(r, &map);
    CHECK(canonical_code(c) == canonical_code(t));
    REQUIRE(map.size() == r.triangles.size());
    std::vector<int> sorted = map;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) CHECK(sorted[i] == i);
    CHECK(canonical_form(c) .triangles == c.triangles);
  }
}

TEST_CASE("json round trip") {
  for (auto& t : load_catalog()) {
    auto back = triangulation_from_json(to_json(t));
    CHECK(back.triangles == t.triangles);
    CHECK(back.corners == t.corners);
    CHECK(back.name == t.name);
  }
}
