#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "arearel/areapoly.hpp"
#include "arearel/draw.hpp"
#include "arearel/limits.hpp"

using namespace arearel;

namespace {

Scalar q(long n, long d = 1) { return Scalar(BigRational(BigInt(n), BigInt(d))); }
Point P(long x, long y) { return make_point(x, y); }
Point P(Scalar x, Scalar y) { return {x, y}; }

Drawing unit_square(const Triangulation& t) {
  Drawing d;
  d.tri = t.name;
  d.coords.assign(t.vertex_count, P(0, 0));
  d.coords[t.corners[0]] = P(0, 0);
  d.coords[t.corners[1]] = P(1, 0);
  d.coords[t.corners[2]] = P(1, 1);
  d.coords[t.corners[3]] = P(0, 1);
  return d;
}

std::vector<Scalar> sorted_nonzero(const std::vector<Scalar>& as) {
  std::vector<BigRational> re;
  for (auto& a : as)
    if (!a.is_zero()) re.push_back(a.re);
  std::sort(re.begin(), re.end());
  std::vector<Scalar> out;
  for (auto& r : re) out.push_back(Scalar(r));
  return out;
}

// A sampled drawing with one or two interior vertices pushed onto a line
// through two of their neighbors or onto a neighbor.
Drawing degenerate_drawing(const Triangulation& t, std::mt19937_64& rng) {
  Drawing d = sample_drawing(t, rng());
  auto nb = neighbors(t);
  std::vector<int> interior;
  for (int v = 0; v < t.vertex_count; ++v)
    if (!t.is_corner(v)) interior.push_back(v);
  if (interior.empty()) return d;
  int moves = 1 + rng() % 2;
  for (int m = 0; m < moves; ++m) {
    int v = interior[rng() % interior.size()];
    const auto& ns = nb[v];
    int a = ns[rng() % ns.size()], b = ns[rng() % ns.size()];
    if (rng() % 3 == 0 || a == b) {
      d.coords[v] = d.coords[a];
    } else {
      Scalar s = q(static_cast<long>(rng() % 7) - 2, 5);
      d.coords[v] = P(d.coords[a].x + s * (d.coords[b].x - d.coords[a].x),
                      d.coords[a].y + s * (d.coords[b].y - d.coords[a].y));
    }
  }
  return d;
}

}  // namespace

TEST_CASE("signed area") {
  CHECK(signed_area(P(0, 0), P(1, 0), P(0, 1)) == q(1, 2));
  CHECK(signed_area(P(0, 0), P(0, 1), P(1, 0)) == q(-1, 2));
  CHECK(signed_area(P(0, 0), P(1, 0), P(2, 0)).is_zero());
}

TEST_CASE("areas of simple drawings") {
  auto t0 = load_catalog_entry("T_0");
  auto a0 = areas(t0, unit_square(t0));
  CHECK(a0 == std::vector<Scalar>{q(1, 2), q(1, 2)});
  auto t1 = load_catalog_entry("T_1");
  auto d1 = unit_square(t1);
  d1.coords[4] = P(q(1, 2), q(1, 2));
  CHECK(areas(t1, d1) == std::vector<Scalar>(4, q(1, 4)));
}

TEST_CASE("the complex equidissection drawing") {
  auto t = load_catalog_entry("T_{2,2,2,2}");
  auto d = unit_square(t);
  Scalar h(BigRational(BigInt(1), BigInt(2)), BigRational(BigInt(1), BigInt(2)));
  d.coords[4] = P(h, q(0));
  d.coords[5] = P(q(1), h);
  d.coords[6] = P(h.conj(), q(1));
  d.coords[7] = P(q(0), h.conj());
  auto as = areas(t, d);
  for (int i = 1; i < 4; ++i) CHECK(as[i] == as[0]);
  CHECK_FALSE(as[0].is_zero());
  for (int i = 4; i < 10; ++i) CHECK(as[i].is_zero());
  CHECK_FALSE(d.is_real());
}

TEST_CASE("drawings must have a parallelogram boundary") {
  auto t1 = load_catalog_entry("T_1");
  auto d = unit_square(t1);
  d.coords[t1.corners[2]] = P(2, 1);
  CHECK_THROWS_AS(require_drawing(t1, d), std::invalid_argument);
  d.coords.pop_back();
  CHECK_THROWS_AS(areas(t1, d), std::invalid_argument);
}

TEST_CASE("sampling") {
  auto t0 = load_catalog_entry("T_0");
  CHECK(areas(t0, sample_drawing(t0, 99)) == std::vector<Scalar>{q(1, 2), q(1, 2)});
  auto t1 = load_catalog_entry("T_1");
  auto a = areas(t1, sample_drawing(t1, 0));
  Scalar sum;
  for (auto& x : a) sum += x;
  CHECK(sum == q(1));
  CHECK(areas(t1, sample_drawing(t1, 5)) == areas(t1, sample_drawing(t1, 5)));
  auto d1 = sample_drawing(t1, 1), d2 = sample_drawing(t1, 2);
  CHECK_FALSE(d1.coords == d2.coords);
  auto p = HomogPoly(parse_poly("A-B+C-D"));
  CHECK(evaluate_at_drawing(p, t1, d1).is_zero());
  CHECK(evaluate_at_drawing(p, t1, d2).is_zero());
}

TEST_CASE("areas sum to the boundary area") {
  for (auto& t : load_catalog())
    for (uint64_t seed = 0; seed < 200; ++seed) {
      auto d = sample_drawing(t, derive_seed(seed, 77));
      Scalar sum;
      for (auto& a : areas(t, d)) sum += a;
      CHECK(sum == boundary_area(t, d));
    }
}

TEST_CASE("areas are affine equivariant") {
  std::mt19937_64 rng(3);
  for (auto& t : load_catalog()) {
    auto d = sample_drawing(t, rng());
    std::array<Scalar, 4> m{q(rng() % 7 - 3, 2), q(rng() % 5 + 1, 3), q(rng() % 9 - 4), q(rng() % 3 + 1, 7)};
    std::array<Scalar, 2> b{q(rng() % 11, 3), q(-5, 4)};
    Scalar det = m[0] * m[3] - m[1] * m[2];
    auto a = areas(t, d), am = areas(t, apply_affine(d, m, b));
    for (size_t i = 0; i < a.size(); ++i) CHECK(am[i] == det * a[i]);
  }
}

TEST_CASE("drawing json round trip") {
  auto t = load_catalog_entry("T_3");
  auto d = sample_drawing(t, 4);
  auto back = drawing_from_json(drawing_to_json(d));
  CHECK(back.coords == d.coords);
  CHECK(back.tri == d.tri);
}

TEST_CASE("elastic complex") {
  auto t = load_catalog_entry("T_2");
  auto d = sample_drawing(t, 8);
  CHECK(elastic_complex(t, d).empty());
  d.coords[5] = d.coords[4];
  auto ec = elastic_complex(t, d);
  REQUIRE(ec.edges.size() == 1);
  CHECK(ec.edges[0] == std::array<int, 2>{4, 5});

  auto pd = bubble_path(1, 2, 4);
  auto z = drawing_at_zero(pd);
  auto e3 = elastic_complex(pd.tri, z);
  for (auto e : std::vector<std::array<int, 2>>{{4, 5}, {5, 6}, {4, 6}})
    CHECK(std::find(e3.edges.begin(), e3.edges.end(), e) != e3.edges.end());
}

TEST_CASE("bubbles") {
  auto t = load_catalog_entry("T_2");
  CHECK(find_bubbles(t, sample_drawing(t, 1)).empty());

  auto pd = bubble_path(1, 2, 4);
  auto bs = find_bubbles(pd.tri, drawing_at_zero(pd));
  REQUIRE(bs.size() == 1);
  auto in = bs[0].inside;
  std::sort(in.begin(), in.end());
  CHECK(in == std::vector<int>{7, 8, 9});
  CHECK(bs[0].interior_vertices == std::vector<int>{7});

  // every boundary vertex at one point, the interior vertex elsewhere
  auto t1 = load_catalog_entry("T_1");
  Drawing d;
  d.tri = "T_1";
  d.coords.assign(5, P(0, 0));
  d.coords[4] = P(1, 1);
  auto b1 = find_bubbles(t1, d);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].inside.size() == 4);
  for (auto& b : bs) CHECK_FALSE(b.interior_vertices.empty());
}

TEST_CASE("simplification examples") {
  auto t2 = load_catalog_entry("T_2");
  auto d = sample_drawing(t2, 3);
  CHECK(is_simple(t2, d));
  auto s = simplify_drawing(t2, d);
  CHECK(s.tri.triangles == t2.triangles);
  CHECK(s.drawing.coords == d.coords);

  auto t1 = load_catalog_entry("T_1");
  auto d1 = unit_square(t1);
  d1.coords[4] = P(q(0), q(1, 3));
  auto s1 = simplify_drawing(t1, d1);
  CHECK(is_simple(s1.tri, s1.drawing));
  CHECK(sorted_nonzero(areas(s1.tri, s1.drawing)) == sorted_nonzero(areas(t1, d1)));
  CHECK(sorted_nonzero(areas(s1.tri, s1.drawing)).size() == 3);
  CHECK(s1.tri.triangle_count() <= 3 * 3 - 2);

  // subdivided T_0 with the new vertex on a corner of the split triangle
  auto t0s = subdivide_triangle(load_catalog_entry("T_0"), 0, 3);
  auto d0 = unit_square(t0s);
  d0.coords[4] = d0.coords[t0s.triangles[0][0]];
  auto s0 = simplify_drawing(t0s, d0);
  CHECK(sorted_nonzero(areas(s0.tri, s0.drawing)) == sorted_nonzero(areas(t0s, d0)));
  CHECK(s0.tri.triangle_count() == 2);
  CHECK(is_simple(s0.tri, s0.drawing));
}

TEST_CASE("simplification refuses zero-sum subsets") {
  auto t1 = load_catalog_entry("T_1");
  auto d = unit_square(t1);
  d.coords[4] = P(q(1, 2), q(0));  // on pq: areas 0, 1/4, 1/2, 1/4
  d.coords[4] = P(q(1, 2), q(-1));  // outside: some areas negative
  auto as = areas(t1, d);
  bool zero_pair = false;
  for (size_t i = 0; i < as.size(); ++i)
    for (size_t j = i + 1; j < as.size(); ++j)
      if ((as[i] + as[j]).is_zero() && !as[i].is_zero()) zero_pair = true;
  if (zero_pair) CHECK_THROWS_AS(simplify_drawing(t1, d), std::invalid_argument);
  Drawing flat;
  flat.coords.assign(5, P(0, 0));
  CHECK_THROWS_AS(simplify_drawing(t1, flat), std::invalid_argument);
}

TEST_CASE("simplified drawings are simple, small, and keep the areas") {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (auto& t : load_catalog()) {
    for (int trial = 0; trial < 40; ++trial) {
      auto d = degenerate_drawing(t, rng);
      SimplifiedDrawing s;
      try {
        s = simplify_drawing(t, d);
      } catch (const std::invalid_argument&) {
        continue;  // a zero-sum subset of areas
      }
      ++checked;
      int l = static_cast<int>(sorted_nonzero(areas(t, d)).size());
      CHECK(validate(s.tri).empty());
      CHECK(is_simple(s.tri, s.drawing));
      CHECK(s.tri.triangle_count() <= 3 * l - 2);
      CHECK(2 * s.tri.interior_count() <= 3 * l - 4);
      CHECK(sorted_nonzero(areas(s.tri, s.drawing)) == sorted_nonzero(areas(t, d)));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("constraints") {
  auto t2 = load_catalog_entry("T_2");
  auto none = ConstrainedTriangulation::from_triangle_sets(t2, {});
  CHECK(validate_constrained(none, sample_drawing(t2, 1)).empty());
  CHECK(is_comb_irreducible(none));

  // u on sp, v on rs and on the line qu; A, C, E stay alive
  auto ct = ConstrainedTriangulation::from_triangle_sets(t2, {{5}, {1}, {3}});
  CHECK(check_constraints(ct).empty());
  CHECK(ct.living_triangles() == std::vector<int>{0, 2, 4});
  auto d = unit_square(t2);
  d.coords[4] = P(0, 2);
  d.coords[5] = P(q(1, 2), q(1));
  CHECK(validate_constrained(ct, d).empty());
  auto p = HomogPoly(parse_poly("A^2-2*A*C+2*A*E+C^2+2*C*E+E^2-B^2-2*B*D-2*B*F-D^2+2*D*F-F^2"));
  CHECK(evaluate_at_drawing(p, t2, d).is_zero());
  d.coords[5] = P(q(1, 3), q(1));
  CHECK_FALSE(validate_constrained(ct, d).empty());

  auto bad = ConstrainedTriangulation::from_triangle_sets(t2, {{0, 3}});
  CHECK_FALSE(check_constraints(bad).empty());
}

TEST_CASE("amalgamation") {
  auto t2 = load_catalog_entry("T_2");
  // triangles 0 (p,q,u) and 1 (q,v,u) share the edge qu
  auto ct = ConstrainedTriangulation::from_triangle_sets(t2, {{0}, {1}});
  CHECK_FALSE(is_comb_irreducible(ct));
  auto m = maximal_amalgamation(ct);
  REQUIRE(m.constraints.size() == 1);
  CHECK(m.constraints[0].vertices.size() == 4);
  CHECK(is_comb_irreducible(m));
  auto mm = maximal_amalgamation(m);
  CHECK(mm.constraints.size() == m.constraints.size());
  CHECK(mm.constraints[0].vertices == m.constraints[0].vertices);

  auto apart = ConstrainedTriangulation::from_triangle_sets(t2, {{0}, {3}});
  CHECK(is_comb_irreducible(apart));
  CHECK(maximal_amalgamation(apart).constraints.size() == 2);
}
