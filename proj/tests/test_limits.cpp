#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "arearel/limits.hpp"

using namespace arearel;

namespace {

CPoly cp(std::vector<double> c) {
  CPoly p;
  for (double x : c) p.c.push_back(Complex(x, 0));
  return p;
}

PathPoint pt(std::vector<double> x, std::vector<double> y) { return {cp(std::move(x)), cp(std::move(y))}; }

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// the T_1 drawing with interior vertex (1/3, 1/4), scaled by 1 + s
PathDrawing scaled_t1() {
  PathDrawing pd;
  pd.tri = load_catalog_entry("T_1");
  std::vector<std::array<double, 2>> base{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {1.0 / 3, 0.25}};
  for (auto [x, y] : base) pd.coords.push_back(pt({x, x}, {y, y}));
  return pd;
}

std::vector<Complex> normalized(std::vector<Complex> a) {
  Complex sum = 0;
  for (auto& x : a) sum += x;
  for (auto& x : a) x /= sum;
  return a;
}

}  // namespace

TEST_CASE("path evaluation") {
  auto pd = bubble_path(1, 2, 4);
  auto d = eval_path(pd, 0.5);
  auto& c = pd.tri.corners;
  CHECK(std::abs(d.coords[c[0]][0]) < 1e-15);
  CHECK(std::abs(d.coords[c[2]][0] - Complex(0.5)) < 1e-15);
  CHECK(std::abs(d.coords[c[2]][1] - Complex(0.5)) < 1e-15);
  Complex total = 0;
  for (auto& a : float_areas(pd.tri, d)) total += a;
  CHECK(std::abs(total - Complex(0.25)) < 1e-12);

  auto db = double_bubble_path({1, 2, 3}, {1, 3, 2});
  auto z = eval_path(db, 0);
  for (int v = 0; v < 10; ++v) {
    CHECK(std::abs(z.coords[v][0]) < 1e-15);
    CHECK(std::abs(z.coords[v][1]) < 1e-15);
  }
  CHECK(std::abs(z.coords[10][0]) + std::abs(z.coords[10][1]) > 0.5);
}

TEST_CASE("path checks") {
  check_path(bubble_path(1, 2, 4));
  auto bad = scaled_t1();
  bad.coords[2] = pt({1, 1}, {1, 2});
  CHECK_THROWS_AS(check_path(bad), std::invalid_argument);
  PathDrawing flat = scaled_t1();
  for (auto& p : flat.coords) {
    p[0].c[0] = 0;
    p[1].c[0] = 0;
  }
  CHECK_THROWS_AS(check_path(flat), std::invalid_argument);
}

TEST_CASE("bubble limit") {
  auto pd = bubble_path(1, 2, 4);
  auto r = path_limit(pd, default_schedule(4));
  std::vector<double> w{1, 1, 0, 0, 0, 0, 0, -1, -2, 3};
  // compare projectively: the tuple is normalized to total 1, w to total 2
  for (size_t i = 0; i < w.size(); ++i) {
    CHECK(std::abs(r.tuples.back()[i] - Complex(w[i] / 2)) < 5e-4);
    CHECK(std::abs(r.limit[i] - Complex(w[i] / 2)) < 1e-6);
  }
  Complex inside = r.limit[7] + r.limit[8] + r.limit[9];
  CHECK(std::abs(inside) < 1e-9);
}

TEST_CASE("bubble limit converges monotonically") {
  auto pd = bubble_path(1, 2, 4);
  auto r = path_limit(pd, default_schedule(5));
  std::vector<double> w{1, 1, 0, 0, 0, 0, 0, -1, -2, 3};
  for (size_t i = 0; i < w.size(); ++i) {
    double prev = 1e300;
    for (size_t k = 0; k < r.schedule.size(); ++k) {
      double err = std::abs(r.tuples[k][i] - Complex(w[i] / 2));
      CHECK(err <= prev + 1e-12);
      CHECK(err <= 10 * r.schedule[k]);
      prev = err;
    }
  }
}

TEST_CASE("constant-shape path") {
  auto pd = scaled_t1();
  auto r = path_limit(pd, default_schedule(6));
  auto fixed = normalized(float_areas(pd.tri, eval_path(pd, 0)));
  CHECK(max_diff(r.limit, fixed) < 1e-12);
  CHECK(r.converged);
  for (auto& tup : r.tuples) CHECK(max_diff(tup, fixed) < 1e-12);
}

TEST_CASE("zero total area is reported") {
  auto pd = scaled_t1();
  for (auto& p : pd.coords) p[1] = cp({0});
  CHECK_THROWS_AS(path_limit(pd, default_schedule(3)), std::domain_error);
}

TEST_CASE("bursting a bubble") {
  auto pd = bubble_path(1, 2, 4);
  auto bs = find_bubbles(pd.tri, drawing_at_zero(pd));
  REQUIRE(bs.size() == 1);
  auto burst = burst_bubble(pd, bs[0].cycle);
  auto r = path_limit(burst, default_schedule(5));
  std::vector<double> w{0.5, 0.5, 0, 0, 0, 0, 0, 0, 0, 0};
  for (size_t i = 0; i < w.size(); ++i) CHECK(std::abs(r.limit[i] - Complex(w[i])) < 1e-6);
  for (double s : {0.3, 0.1, 1e-2, 1e-3, 1e-5}) {
    auto a = float_areas(pd.tri, eval_path(pd, s)), b = float_areas(burst.tri, eval_path(burst, s));
    for (int i = 0; i < 10; ++i)
      if (std::find(bs[0].inside.begin(), bs[0].inside.end(), i) == bs[0].inside.end())
        CHECK(std::abs(a[i] - b[i]) < 1e-15);
  }
  for (int v = 0; v < pd.tri.vertex_count; ++v)
    if (std::find(bs[0].interior_vertices.begin(), bs[0].interior_vertices.end(), v) == bs[0].interior_vertices.end())
      for (int k = 0; k < 2; ++k) {
        auto& a = pd.coords[v][k].c;
        auto& b = burst.coords[v][k].c;
        CHECK(max_diff(a, b) == 0);
      }
}

TEST_CASE("bursting needs a bubble") {
  auto pd = scaled_t1();
  CHECK_THROWS_AS(burst_bubble(pd, {0, 1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(burst_bubble(bubble_path(1, 2, 4), {0, 1, 4}), std::invalid_argument);
}

TEST_CASE("bursting disjoint bubbles commutes") {
  // T_1 with a bubble inserted in triangles 0 and 2
  PathDrawing pd;
  pd.tri = insert_bubble(insert_bubble(load_catalog_entry("T_1"), 0), 2);
  for (auto [x, y] : std::vector<std::array<double, 2>>{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}})
    pd.coords.push_back(pt({x}, {y}));
  for (double cy : {0.2, 0.8}) {
    pd.coords.push_back(pt({0.5, 1}, {cy}));
    pd.coords.push_back(pt({0.5}, {cy, 1}));
    pd.coords.push_back(pt({0.5, -1}, {cy, -1}));
    pd.coords.push_back(pt({0.45}, {cy + 0.05}));
  }
  check_path(pd);
  auto bs = find_bubbles(pd.tri, drawing_at_zero(pd));
  REQUIRE(bs.size() == 2);
  std::set<int> a(bs[0].inside.begin(), bs[0].inside.end());
  CHECK(std::none_of(bs[1].inside.begin(), bs[1].inside.end(), [&](int x) { return a.count(x) > 0; }));
  auto one = burst_bubble(burst_bubble(pd, bs[0].cycle), bs[1].cycle);
  auto two = burst_bubble(burst_bubble(pd, bs[1].cycle), bs[0].cycle);
  for (double s : {0.5, 0.1, 1e-3}) {
    auto x = eval_path(one, s), y = eval_path(two, s);
    for (size_t v = 0; v < x.coords.size(); ++v)
      for (int k = 0; k < 2; ++k) CHECK(std::abs(x.coords[v][k] - y.coords[v][k]) < 1e-14);
  }
  auto r = path_limit(one, default_schedule(5));
  for (auto& b : bs)
    for (int i : b.inside) CHECK(std::abs(r.limit[i]) < 1e-6);
}

TEST_CASE("wheel ratio against the closed form") {
  // polygon area s^3, spoke triangles sum to 8 s^2 - 7 s^3
  std::vector<PathPoint> spokes;
  for (double i : {1.0, 2.0, 3.0}) spokes.push_back(pt({0, i}, {0, 0, i * i}));
  PathPoint hub = pt({1}, {0});
  auto sched = default_schedule(5);
  auto r = wheel_ratio(spokes, hub, {0, 1, 2}, sched);
  REQUIRE(r.size() == sched.size());
  for (size_t k = 0; k < sched.size(); ++k) {
    double s = sched[k];
    CHECK(r[k] == doctest::Approx(s / (8 - 7 * s)).epsilon(1e-9));
    if (k > 0) CHECK(r[k] < r[k - 1]);
  }
  CHECK(r[3] < 1e-3);
}

TEST_CASE("wheel ratio edge cases") {
  std::vector<PathPoint> line;
  for (double i : {1.0, 2.0, 3.0}) line.push_back(pt({0, i}, {0}));
  auto r = wheel_ratio(line, pt({0}, {1}), {0, 1, 2}, default_schedule(4));
  for (double x : r) CHECK(x == 0);
  CHECK_THROWS_AS(wheel_ratio(line, pt({1}, {0}), {0, 1, 2}, default_schedule(4)), std::domain_error);
  std::vector<PathPoint> spread;
  for (double i : {1.0, 2.0, 3.0}) spread.push_back(pt({i}, {i * i}));
  CHECK_THROWS_AS(wheel_ratio(spread, pt({4}, {4}), {0, 1, 2}, default_schedule(4)), std::invalid_argument);
}

TEST_CASE("path json and csv") {
  auto pd = bubble_path(1, 2, 4);
  auto back = path_from_json(path_to_json(pd));
  CHECK(back.tri.triangles == pd.tri.triangles);
  for (double s : {0.7, 0.01}) {
    auto a = eval_path(pd, s), b = eval_path(back, s);
    for (size_t v = 0; v < a.coords.size(); ++v)
      for (int k = 0; k < 2; ++k) CHECK(std::abs(a.coords[v][k] - b.coords[v][k]) < 1e-15);
  }
  auto csv = limit_to_csv(path_limit(pd, default_schedule(3)));
  CHECK(csv.rfind("s,A,B,C,D,E,F,G,H,I,J\n", 0) == 0);
  CHECK(csv.find("\nlimit,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
