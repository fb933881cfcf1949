#include "arearel/limits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arearel {

namespace {

Complex fdet(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b, const std::array<Complex, 2>& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

CPoly monomial(double coeff, int power) {
  CPoly p;
  p.c.assign(static_cast<size_t>(power) + 1, 0.0);
  p.c[power] = coeff;
  return p;
}

bool is_zero_poly(const CPoly& p) {
  return std::all_of(p.c.begin(), p.c.end(), [](Complex z) { return z == Complex(0); });
}

std::string fmt(double v) {
  char buf[64];
  if (v == 0) v = 0;  // drop the sign of -0
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(Complex z) {
  if (z.imag() == 0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i";
}

Scalar exact(Complex z) {
  return Scalar(BigRational(mpq_class(z.real())), BigRational(mpq_class(z.imag())));
}

}  // namespace

Complex CPoly::operator()(double s) const {
  Complex r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * s + c[i];
  return r;
}

CPoly operator+(const CPoly& a, const CPoly& b) {
  CPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

CPoly operator-(const CPoly& a, const CPoly& b) { return a + (-1.0) * b; }

CPoly operator*(double k, const CPoly& a) {
  CPoly r = a;
  for (auto& z : r.c) z *= k;
  return r;
}

void check_path(const PathDrawing& pd) {
  const auto& t = pd.tri;
  if (static_cast<int>(pd.coords.size()) != t.vertex_count)
    throw std::invalid_argument("path: coordinate count does not match the vertex count");
  auto [p, q, r, s] = t.corners;
  for (int k = 0; k < 2; ++k)
    if (!is_zero_poly(pd.coords[p][k] + pd.coords[r][k] - pd.coords[q][k] - pd.coords[s][k]))
      throw std::invalid_argument("path: corners are not a parallelogram for every s");
  auto first = eval_path(pd, 0.0).coords;
  if (std::all_of(first.begin(), first.end(), [&](const auto& pt) { return pt == first[0]; }))
    throw std::invalid_argument("path: every vertex is at one point at s = 0");
}

FloatDrawing eval_path(const PathDrawing& pd, double s) {
  FloatDrawing d;
  for (auto& pt : pd.coords) d.coords.push_back({pt[0](s), pt[1](s)});
  return d;
}

std::vector<Complex> float_areas(const Triangulation& t, const FloatDrawing& d) {
  std::vector<Complex> out;
  for (auto& tr : t.triangles) out.push_back(fdet(d.coords[tr[0]], d.coords[tr[1]], d.coords[tr[2]]));
  return out;
}

Drawing drawing_at_zero(const PathDrawing& pd) {
  Drawing d;
  d.tri = pd.tri.name;
  for (auto& pt : pd.coords) d.coords.push_back({exact(pt[0](0.0)), exact(pt[1](0.0))});
  return d;
}

std::vector<double> default_schedule(int kmax) {
  std::vector<double> s;
  for (int k = 1; k <= kmax; ++k) s.push_back(std::pow(10.0, -k));
  return s;
}

LimitResult path_limit(const PathDrawing& pd, const std::vector<double>& schedule, double tol) {
  if (schedule.empty()) throw std::invalid_argument("path_limit: empty schedule");
  LimitResult r;
  r.schedule = schedule;
  for (double s : schedule) {
    auto a = float_areas(pd.tri, eval_path(pd, s));
    Complex sigma = 0;
    for (auto z : a) sigma += z;
    if (std::abs(sigma) == 0) throw std::domain_error("path_limit: total area vanishes at s = " + fmt(s));
    for (auto& z : a) z /= sigma;
    r.tuples.push_back(std::move(a));
  }
  size_t m = schedule.size(), n = r.tuples[0].size();
  r.limit.assign(n, 0.0);
  r.estimate = 0;
  for (size_t v = 0; v < n; ++v) {
    // Neville tableau at s = 0, once over all points and once without the first
    auto neville = [&](size_t from) {
      std::vector<Complex> T;
      for (size_t i = from; i < m; ++i) T.push_back(r.tuples[i][v]);
      for (size_t lvl = 1; lvl < T.size(); ++lvl)
        for (size_t i = 0; i + lvl < T.size(); ++i) {
          double si = schedule[from + i], sj = schedule[from + i + lvl];
          T[i] = (sj * T[i] - si * T[i + 1]) / (sj - si);
        }
      return T[0];
    };
    Complex top = neville(0);
    Complex prev = m >= 2 ? neville(1) : top;
    r.limit[v] = top;
    r.estimate = std::max(r.estimate, std::abs(top - prev));
  }
  r.converged = m >= 2 && r.estimate < tol;
  return r;
}

PathDrawing burst_bubble(const PathDrawing& pd, const std::vector<int>& cycle) {
  Drawing d0 = drawing_at_zero(pd);
  std::set<int> want(cycle.begin(), cycle.end());
  const Bubble* hit = nullptr;
  auto bubbles = find_bubbles(pd.tri, d0);
  for (auto& b : bubbles)
    if (std::set<int>(b.cycle.begin(), b.cycle.end()) == want) hit = &b;
  if (!hit) throw std::invalid_argument("burst_bubble: the cycle is not a bubble of the drawing at s = 0");
  CPoly cx, cy;
  for (int v : hit->cycle) {
    cx = cx + pd.coords[v][0];
    cy = cy + pd.coords[v][1];
  }
  double k = 1.0 / static_cast<double>(hit->cycle.size());
  PathDrawing out = pd;
  for (int v : hit->interior_vertices) out.coords[v] = {k * cx, k * cy};
  return out;
}

std::vector<double> wheel_ratio(const std::vector<PathPoint>& spokes, const PathPoint& hub,
                                const std::vector<int>& subset, const std::vector<double>& schedule) {
  size_t n = spokes.size();
  if (n < 3) throw std::invalid_argument("wheel_ratio: need at least 3 spokes");
  if (subset.size() < 3) throw std::invalid_argument("wheel_ratio: subset needs at least 3 spokes");
  for (int i : subset)
    if (i < 0 || static_cast<size_t>(i) >= n) throw std::invalid_argument("wheel_ratio: subset index out of range");
  if (schedule.empty()) throw std::invalid_argument("wheel_ratio: empty schedule");
  auto at = [](const PathPoint& p, double s) { return std::array<Complex, 2>{p[0](s), p[1](s)}; };
  auto dist = [](const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
    return std::sqrt(std::norm(a[0] - b[0]) + std::norm(a[1] - b[1]));
  };
  double smin = *std::min_element(schedule.begin(), schedule.end());
  {
    double spread = 0, gap = INFINITY;
    auto h = at(hub, smin);
    for (size_t i = 0; i < n; ++i) {
      auto si = at(spokes[i], smin);
      gap = std::min(gap, dist(si, h));
      for (size_t j = 0; j < n; ++j) spread = std::max(spread, dist(si, at(spokes[j], smin)));
    }
    if (!(spread < gap)) throw std::invalid_argument("wheel_ratio: spokes do not cluster away from the hub");
  }
  std::vector<double> out;
  for (double s : schedule) {
    std::vector<std::array<Complex, 2>> S;
    for (auto& p : spokes) S.push_back(at(p, s));
    auto R = at(hub, s);
    double den = 0;
    for (size_t i = 0; i < n; ++i) den += std::abs(fdet(S[i], S[(i + 1) % n], R));
    if (den == 0) throw std::domain_error("wheel_ratio: denominator vanishes at s = " + fmt(s));
    // polygon area as a fan from an arbitrary point
    Complex poly = 0;
    for (size_t k = 0; k < subset.size(); ++k) poly += fdet(S[subset[k]], S[subset[(k + 1) % subset.size()]], R);
    out.push_back(std::abs(poly) / den);
  }
  return out;
}

Triangulation insert_bubble(const Triangulation& t, int tri) {
  if (tri < 0 || tri >= t.triangle_count()) throw std::out_of_range("insert_bubble: triangle index");
  Triangulation r = t;
  auto [a, b, c] = t.triangles[tri];
  int x = t.vertex_count, y = x + 1, z = x + 2, st = x + 3;
  r.vertex_count += 4;
  r.triangles[tri] = {a, b, x};
  for (auto tr : std::vector<std::array<int, 3>>{
           {b, y, x}, {b, c, y}, {c, z, y}, {c, a, z}, {a, x, z}, {x, y, st}, {y, z, st}, {z, x, st}})
    r.triangles.push_back(tr);
  r.name.clear();
  require_valid(r);
  return r;
}

Triangulation bubble_example() {
  Triangulation t;
  t.vertex_count = 8;
  t.corners = {0, 1, 2, 3};
  // p q r s x y z star = 0..7
  t.triangles = {{1, 2, 5}, {2, 3, 6}, {0, 1, 4}, {1, 5, 4}, {2, 6, 5},
                 {3, 4, 6}, {3, 0, 4}, {7, 4, 5}, {7, 5, 6}, {7, 6, 4}};
  t.name = "bubble";
  require_valid(t);
  return t;
}

PathDrawing bubble_path(double a, double b, double c) {
  PathDrawing pd;
  pd.tri = bubble_example();
  CPoly zero = CPoly::constant(0.0), s1 = monomial(1.0, 1);
  pd.coords = {{zero, zero},
               {s1, zero},
               {s1, s1},
               {zero, s1},
               {zero, monomial(a, 2)},
               {zero, monomial(b, 2)},
               {zero, monomial(c, 2)},
               {CPoly::constant(1.0), zero}};
  check_path(pd);
  return pd;
}

Triangulation double_bubble_example() {
  Triangulation t;
  t.vertex_count = 11;
  t.corners = {0, 1, 2, 3};
  const int p = 0, q = 1, r = 2, s = 3, y1 = 4, y2 = 5, y3 = 6, x1 = 7, x2 = 8, x3 = 9, st = 10;
  t.triangles = {{p, q, y1},  {q, y2, y1},  {q, r, y2},  {r, y3, y2},  {r, s, y3},  {s, p, y3},
                 {p, y1, y3}, {y1, y2, x2}, {y1, x2, x1}, {y2, y3, x3}, {y2, x3, x2}, {y3, y1, x1},
                 {y3, x1, x3}, {x1, x2, st}, {x2, x3, st}, {x3, x1, st}};
  t.name = "double-bubble";
  require_valid(t);
  return t;
}

PathDrawing double_bubble_path(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  PathDrawing pd;
  pd.tri = double_bubble_example();
  CPoly zero = CPoly::constant(0.0), s2 = monomial(1.0, 2);
  pd.coords = {{zero, zero}, {s2, zero}, {s2, s2}, {zero, s2}};
  for (int i = 0; i < 3; ++i) pd.coords.push_back({zero, monomial(b[i], 3)});
  for (int i = 0; i < 3; ++i) pd.coords.push_back({monomial(1.0, 1) + monomial(a[i], 4), zero});
  pd.coords.push_back({CPoly::constant(1.0), CPoly::constant(1.0)});
  check_path(pd);
  return pd;
}

nlohmann::json path_to_json(const PathDrawing& pd) {
  auto coeffs = [](const CPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (auto z : p.c) {
      if (z.imag() == 0)
        a.push_back(z.real());
      else
        a.push_back({z.real(), z.imag()});
    }
    return a;
  };
  nlohmann::json coords = nlohmann::json::array();
  for (auto& pt : pd.coords) coords.push_back({{"x", coeffs(pt[0])}, {"y", coeffs(pt[1])}});
  return {{"triangulation", to_json(pd.tri)}, {"coords", coords}};
}

PathDrawing path_from_json(const nlohmann::json& j) {
  PathDrawing pd;
  if (j.contains("triangulation"))
    pd.tri = triangulation_from_json(j.at("triangulation"));
  else if (j.contains("tri")) {
    std::string name = j.at("tri").get<std::string>();
    if (name == "bubble")
      pd.tri = bubble_example();
    else if (name == "double-bubble")
      pd.tri = double_bubble_example();
    else
      pd.tri = load_catalog_entry(name);
  } else
    throw std::invalid_argument("path: missing \"triangulation\" or \"tri\"");
  require_valid(pd.tri);
  auto poly = [](const nlohmann::json& a) {
    CPoly p;
    for (auto& c : a) {
      if (c.is_array())
        p.c.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
      else
        p.c.push_back(c.get<double>());
    }
    return p;
  };
  for (auto& pt : j.at("coords")) pd.coords.push_back({poly(pt.at("x")), poly(pt.at("y"))});
  check_path(pd);
  return pd;
}

std::string limit_to_csv(const LimitResult& r) {
  std::ostringstream os;
  size_t n = r.limit.size();
  os << "s";
  for (size_t i = 0; i < n; ++i) os << "," << variable_name(static_cast<int>(i));
  os << "\n";
  for (size_t k = 0; k < r.schedule.size(); ++k) {
    os << fmt(r.schedule[k]);
    for (auto z : r.tuples[k]) os << "," << fmt(z);
    os << "\n";
  }
  os << "limit";
  for (auto z : r.limit) os << "," << fmt(z);
  os << "\n";
  return os.str();
}

}  // namespace arearel
