#include "arearel/draw.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace arearel {

namespace {

using EdgeKey = std::pair<int, int>;
EdgeKey ekey(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::map<EdgeKey, std::vector<int>> edge_triangles(const Triangulation& t) {
  std::map<EdgeKey, std::vector<int>> m;
  for (int i = 0; i < t.triangle_count(); ++i)
    for (int k = 0; k < 3; ++k) m[ekey(t.triangles[i][k], t.triangles[i][(k + 1) % 3])].push_back(i);
  return m;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool degenerate(const Triangulation& t, const std::vector<Point>& c, int i) {
  const auto& tr = t.triangles[i];
  return signed_area(c[tr[0]], c[tr[1]], c[tr[2]]).is_zero();
}

// working state of the simplification procedure
struct Work {
  Triangulation t;
  std::vector<Point> coords;
  std::vector<int> origin;

  void drop_vertices(const std::set<int>& gone) {
    std::vector<int> perm(t.vertex_count, -1);
    int next = 0;
    std::vector<Point> nc;
    for (int v = 0; v < t.vertex_count; ++v) {
      if (gone.count(v)) continue;
      perm[v] = next++;
      nc.push_back(coords[v]);
    }
    for (auto& c : t.corners) c = perm[c];
    for (auto& tr : t.triangles)
      for (auto& v : tr) {
        if (perm[v] < 0) throw std::logic_error("simplify: dangling vertex");
        v = perm[v];
      }
    t.vertex_count = next;
    coords = std::move(nc);
  }

  bool collapse_degenerate_subdivision() {
    for (auto tri : subdivisions(t)) {
      std::vector<int> cyc(tri.begin(), tri.end());
      auto inside = inside_of_cycle(t, cyc);
      bool all_deg = std::all_of(inside.begin(), inside.end(),
                                 [&](int i) { return degenerate(t, coords, i); });
      if (!all_deg) continue;
      int a = tri[0], b = tri[1], c = tri[2];
      Triangle nt{a, b, c};
      for (int i : inside) {
        const auto& tr = t.triangles[i];
        for (int k = 0; k < 3; ++k)
          if (tr[k] == b && tr[(k + 1) % 3] == a) nt = {b, a, c};
      }
      std::set<int> in_set(inside.begin(), inside.end()), gone;
      for (int i : inside)
        for (int v : t.triangles[i])
          if (v != a && v != b && v != c) gone.insert(v);
      std::vector<Triangle> ntris;
      std::vector<int> norig;
      for (int i = 0; i < t.triangle_count(); ++i) {
        if (in_set.count(i)) continue;
        ntris.push_back(t.triangles[i]);
        norig.push_back(origin[i]);
      }
      ntris.push_back(nt);
      norig.push_back(-1);
      t.triangles = std::move(ntris);
      origin = std::move(norig);
      drop_vertices(gone);
      return true;
    }
    return false;
  }

  bool contract_elastic_edge() {
    for (auto e : interior_edges(t)) {
      if (coords[e[0]] != coords[e[1]]) continue;
      auto r = contract_edge(t, e[0], e[1]);
      if (!r) continue;
      int a = e[0], b = e[1];
      int keep = t.is_corner(a) ? a : t.is_corner(b) ? b : std::min(a, b);
      int gone = keep == a ? b : a;
      std::vector<int> norig;
      for (int i = 0; i < t.triangle_count(); ++i) {
        const auto& tr = t.triangles[i];
        bool ha = std::count(tr.begin(), tr.end(), a), hb = std::count(tr.begin(), tr.end(), b);
        if (!(ha && hb)) norig.push_back(origin[i]);
      }
      coords.erase(coords.begin() + gone);
      r->name.clear();
      t = std::move(*r);
      origin = std::move(norig);
      return true;
    }
    return false;
  }

  bool delete_dead_vertex() {
    auto nb = neighbors(t);
    for (int v = 0; v < t.vertex_count; ++v) {
      if (t.is_corner(v)) continue;
      bool alive = false;
      std::map<int, int> rot;
      std::vector<int> star;
      for (int i = 0; i < t.triangle_count(); ++i) {
        const auto& tr = t.triangles[i];
        for (int k = 0; k < 3; ++k)
          if (tr[k] == v) {
            rot[tr[(k + 1) % 3]] = tr[(k + 2) % 3];
            star.push_back(i);
            if (!degenerate(t, coords, i)) alive = true;
          }
      }
      if (alive) continue;
      std::vector<int> poly;
      int start = rot.begin()->first, w = start;
      do {
        poly.push_back(w);
        w = rot.at(w);
      } while (w != start);
      int m = static_cast<int>(poly.size());
      // apex must not create an edge that already exists outside the polygon
      int apex = -1;
      for (int a = 0; a < m; ++a) {
        bool ok = true;
        for (int k = 2; k <= m - 2 && ok; ++k) {
          int u = poly[a], x = poly[(a + k) % m];
          if (std::binary_search(nb[u].begin(), nb[u].end(), x)) ok = false;
        }
        if (ok && (apex < 0 || poly[a] < poly[apex])) apex = a;
      }
      if (apex < 0) throw std::logic_error("simplify: no admissible fan apex");
      std::set<int> star_set(star.begin(), star.end());
      std::vector<Triangle> ntris;
      std::vector<int> norig;
      for (int i = 0; i < t.triangle_count(); ++i) {
        if (star_set.count(i)) continue;
        ntris.push_back(t.triangles[i]);
        norig.push_back(origin[i]);
      }
      for (int k = 1; k <= m - 2; ++k) {
        Triangle nt{poly[apex], poly[(apex + k) % m], poly[(apex + k + 1) % m]};
        if (!signed_area(coords[nt[0]], coords[nt[1]], coords[nt[2]]).is_zero())
          throw std::logic_error("simplify: fan triangle is not degenerate");
        ntris.push_back(nt);
        norig.push_back(-1);
      }
      t.triangles = std::move(ntris);
      origin = std::move(norig);
      drop_vertices({v});
      return true;
    }
    return false;
  }
};

}  // namespace

Point make_point(const BigRational& x, const BigRational& y) { return {Scalar(x), Scalar(y)}; }

bool Drawing::is_real() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const Point& p) { return p.x.is_real() && p.y.is_real(); });
}

Scalar signed_area(const Point& a, const Point& b, const Point& c) {
  Scalar det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  return det * Scalar(BigRational(1, 2));
}

void require_drawing(const Triangulation& t, const Drawing& d) {
  if (static_cast<int>(d.coords.size()) != t.vertex_count)
    throw std::invalid_argument("drawing has " + std::to_string(d.coords.size()) +
                                " points for " + std::to_string(t.vertex_count) + " vertices");
  const auto& c = t.corners;
  const auto& P = d.coords;
  if (P[c[0]].x + P[c[2]].x != P[c[1]].x + P[c[3]].x || P[c[0]].y + P[c[2]].y != P[c[1]].y + P[c[3]].y)
    throw std::invalid_argument("drawing: corners are not a parallelogram");
}

std::vector<Scalar> areas(const Triangulation& t, const Drawing& d) {
  require_drawing(t, d);
  std::vector<Scalar> out;
  out.reserve(t.triangles.size());
  for (auto& tr : t.triangles) out.push_back(signed_area(d.coords[tr[0]], d.coords[tr[1]], d.coords[tr[2]]));
  return out;
}

Scalar boundary_area(const Triangulation& t, const Drawing& d) {
  const auto& c = t.corners;
  const auto& P = d.coords;
  return signed_area(P[c[0]], P[c[1]], P[c[2]]) + signed_area(P[c[0]], P[c[2]], P[c[3]]);
}

Drawing sample_drawing(const Triangulation& t, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den_dist(1, 10000);
  Drawing d;
  d.tri = t.name;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) throw std::runtime_error("sample_drawing: could not avoid degeneracy");
    d.coords.assign(t.vertex_count, Point{});
    const BigRational zero(0), one(1);
    d.coords[t.corners[0]] = make_point(zero, zero);
    d.coords[t.corners[1]] = make_point(one, zero);
    d.coords[t.corners[2]] = make_point(one, one);
    d.coords[t.corners[3]] = make_point(zero, one);
    for (int v = 0; v < t.vertex_count; ++v) {
      if (t.is_corner(v)) continue;
      BigRational xy[2];
      for (auto& r : xy) {
        long den = den_dist(rng);
        long num = std::uniform_int_distribution<long>(0, den)(rng);
        r = BigRational(BigInt(num), BigInt(den));
      }
      d.coords[v] = make_point(xy[0], xy[1]);
    }
    auto a = areas(t, d);
    if (std::none_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); })) return d;
  }
}

Drawing apply_affine(const Drawing& d, const std::array<Scalar, 4>& m, const std::array<Scalar, 2>& b) {
  Drawing out = d;
  for (auto& p : out.coords) {
    Point q{m[0] * p.x + m[1] * p.y + b[0], m[2] * p.x + m[3] * p.y + b[1]};
    p = q;
  }
  return out;
}

nlohmann::json drawing_to_json(const Drawing& d) {
  nlohmann::json j;
  j["tri"] = d.tri;
  nlohmann::json c = nlohmann::json::object();
  for (size_t v = 0; v < d.coords.size(); ++v) {
    const auto& p = d.coords[v];
    c[std::to_string(v)] = {p.x.re.str(), p.x.im.str(), p.y.re.str(), p.y.im.str()};
  }
  j["coords"] = c;
  return j;
}

Drawing drawing_from_json(const nlohmann::json& j) {
  Drawing d;
  if (j.contains("tri")) d.tri = j.at("tri").get<std::string>();
  const auto& c = j.at("coords");
  int n = static_cast<int>(c.size());
  d.coords.assign(n, Point{});
  std::vector<bool> seen(n, false);
  for (auto it = c.begin(); it != c.end(); ++it) {
    int v = std::stoi(it.key());
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("drawing_from_json: bad vertex key " + it.key());
    seen[v] = true;
    auto s = it.value().get<std::vector<std::string>>();
    if (s.size() != 4) throw std::invalid_argument("drawing_from_json: need [xRe,xIm,yRe,yIm]");
    d.coords[v] = {Scalar(BigRational::parse(s[0]), BigRational::parse(s[1])),
                   Scalar(BigRational::parse(s[2]), BigRational::parse(s[3]))};
  }
  return d;
}

// ---- elastic complex and bubbles ----

ElasticComplex elastic_complex(const Triangulation& t, const Drawing& d) {
  require_drawing(t, d);
  ElasticComplex out;
  std::set<int> verts;
  for (auto e : edges(t))
    if (d.coords[e[0]] == d.coords[e[1]]) {
      out.edges.push_back(e);
      verts.insert(e[0]);
      verts.insert(e[1]);
    }
  for (int i = 0; i < t.triangle_count(); ++i) {
    const auto& tr = t.triangles[i];
    if (d.coords[tr[0]] == d.coords[tr[1]] && d.coords[tr[1]] == d.coords[tr[2]]) out.triangles.push_back(i);
  }
  out.vertices.assign(verts.begin(), verts.end());
  return out;
}

std::vector<int> inside_of_cycle(const Triangulation& t, const std::vector<int>& cycle) {
  std::set<EdgeKey> cyc;
  int n = static_cast<int>(cycle.size());
  for (int i = 0; i < n; ++i) cyc.insert(ekey(cycle[i], cycle[(i + 1) % n]));
  auto et = edge_triangles(t);
  int F = t.triangle_count();
  std::vector<char> outside(F, 0);
  std::vector<int> stack;
  // the outer face touches every boundary edge not on the cycle
  for (auto& [e, ts] : et)
    if (ts.size() == 1 && !cyc.count(e) && !outside[ts[0]]) outside[ts[0]] = 1, stack.push_back(ts[0]);
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    const auto& tr = t.triangles[i];
    for (int k = 0; k < 3; ++k) {
      auto e = ekey(tr[k], tr[(k + 1) % 3]);
      if (cyc.count(e)) continue;
      for (int j : et[e])
        if (!outside[j]) outside[j] = 1, stack.push_back(j);
    }
  }
  std::vector<int> in;
  for (int i = 0; i < F; ++i)
    if (!outside[i]) in.push_back(i);
  return in;
}

std::vector<Bubble> find_bubbles(const Triangulation& t, const Drawing& d) {
  require_drawing(t, d);
  auto ec = elastic_complex(t, d);
  std::vector<Bubble> out;
  if (ec.empty()) return out;
  int n = t.vertex_count;
  std::vector<std::vector<int>> adj(n);
  for (auto e : ec.edges) adj[e[0]].push_back(e[1]), adj[e[1]].push_back(e[0]);
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // simple cycles of the elastic graph, each once: smallest vertex first,
  // second vertex smaller than the last
  std::vector<std::vector<int>> cycles;
  const size_t cap = 200000;
  std::vector<int> path;
  std::vector<char> on(n, 0);
  std::function<void(int, int)> dfs = [&](int s, int u) {
    for (int w : adj[u]) {
      if (cycles.size() >= cap) return;
      if (w == s && path.size() >= 3 && path[1] < path.back()) cycles.push_back(path);
      if (w <= s || on[w]) continue;
      on[w] = 1;
      path.push_back(w);
      dfs(s, w);
      path.pop_back();
      on[w] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on[s] = 1;
    dfs(s, s);
    on[s] = 0;
  }
  if (cycles.size() >= cap) throw std::runtime_error("find_bubbles: too many elastic cycles");

  auto et = edge_triangles(t);
  auto all_edges = edges(t);
  for (auto& cyc : cycles) {
    const Point& star = d.coords[cyc[0]];
    auto inside = inside_of_cycle(t, cyc);
    if (inside.empty()) continue;
    std::set<int> inset(inside.begin(), inside.end());
    int m = static_cast<int>(cyc.size());
    std::vector<int> R(m, -1), ssr(m, -1);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      int a = cyc[i], b = cyc[(i + 1) % m];
      for (int tri : et[ekey(a, b)])
        if (inset.count(tri)) {
          const auto& tr = t.triangles[tri];
          R[i] = tr[0] + tr[1] + tr[2] - a - b;
          ssr[i] = tri;
        }
      if (R[i] < 0 || d.coords[R[i]] == star) ok = false;
    }
    if (!ok) continue;
    // components of |T| minus the cell-fiber of star
    auto at_star = [&](int v) { return d.coords[v] == star; };
    int E = static_cast<int>(all_edges.size());
    UnionFind uf(n + E + t.triangle_count());
    std::map<EdgeKey, int> eid;
    for (int k = 0; k < E; ++k) {
      eid[{all_edges[k][0], all_edges[k][1]}] = k;
      int a = all_edges[k][0], b = all_edges[k][1];
      if (at_star(a) && at_star(b)) continue;
      if (!at_star(a)) uf.unite(n + k, a);
      if (!at_star(b)) uf.unite(n + k, b);
    }
    for (int i = 0; i < t.triangle_count(); ++i) {
      const auto& tr = t.triangles[i];
      if (at_star(tr[0]) && at_star(tr[1]) && at_star(tr[2])) continue;
      for (int k = 0; k < 3; ++k) {
        int a = tr[k], b = tr[(k + 1) % 3];
        if (at_star(a) && at_star(b)) continue;
        uf.unite(n + E + i, n + eid[ekey(a, b)]);
      }
    }
    int comp = uf.find(R[0]);
    for (int r : R)
      if (uf.find(r) != comp) ok = false;
    if (!ok) continue;
    Bubble b;
    b.cycle = cyc;
    b.inside = inside;
    b.ssr = ssr;
    std::set<int> cv(cyc.begin(), cyc.end()), iv;
    for (int i : inside)
      for (int v : t.triangles[i])
        if (!cv.count(v)) iv.insert(v);
    b.interior_vertices.assign(iv.begin(), iv.end());
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Bubble& a, const Bubble& b) {
    if (a.inside.size() != b.inside.size()) return a.inside.size() < b.inside.size();
    return a.cycle < b.cycle;
  });
  return out;
}

// ---- simplification ----

bool is_simple(const Triangulation& t, const Drawing& d) {
  require_drawing(t, d);
  for (auto tri : subdivisions(t)) {
    auto inside = inside_of_cycle(t, {tri[0], tri[1], tri[2]});
    if (std::all_of(inside.begin(), inside.end(), [&](int i) { return degenerate(t, d.coords, i); }))
      return false;
  }
  for (auto e : interior_edges(t))
    if (d.coords[e[0]] == d.coords[e[1]] && contract_edge(t, e[0], e[1])) return false;
  std::vector<char> alive(t.vertex_count, 0);
  for (int i = 0; i < t.triangle_count(); ++i)
    if (!degenerate(t, d.coords, i))
      for (int v : t.triangles[i]) alive[v] = 1;
  for (int v = 0; v < t.vertex_count; ++v)
    if (!t.is_corner(v) && !alive[v]) return false;
  return true;
}

SimplifiedDrawing simplify_drawing(const Triangulation& t, const Drawing& d) {
  require_drawing(t, d);
  auto a = areas(t, d);
  std::vector<int> nondeg;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    if (!a[i].is_zero()) nondeg.push_back(i);
  if (nondeg.empty()) throw std::invalid_argument("simplify_drawing: no nondegenerate triangles");
  int l = static_cast<int>(nondeg.size());
  if (l > 24) throw std::invalid_argument("simplify_drawing: too many nondegenerate triangles for the subset check");
  for (uint32_t mask = 1; mask < (1u << l); ++mask) {
    Scalar s(0);
    for (int k = 0; k < l; ++k)
      if (mask >> k & 1) s += a[nondeg[k]];
    if (s.is_zero()) {
      std::ostringstream os;
      os << "simplify_drawing: areas of triangles {";
      bool first = true;
      for (int k = 0; k < l; ++k)
        if (mask >> k & 1) os << (first ? "" : ",") << nondeg[k], first = false;
      os << "} sum to zero";
      throw std::invalid_argument(os.str());
    }
  }
  Work w{t, d.coords, {}};
  w.origin.resize(t.triangle_count());
  std::iota(w.origin.begin(), w.origin.end(), 0);
  while (w.collapse_degenerate_subdivision() || w.contract_elastic_edge() || w.delete_dead_vertex()) {
  }
  w.t.name.clear();
  require_valid(w.t);
  return {w.t, Drawing{d.tri, w.coords}, w.origin};
}

// ---- constrained triangulations ----

ConstrainedTriangulation ConstrainedTriangulation::from_triangle_sets(
    const Triangulation& t, const std::vector<std::vector<int>>& sets) {
  ConstrainedTriangulation ct{t, {}};
  for (auto& s : sets) {
    Constraint c{s, {}};
    for (int i : s) {
      if (i < 0 || i >= t.triangle_count()) throw std::out_of_range("constraint triangle index");
      c.vertices.insert(t.triangles[i].begin(), t.triangles[i].end());
    }
    ct.constraints.push_back(std::move(c));
  }
  return ct;
}

std::vector<int> ConstrainedTriangulation::living_triangles() const {
  std::vector<int> out;
  for (int i = 0; i < base.triangle_count(); ++i) {
    bool doomed = false;
    for (auto& c : constraints) {
      const auto& tr = base.triangles[i];
      if (c.vertices.count(tr[0]) && c.vertices.count(tr[1]) && c.vertices.count(tr[2])) doomed = true;
    }
    if (!doomed) out.push_back(i);
  }
  return out;
}

std::vector<int> ConstrainedTriangulation::doomed_triangles() const {
  auto live = living_triangles();
  std::vector<int> out;
  for (int i = 0; i < base.triangle_count(); ++i)
    if (!std::binary_search(live.begin(), live.end(), i)) out.push_back(i);
  return out;
}

std::vector<std::string> check_constraints(const ConstrainedTriangulation& ct) {
  std::vector<std::string> out;
  std::map<int, int> owner;
  for (size_t k = 0; k < ct.constraints.size(); ++k) {
    const auto& c = ct.constraints[k];
    for (int i : c.triangles) {
      auto [it, fresh] = owner.emplace(i, static_cast<int>(k));
      if (!fresh)
        out.push_back("triangle " + std::to_string(i) + " in constraints " + std::to_string(it->second) +
                      " and " + std::to_string(k));
    }
    if (c.triangles.size() > 1) {
      // contiguity in the dual graph
      std::set<int> seen{c.triangles[0]};
      std::vector<int> stack{c.triangles[0]};
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j : c.triangles)
          if (!seen.count(j) && adjacent_triangles(ct.base, i, j)) seen.insert(j), stack.push_back(j);
      }
      if (seen.size() != std::set<int>(c.triangles.begin(), c.triangles.end()).size())
        out.push_back("constraint " + std::to_string(k) + " triangles are not contiguous");
    }
  }
  return out;
}

std::vector<std::string> validate_constrained(const ConstrainedTriangulation& ct, const Drawing& d) {
  require_drawing(ct.base, d);
  auto out = check_constraints(ct);
  for (size_t k = 0; k < ct.constraints.size(); ++k) {
    std::vector<Point> pts;
    for (int v : ct.constraints[k].vertices) pts.push_back(d.coords[v]);
    // first two distinct points span the line; every other point must lie on it
    const Point& p0 = pts.front();
    auto it = std::find_if(pts.begin(), pts.end(), [&](const Point& p) { return p != p0; });
    if (it == pts.end()) continue;
    const Point p1 = *it;
    for (const auto& p : pts)
      if (!signed_area(p0, p1, p).is_zero()) {
        out.push_back("constraint " + std::to_string(k) + " is not drawn on a line");
        break;
      }
  }
  return out;
}

ConstrainedTriangulation maximal_amalgamation(const ConstrainedTriangulation& ct) {
  ConstrainedTriangulation out = ct;
  auto es = edges(ct.base);
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < out.constraints.size() && !merged; ++i)
      for (size_t j = i + 1; j < out.constraints.size() && !merged; ++j) {
        const auto& A = out.constraints[i].vertices;
        const auto& B = out.constraints[j].vertices;
        for (auto e : es)
          if (A.count(e[0]) && A.count(e[1]) && B.count(e[0]) && B.count(e[1])) {
            merged = true;
            break;
          }
        if (!merged) continue;
        auto& C = out.constraints[i];
        C.vertices.insert(B.begin(), B.end());
        C.triangles.insert(C.triangles.end(), out.constraints[j].triangles.begin(),
                           out.constraints[j].triangles.end());
        std::sort(C.triangles.begin(), C.triangles.end());
        out.constraints.erase(out.constraints.begin() + j);
      }
  }
  return out;
}

bool is_comb_irreducible(const ConstrainedTriangulation& ct) {
  for (size_t i = 0; i < ct.constraints.size(); ++i)
    for (size_t j = i + 1; j < ct.constraints.size(); ++j) {
      int shared = 0;
      for (int v : ct.constraints[i].vertices) shared += ct.constraints[j].vertices.count(v);
      if (shared > 1) return false;
    }
  return true;
}

}  // namespace arearel
