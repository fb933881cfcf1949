#include "arearel/tri.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arearel {

namespace {

using DirEdge = std::pair<int, int>;

// directed edge (a,b) -> index of the triangle that contains it positively
std::map<DirEdge, int> directed_edges(const Triangulation& t, bool* clash = nullptr) {
  std::map<DirEdge, int> out;
  for (int i = 0; i < t.triangle_count(); ++i) {
    const auto& tr = t.triangles[i];
    for (int k = 0; k < 3; ++k) {
      DirEdge e{tr[k], tr[(k + 1) % 3]};
      if (!out.emplace(e, i).second && clash) *clash = true;
    }
  }
  return out;
}

// boundary successor: for each boundary directed edge u->v
std::map<int, int> boundary_next(const std::map<DirEdge, int>& de) {
  std::map<int, int> next;
  for (auto& [e, _] : de)
    if (!de.count({e.second, e.first})) next[e.first] = e.second;
  return next;
}

// ccw rotation around every vertex of the sphere obtained by adding a
// vertex `inf` joined to the whole boundary
std::vector<std::map<int, int>> sphere_rotation(const Triangulation& t, int inf) {
  std::vector<std::map<int, int>> rot(t.vertex_count + 1);
  auto add = [&](int a, int b, int c) {
    rot[a][b] = c;
    rot[b][c] = a;
    rot[c][a] = b;
  };
  for (auto& tr : t.triangles) add(tr[0], tr[1], tr[2]);
  auto de = directed_edges(t);
  for (auto& [u, v] : boundary_next(de)) add(v, u, inf);
  return rot;
}

std::vector<int> bfs_code(const std::vector<std::map<int, int>>& rot, int root, int first,
                          bool ccw, std::vector<int>* labels_out) {
  int n = static_cast<int>(rot.size());
  // reversed rotation for the mirror image
  std::vector<std::map<int, int>> rev;
  if (!ccw) {
    rev.resize(n);
    for (int v = 0; v < n; ++v)
      for (auto& [a, b] : rot[v]) rev[v][b] = a;
  }
  const auto& R = ccw ? rot : rev;
  std::vector<int> label(n, -1), parent(n, -1);
  std::vector<int> code;
  std::deque<int> queue;
  int next = 0;
  label[root] = next++;
  parent[root] = first;
  queue.push_back(root);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    code.push_back(static_cast<int>(R[u].size()));
    int w = parent[u];
    for (size_t k = 0; k < R[u].size(); ++k) {
      if (label[w] < 0) {
        label[w] = next++;
        parent[w] = u;
        queue.push_back(w);
      }
      code.push_back(label[w]);
      w = R[u].at(w);
    }
  }
  if (labels_out) *labels_out = label;
  return code;
}

struct BestCode {
  std::vector<int> code;
  std::vector<int> labels;
  bool ccw = true;
  int first = -1;
};

BestCode best_code(const Triangulation& t) {
  int inf = t.vertex_count;
  auto rot = sphere_rotation(t, inf);
  BestCode best;
  for (int c : t.corners) {
    for (bool ccw : {true, false}) {
      std::vector<int> labels;
      auto code = bfs_code(rot, inf, c, ccw, &labels);
      if (best.first < 0 || code < best.code) {
        best.code = std::move(code);
        best.labels = std::move(labels);
        best.ccw = ccw;
        best.first = c;
      }
    }
  }
  return best;
}

std::set<std::array<int, 3>> face_set(const Triangulation& t) {
  std::set<std::array<int, 3>> faces;
  for (auto tr : t.triangles) {
    std::sort(tr.begin(), tr.end());
    faces.insert(tr);
  }
  return faces;
}

// vertex splits of x: every way to divide its fan into two nonempty-ish parts
std::vector<Triangulation> vertex_splits(const Triangulation& t) {
  std::vector<Triangulation> out;
  int n = t.vertex_count;
  auto de = directed_edges(t);
  auto bnext = boundary_next(de);
  // ccw successor of w around x: triangle (x, w, w') gives w -> w'
  std::vector<std::map<int, int>> rot(n);
  for (auto& tr : t.triangles)
    for (int k = 0; k < 3; ++k) rot[tr[k]][tr[(k + 1) % 3]] = tr[(k + 2) % 3];

  for (int x = 0; x < n; ++x) {
    bool corner = t.is_corner(x);
    // fan of x as an ordered neighbour list
    std::vector<int> fan;
    if (corner) {
      // start at the boundary successor, walk ccw until the predecessor
      int w = bnext.at(x);
      fan.push_back(w);
      while (rot[x].count(w)) {
        w = rot[x][w];
        fan.push_back(w);
      }
    } else {
      int start = rot[x].begin()->first;
      int w = start;
      do {
        fan.push_back(w);
        w = rot[x][w];
      } while (w != start);
    }
    int m = static_cast<int>(fan.size());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        if (corner && i > j) continue;
        // wedge from fan[i] to fan[j] going ccw moves to the new vertex y
        int y = n;
        std::set<int> moved;
        for (int a = i; a != j; a = corner ? a + 1 : (a + 1) % m) moved.insert(a);
        Triangulation s;
        s.vertex_count = n + 1;
        s.corners = t.corners;
        for (auto tr : t.triangles) {
          for (int k = 0; k < 3; ++k) {
            if (tr[k] != x) continue;
            int w = tr[(k + 1) % 3];
            int idx = static_cast<int>(std::find(fan.begin(), fan.end(), w) - fan.begin());
            if (moved.count(idx)) tr[k] = y;
          }
          s.triangles.push_back(tr);
        }
        s.triangles.push_back({x, fan[i], y});
        s.triangles.push_back({x, y, fan[j]});
        if (validate(s).empty()) out.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace

bool Triangulation::is_corner(int v) const {
  return std::find(corners.begin(), corners.end(), v) != corners.end();
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonSimplicial: return "non-simplicial";
    case ViolationKind::BadBoundary: return "bad-boundary";
    case ViolationKind::OrientationClash: return "orientation-clash";
    case ViolationKind::CountMismatch: return "count-mismatch";
    case ViolationKind::DiskTopology: return "disk-topology";
  }
  return "unknown";
}

std::vector<Violation> validate(const Triangulation& t) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind k, std::string d) { out.push_back({k, std::move(d)}); };
  int n = t.vertex_count;
  if (n < 4) {
    add(ViolationKind::CountMismatch, "fewer than 4 vertices");
    return out;
  }
  std::set<int> cs(t.corners.begin(), t.corners.end());
  if (cs.size() != 4) add(ViolationKind::BadBoundary, "corners not distinct");
  for (int c : t.corners)
    if (c < 0 || c >= n) {
      add(ViolationKind::BadBoundary, "corner id out of range");
      return out;
    }
  for (auto& tr : t.triangles) {
    for (int v : tr)
      if (v < 0 || v >= n) {
        add(ViolationKind::NonSimplicial, "vertex id out of range");
        return out;
      }
    if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])
      add(ViolationKind::NonSimplicial, "repeated vertex in triangle");
  }
  if (!out.empty()) return out;
  auto faces = face_set(t);
  if (static_cast<int>(faces.size()) != t.triangle_count())
    add(ViolationKind::NonSimplicial, "duplicate triangle");

  std::map<std::pair<int, int>, int> uses;
  for (auto& tr : t.triangles)
    for (int k = 0; k < 3; ++k) {
      int a = tr[k], b = tr[(k + 1) % 3];
      uses[{std::min(a, b), std::max(a, b)}]++;
    }
  for (auto& [e, c] : uses)
    if (c > 2) add(ViolationKind::NonSimplicial, "edge in more than two triangles");

  bool clash = false;
  auto de = directed_edges(t, &clash);
  if (clash) add(ViolationKind::OrientationClash, "directed edge used twice");

  // boundary cycle p -> q -> r -> s -> p through boundary edges only
  auto bnext = boundary_next(de);
  std::map<int, int> bcount;
  for (auto& [u, v] : bnext) bcount[u]++;
  int bedges = 0;
  for (auto& [e, c] : uses)
    if (c == 1) ++bedges;
  if (bedges != 4) {
    add(ViolationKind::BadBoundary, "boundary has " + std::to_string(bedges) + " edges");
  } else if (!clash) {
    for (int k = 0; k < 4; ++k) {
      auto it = bnext.find(t.corners[k]);
      if (it == bnext.end() || it->second != t.corners[(k + 1) % 4]) {
        add(ViolationKind::BadBoundary, "boundary is not p->q->r->s");
        break;
      }
    }
  }

  int k = n - 4;
  if (t.triangle_count() != 2 * k + 2)
    add(ViolationKind::CountMismatch, "triangle count " + std::to_string(t.triangle_count()) +
                                          " != " + std::to_string(2 * k + 2));

  // Euler characteristic and connectivity
  int V = 0;
  std::vector<int> seen(n, 0);
  for (auto& tr : t.triangles)
    for (int v : tr) seen[v] = 1;
  for (int v = 0; v < n; ++v) V += seen[v];
  int E = static_cast<int>(uses.size());
  int F = t.triangle_count();
  if (V != n) add(ViolationKind::DiskTopology, "isolated vertex");
  if (V - E + F != 1) add(ViolationKind::DiskTopology, "Euler characteristic " + std::to_string(V - E + F));
  if (F > 0) {
    std::vector<int> comp(F, 0);
    std::vector<int> stack{0};
    comp[0] = 1;
    std::map<std::pair<int, int>, std::vector<int>> etri;
    for (int i = 0; i < F; ++i)
      for (int kk = 0; kk < 3; ++kk) {
        int a = t.triangles[i][kk], b = t.triangles[i][(kk + 1) % 3];
        etri[{std::min(a, b), std::max(a, b)}].push_back(i);
      }
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int kk = 0; kk < 3; ++kk) {
        int a = t.triangles[i][kk], b = t.triangles[i][(kk + 1) % 3];
        for (int j : etri[{std::min(a, b), std::max(a, b)}])
          if (!comp[j]) comp[j] = 1, stack.push_back(j);
      }
    }
    if (std::count(comp.begin(), comp.end(), 0) > 0)
      add(ViolationKind::DiskTopology, "triangles not edge-connected");
  }
  // vertex links: each vertex's star must be a single fan
  if (!clash) {
    std::vector<std::map<int, int>> rot(n);
    for (auto& tr : t.triangles)
      for (int kk = 0; kk < 3; ++kk) rot[tr[kk]][tr[(kk + 1) % 3]] = tr[(kk + 2) % 3];
    for (int v = 0; v < n; ++v) {
      if (rot[v].empty()) continue;
      std::set<int> targets;
      for (auto& [a, b] : rot[v]) targets.insert(b);
      std::vector<int> starts;
      for (auto& [a, b] : rot[v])
        if (!targets.count(a)) starts.push_back(a);
      if (starts.size() > 1) {
        add(ViolationKind::DiskTopology, "vertex " + std::to_string(v) + " link is disconnected");
        continue;
      }
      int start = starts.empty() ? rot[v].begin()->first : starts[0];
      size_t steps = 0;
      int w = start;
      while (rot[v].count(w) && steps <= rot[v].size()) {
        w = rot[v][w];
        ++steps;
        if (w == start) break;
      }
      if (steps != rot[v].size())
        add(ViolationKind::DiskTopology, "vertex " + std::to_string(v) + " link is disconnected");
      bool on_boundary = !starts.empty();
      if (on_boundary != t.is_corner(v) && bedges == 4)
        add(ViolationKind::BadBoundary, "vertex " + std::to_string(v) + " boundary status wrong");
    }
  }
  return out;
}

void require_valid(const Triangulation& t) {
  auto v = validate(t);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid triangulation";
  for (auto& x : v) os << "; " << to_string(x.kind) << ": " << x.detail;
  throw std::invalid_argument(os.str());
}

std::vector<std::array<int, 3>> subdivisions(const Triangulation& t) {
  auto nb = neighbors(t);
  auto faces = face_set(t);
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a < t.vertex_count; ++a)
    for (int b : nb[a]) {
      if (b <= a) continue;
      for (int c : nb[b]) {
        if (c <= b) continue;
        if (!std::binary_search(nb[a].begin(), nb[a].end(), c)) continue;
        if (!faces.count({a, b, c})) out.push_back({a, b, c});
      }
    }
  return out;
}

std::optional<std::array<int, 3>> has_subdivision(const Triangulation& t) {
  auto s = subdivisions(t);
  if (s.empty()) return std::nullopt;
  return s.front();
}

std::vector<std::array<int, 2>> edges(const Triangulation& t) {
  std::set<std::array<int, 2>> es;
  for (auto& tr : t.triangles)
    for (int k = 0; k < 3; ++k) {
      int a = tr[k], b = tr[(k + 1) % 3];
      es.insert({std::min(a, b), std::max(a, b)});
    }
  return {es.begin(), es.end()};
}

std::vector<std::array<int, 2>> interior_edges(const Triangulation& t) {
  auto de = directed_edges(t);
  std::vector<std::array<int, 2>> out;
  for (auto e : edges(t))
    if (de.count({e[0], e[1]}) && de.count({e[1], e[0]})) out.push_back(e);
  return out;
}

std::vector<std::vector<int>> neighbors(const Triangulation& t) {
  std::vector<std::set<int>> s(t.vertex_count);
  for (auto e : edges(t)) s[e[0]].insert(e[1]), s[e[1]].insert(e[0]);
  std::vector<std::vector<int>> out;
  for (auto& x : s) out.emplace_back(x.begin(), x.end());
  return out;
}

bool adjacent_triangles(const Triangulation& t, int i, int j) {
  if (i == j) return false;
  int shared = 0;
  for (int a : t.triangles.at(i))
    for (int b : t.triangles.at(j)) shared += (a == b);
  return shared == 2;
}

std::optional<Triangulation> contract_edge(const Triangulation& t, int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= t.vertex_count || b >= t.vertex_count)
    throw std::invalid_argument("contract_edge: bad vertex ids");
  auto de = directed_edges(t);
  bool ab = de.count({a, b}), ba = de.count({b, a});
  if (!ab && !ba) throw std::invalid_argument("contract_edge: not an edge");
  if (!(ab && ba)) throw std::invalid_argument("contract_edge: boundary edge");
  if (t.is_corner(a) && t.is_corner(b)) return std::nullopt;
  auto nb = neighbors(t);
  std::vector<int> common;
  std::set_intersection(nb[a].begin(), nb[a].end(), nb[b].begin(), nb[b].end(),
                        std::back_inserter(common));
  if (common.size() != 2) return std::nullopt;

  int keep, gone;
  if (t.is_corner(a)) keep = a, gone = b;
  else if (t.is_corner(b)) keep = b, gone = a;
  else keep = std::min(a, b), gone = std::max(a, b);
  auto remap = [&](int v) {
    if (v == gone) v = keep;
    return v > gone ? v - 1 : v;
  };
  Triangulation out;
  out.vertex_count = t.vertex_count - 1;
  for (int k = 0; k < 4; ++k) out.corners[k] = remap(t.corners[k]);
  for (auto& tr : t.triangles) {
    bool hasa = std::find(tr.begin(), tr.end(), a) != tr.end();
    bool hasb = std::find(tr.begin(), tr.end(), b) != tr.end();
    if (hasa && hasb) continue;
    out.triangles.push_back({remap(tr[0]), remap(tr[1]), remap(tr[2])});
  }
  require_valid(out);
  return out;
}

std::string canonical_code(const Triangulation& t) {
  auto best = best_code(t);
  std::string bytes;
  bytes.reserve(best.code.size());
  for (int x : best.code) bytes.push_back(static_cast<char>(x));
  return bytes;
}

Triangulation canonical_form(const Triangulation& t, std::vector<int>* triangle_map) {
  auto best = best_code(t);
  std::vector<int> perm(t.vertex_count);
  for (int v = 0; v < t.vertex_count; ++v) perm[v] = best.labels[v] - 1;
  Triangulation out;
  out.vertex_count = t.vertex_count;
  out.name = t.name;
  for (auto tr : t.triangles) {
    Triangle m{perm[tr[0]], perm[tr[1]], perm[tr[2]]};
    if (!best.ccw) std::swap(m[1], m[2]);
    out.triangles.push_back(m);
  }
  auto bnext = boundary_next(directed_edges(out));
  int c = perm[best.first];
  for (int k = 0; k < 4; ++k) {
    out.corners[k] = c;
    c = bnext.at(c);
  }
  // rotate each triangle so its smallest id comes first, then sort
  for (auto& tr : out.triangles) {
    auto it = std::min_element(tr.begin(), tr.end());
    std::rotate(tr.begin(), it, tr.end());
  }
  auto mapped = out.triangles;
  std::sort(out.triangles.begin(), out.triangles.end());
  if (triangle_map) {
    triangle_map->clear();
    for (auto& tr : mapped)
      triangle_map->push_back(static_cast<int>(
          std::lower_bound(out.triangles.begin(), out.triangles.end(), tr) - out.triangles.begin()));
  }
  return out;
}

std::vector<Triangulation> enumerate_all(int interior) {
  if (interior < 0) throw std::invalid_argument("enumerate: negative interior count");
  if (interior > 5) throw std::invalid_argument("enumerate: more than 5 interior vertices unsupported");
  Triangulation t0;
  t0.vertex_count = 4;
  t0.corners = {0, 1, 2, 3};
  t0.triangles = {{0, 1, 2}, {2, 3, 0}};
  std::map<std::string, Triangulation> level{{canonical_code(t0), canonical_form(t0)}};
  for (int k = 1; k <= interior; ++k) {
    std::map<std::string, Triangulation> next;
    for (auto& [_, t] : level)
      for (auto& s : vertex_splits(t)) {
        auto code = canonical_code(s);
        if (!next.count(code)) next.emplace(code, canonical_form(s));
      }
    level = std::move(next);
  }
  std::vector<Triangulation> out;
  for (auto& [_, t] : level) out.push_back(t);
  return out;
}

std::vector<Triangulation> enumerate(int interior) {
  std::vector<Triangulation> out;
  for (auto& t : enumerate_all(interior))
    if (!has_subdivision(t)) out.push_back(t);
  return out;
}

Triangulation subdivide_triangle(const Triangulation& t, int tri, int parts) {
  if (tri < 0 || tri >= t.triangle_count()) throw std::out_of_range("subdivide_triangle: bad index");
  if (parts != 2 && parts != 3) throw std::invalid_argument("subdivide_triangle: parts must be 2 or 3");
  Triangulation out = t;
  out.name.clear();
  int d = t.vertex_count;
  out.vertex_count = d + 1;
  auto [a, b, c] = t.triangles[tri];
  if (parts == 3) {
    out.triangles[tri] = {a, b, d};
    out.triangles.push_back({b, c, d});
    out.triangles.push_back({c, a, d});
    return out;
  }
  auto de = directed_edges(t);
  const Triangle& tr = t.triangles[tri];
  for (int k = 0; k < 3; ++k) {
    int u = tr[k], v = tr[(k + 1) % 3], w = tr[(k + 2) % 3];
    auto it = de.find({v, u});
    if (it == de.end()) continue;
    int other = it->second;
    const Triangle& ot = t.triangles[other];
    int x = ot[0] + ot[1] + ot[2] - u - v;
    out.triangles[tri] = {u, d, w};
    out.triangles[other] = {v, d, x};
    out.triangles.push_back({d, v, w});
    out.triangles.push_back({d, u, x});
    return out;
  }
  throw std::invalid_argument("subdivide_triangle: triangle has no interior edge");
}

Triangulation relabel(const Triangulation& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.vertex_count) throw std::invalid_argument("relabel: size");
  Triangulation out = t;
  for (auto& c : out.corners) c = perm[c];
  for (auto& tr : out.triangles)
    for (auto& v : tr) v = perm[v];
  return out;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"T_0",     "T_1",         "T_2",         "T_3",
                                              "T_{2,1}", "T_4",         "T_{3,1}",     "T_{2,2,2,2}",
                                              "T_{3,1,3,1}", "T_{3,2,1,2}", "T_{3,2,2,1}"};
  return names;
}

std::string catalog_file_stem(const std::string& name) {
  std::string digits;
  for (char c : name)
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
  if (digits.empty()) throw std::invalid_argument("not a catalog name: " + name);
  std::string stem = "T";
  for (char c : digits) stem += std::string("_") + c;
  return stem;
}

std::string default_catalog_dir() {
  if (const char* env = std::getenv("AREAREL_DATA")) return std::string(env) + "/catalog";
  return std::string(AREAREL_DATA_DIR) + "/catalog";
}

Triangulation load_catalog_entry(const std::string& name, const std::string& dir) {
  std::string path = dir + "/" + catalog_file_stem(name) + ".json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file " + path);
  auto t = triangulation_from_json(nlohmann::json::parse(in));
  require_valid(t);
  return t;
}

std::vector<Triangulation> load_catalog(const std::string& dir) {
  std::vector<Triangulation> out;
  for (auto& n : catalog_names()) out.push_back(load_catalog_entry(n, dir));
  return out;
}

nlohmann::json to_json(const Triangulation& t) {
  nlohmann::json j;
  j["vertices"] = t.vertex_count;
  j["corners"] = t.corners;
  j["triangles"] = t.triangles;
  if (!t.name.empty()) j["name"] = t.name;
  return j;
}

Triangulation triangulation_from_json(const nlohmann::json& j) {
  Triangulation t;
  t.vertex_count = j.at("vertices").get<int>();
  t.corners = j.at("corners").get<std::array<int, 4>>();
  t.triangles = j.at("triangles").get<std::vector<Triangle>>();
  if (j.contains("name")) t.name = j.at("name").get<std::string>();
  return t;
}

}  // namespace arearel
