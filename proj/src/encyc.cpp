#include "arearel/encyc.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "arearel/factor.hpp"
#include "arearel/parallel.hpp"

namespace arearel {

namespace {

constexpr size_t kMaxWitnesses = 5;

std::string subset_text(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + variable_name(s[i]);
  return out + "}";
}

Poly pair_poly(int sign) {
  Poly r = Poly::variable(2, 0);
  if (sign > 0)
    r += Poly::variable(2, 1);
  else
    r -= Poly::variable(2, 1);
  return r;
}

}  // namespace

bool Volume::contains(const PolyClass& c) const {
  return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.cls == c; });
}

std::vector<PolyClass> Volume::classes() const {
  std::vector<PolyClass> out;
  for (auto& e : entries) out.push_back(e.cls);
  return out;
}

std::vector<std::pair<std::vector<int>, HomogPoly>> specializations_of(const HomogPoly& p, int l) {
  int n = p.nvars();
  if (l < 1 || l > n) throw std::invalid_argument("specializations_of: need 1 <= l <= nvars");
  std::vector<std::pair<std::vector<int>, HomogPoly>> out;
  std::vector<int> idx(l);
  for (int i = 0; i < l; ++i) idx[i] = i;
  while (true) {
    out.push_back({idx, specialize(p, idx)});
    int i = l - 1;
    while (i >= 0 && idx[i] == n - l + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < l; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<std::string> required_triangulations(int l) {
  if (l < 1 || l > 4) throw std::invalid_argument("volumes are supported for 1 <= l <= 4");
  // nothing has at most 0 triangles, so the first volume reads T_0
  if (l == 1) return {"T_0"};
  int bound = 2 * ((3 * l - 2) / 2);
  std::vector<std::string> out;
  for (auto& name : catalog_names()) {
    auto t = load_catalog_entry(name);
    if (t.triangle_count() <= bound && t.triangle_count() >= l) out.push_back(name);
  }
  return out;
}

Volume build_volume(int l, const PolyStore& store, int jobs) {
  auto names = required_triangulations(l);
  std::vector<std::string> missing;
  for (auto& n : names)
    if (!store.count(n)) missing.push_back(n);
  if (!missing.empty()) {
    std::string msg = "build_volume: missing area polynomials for";
    for (auto& m : missing) msg += " " + m;
    throw std::runtime_error(msg);
  }

  struct Task {
    std::string tri;
    std::vector<int> subset;
    HomogPoly specialized;
  };
  std::vector<Task> tasks;
  for (auto& n : names)
    for (auto& [subset, q] : specializations_of(store.at(n), l)) tasks.push_back({n, subset, q});

  std::vector<std::vector<PolyClass>> found(tasks.size());
  parallel_for(tasks.size(), jobs, [&](size_t i) {
    const auto& q = tasks[i].specialized;
    if (q.is_zero())
      throw std::logic_error("zero specialization of " + tasks[i].tri + " at " + subset_text(tasks[i].subset));
    for (auto& [f, m] : factor_homogeneous(q).factors) found[i].push_back(canonicalize_class(HomogPoly(f)));
  });

  std::map<PolyClass, EncyclopediaEntry> merged;
  for (size_t i = 0; i < tasks.size(); ++i)
    for (auto& c : found[i]) {
      auto [it, fresh] = merged.try_emplace(c);
      auto& e = it->second;
      if (fresh) {
        e.cls = c;
        e.l = l;
        e.degree = c.representative.degree();
      }
      if (e.provenance.size() < kMaxWitnesses) e.provenance.push_back({tasks[i].tri, tasks[i].subset});
    }
  Volume v;
  v.l = l;
  for (auto& [_, e] : merged) v.entries.push_back(e);
  return v;
}

std::vector<std::vector<PolyClass>> subdivision_closure(const std::vector<Volume>& abridged) {
  std::vector<std::vector<PolyClass>> out;
  for (size_t k = 0; k < abridged.size(); ++k) {
    std::set<PolyClass> level;
    for (auto& e : abridged[k].entries) level.insert(e.cls);
    if (k > 0)
      for (auto& c : out[k - 1])
        for (int v = 0; v < c.representative.nvars(); ++v)
          level.insert(canonicalize_class(algebraic_subdivide(c.representative, v)));
    out.emplace_back(level.begin(), level.end());
  }
  return out;
}

AbridgeResult abridge(const std::vector<Volume>& volumes) {
  AbridgeResult r;
  for (size_t k = 0; k < volumes.size(); ++k) {
    if (volumes[k].l != static_cast<int>(k) + 1) throw std::invalid_argument("abridge: volumes must be E_1, E_2, ...");
    Volume a;
    a.l = volumes[k].l;
    for (auto& e : volumes[k].entries) {
      std::optional<SubdivisionWitness> w;
      if (e.cls.representative.nvars() >= 2) w = detect_subdivision(e.cls.representative);
      if (!w) {
        a.entries.push_back(e);
        continue;
      }
      if (k == 0 || !volumes[k - 1].contains(canonicalize_class(w->merged)))
        r.mismatches.push_back("merged form of " + to_text(e.cls.representative) + " is missing from E_" +
                               std::to_string(k));
    }
    r.abridged.push_back(std::move(a));
  }
  auto closure = subdivision_closure(r.abridged);
  for (size_t k = 0; k < volumes.size(); ++k) {
    auto expect = volumes[k].classes();
    std::sort(expect.begin(), expect.end());
    if (closure[k] == expect) continue;
    for (auto& c : closure[k])
      if (!std::binary_search(expect.begin(), expect.end(), c))
        r.mismatches.push_back("closure adds " + to_text(c.representative) + " to E_" + std::to_string(k + 1));
    for (auto& c : expect)
      if (!std::binary_search(closure[k].begin(), closure[k].end(), c))
        r.mismatches.push_back("closure misses " + to_text(c.representative) + " in E_" + std::to_string(k + 1));
  }
  r.closure_ok = r.mismatches.empty();
  return r;
}

PairForm pair_form(const HomogPoly& p, int i, int j) {
  if (i == j) throw std::invalid_argument("pair_form: need two distinct variables");
  Poly q = p.poly().restrict_to({i, j});
  if (q.is_zero()) throw std::domain_error("pair_form: restriction vanishes");
  PairForm r;
  Poly plus = pair_poly(1), minus = pair_poly(-1);
  while (auto d = divide_exact(q, plus)) {
    q = *d;
    ++r.e;
  }
  while (auto d = divide_exact(q, minus)) {
    q = *d;
    ++r.f;
  }
  if (!q.is_constant())
    throw std::domain_error("pair_form: restriction to " + variable_name(i) + "," + variable_name(j) +
                            " has the factor " + to_text(q));
  r.c = q.terms().begin()->second;
  return r;
}

std::vector<int> canonical_coloring(const Triangulation& t, const HomogPoly& p) {
  int n = p.nvars();
  if (n != t.triangle_count()) throw std::invalid_argument("canonical_coloring: variable count mismatch");
  int d = p.degree();
  std::vector<int> colors(n);
  for (int i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = d;
    BigInt c = p.poly().coeff(e);
    if (c == 0) throw std::logic_error("canonical_coloring: leading coefficient of " + variable_name(i) + " is zero");
    colors[i] = c > 0 ? 0 : 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool same = pair_form(p, i, j).f % 2 == 0;
      if (same != (colors[i] == colors[j]))
        throw std::logic_error("canonical_coloring: sign and parity disagree on " + variable_name(i) + "," +
                               variable_name(j));
    }
  return colors;
}

bool QuadGraph::has_triangle() const {
  std::set<std::pair<int, int>> es(edges.begin(), edges.end());
  auto adj = [&](int a, int b) { return es.count({std::min(a, b), std::max(a, b)}) > 0; };
  int n = static_cast<int>(colors.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (adj(a, b) && adj(b, c) && adj(a, c)) return true;
  return false;
}

bool quadratic_cross_terms_ok(const HomogPoly& q) {
  if (q.degree() != 2) return false;
  int n = q.nvars();
  BigInt lead = -1;
  for (int i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 2;
    BigInt c = abs(q.poly().coeff(e));
    if (c == 0 || (lead >= 0 && c != lead)) return false;
    lead = c;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Exponents e(n, 0);
      e[i] = e[j] = 1;
      BigInt c = abs(q.poly().coeff(e));
      if (c != 0 && c != 2 * lead) return false;
    }
  return true;
}

QuadGraph quadratic_graph(const HomogPoly& q) {
  if (!quadratic_cross_terms_ok(q)) throw std::invalid_argument("quadratic_graph: not an encodable quadratic");
  int n = q.nvars();
  QuadGraph g;
  std::vector<int> sign(n);
  for (int i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 2;
    sign[i] = sgn(q.poly().coeff(e));
    g.colors.push_back(sign[i] > 0 ? 0 : 1);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Exponents e(n, 0);
      e[i] = e[j] = 1;
      int c = sgn(q.poly().coeff(e));
      if (c == 0) continue;
      if (g.colors[i] != g.colors[j]) throw std::invalid_argument("quadratic_graph: cross term between colors");
      if (c != sign[i]) g.edges.push_back({i, j});
    }
  return g;
}

nlohmann::json volume_to_json(const Volume& v) {
  nlohmann::json entries = nlohmann::json::array();
  for (auto& e : v.entries) {
    nlohmann::json prov = nlohmann::json::array();
    for (auto& w : e.provenance) prov.push_back({{"tri", w.tri}, {"subset", w.subset}});
    entries.push_back({{"poly", to_text(e.cls.representative)}, {"degree", e.degree}, {"provenance", prov}});
  }
  return {{"l", v.l}, {"entries", entries}};
}

Volume volume_from_json(const nlohmann::json& j) {
  Volume v;
  v.l = j.at("l").get<int>();
  for (auto& e : j.at("entries")) {
    EncyclopediaEntry x;
    x.l = v.l;
    x.cls = canonicalize_class(HomogPoly(parse_poly(e.at("poly").get<std::string>(), v.l)));
    x.degree = e.at("degree").get<int>();
    for (auto& w : e.at("provenance"))
      x.provenance.push_back({w.at("tri").get<std::string>(), w.at("subset").get<std::vector<int>>()});
    v.entries.push_back(std::move(x));
  }
  return v;
}

std::string volume_to_text(const Volume& v) {
  std::ostringstream os;
  os << "E_" << v.l << ": " << v.entries.size() << " classes\n";
  for (auto& e : v.entries) {
    os << "  [deg " << e.degree << "] " << to_text(e.cls.representative);
    if (!e.provenance.empty())
      os << "   from " << e.provenance.front().tri << " " << subset_text(e.provenance.front().subset);
    os << "\n";
  }
  return os.str();
}

}  // namespace arearel
