#include "arearel/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arearel {

int exp_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  int da = exp_degree(a), db = exp_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Poly Poly::constant(int nvars, const BigInt& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  Exponents e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, 1);
  return p;
}

Poly Poly::sigma(int nvars) {
  Poly p(nvars);
  for (int i = 0; i < nvars; ++i) p += variable(nvars, i);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exp_degree(terms_.begin()->first) == 0);
}

int Poly::total_degree() const {
  return terms_.empty() ? -1 : exp_degree(terms_.begin()->first);
}

int Poly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = total_degree();
  return exp_degree(terms_.rbegin()->first) == d;
}

BigInt Poly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void Poly::add_term(const Exponents& e, const BigInt& c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("add_term: exponent length");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt Poly::content() const {
  BigInt g = 0;
  for (auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::normalized() const {
  if (terms_.empty()) return *this;
  BigInt g = content();
  if (leading_coeff() < 0) g = -g;
  return divexact(g);
}

bool Poly::is_normalized() const {
  return terms_.empty() || (content() == 1 && leading_coeff() > 0);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: nvars mismatch");
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: nvars mismatch");
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Poly: nvars mismatch");
  Poly r(a.nvars_);
  Exponents e(a.nvars_);
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly r = constant(nvars_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::divexact(const BigInt& c) const {
  if (c == 0) throw std::domain_error("Poly::divexact: division by zero");
  Poly r = *this;
  for (auto& [e, v] : r.terms_) {
    if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t()))
      throw std::invalid_argument("Poly::divexact: not exact");
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto& [e0, c] : terms_) {
    if (e0[var] == 0) continue;
    BigInt k = c * e0[var];
    Exponents e = e0;
    e[var] -= 1;
    r.add_term(e, k);
  }
  return r;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("compose: image count");
  int m = images.empty() ? 0 : images[0].nvars();
  std::vector<std::vector<Poly>> powers(nvars_);
  Poly r(m);
  for (auto& [e, c] : terms_) {
    Poly t = constant(m, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(m, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[e[i]];
    }
    r += t;
  }
  return r;
}

Poly Poly::restrict_to(const std::vector<int>& keep) const {
  int m = static_cast<int>(keep.size());
  std::vector<int> slot(nvars_, -1);
  for (int k = 0; k < m; ++k) {
    if (keep[k] < 0 || keep[k] >= nvars_) throw std::out_of_range("restrict_to: variable index");
    slot[keep[k]] = k;
  }
  Poly r(m);
  for (auto& [e, c] : terms_) {
    bool ok = true;
    Exponents f(m, 0);
    for (int i = 0; i < nvars_ && ok; ++i) {
      if (e[i] == 0) continue;
      if (slot[i] < 0) ok = false;
      else f[slot[i]] = e[i];
    }
    if (ok) r.add_term(f, c);
  }
  return r;
}

Poly Poly::permute(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != nvars_) throw std::invalid_argument("permute: size");
  Poly r(nvars_);
  Exponents f(nvars_);
  for (auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) f[perm[i]] = e[i];
    r.terms_.emplace(f, c);
  }
  return r;
}

uint64_t Poly::evaluate_mod(const std::vector<uint64_t>& point, uint64_t p) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("evaluate_mod: length");
  uint64_t total = 0;
  for (auto& [e, c] : terms_) {
    uint64_t t = reduce_mod(c, p);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t = mul_mod(t, pow_mod(point[i], e[i], p), p);
    total = add_mod(total, t, p);
  }
  return total;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (a.nvars() != b.nvars()) throw std::invalid_argument("divide_exact: nvars mismatch");
  int n = a.nvars();
  Poly q(n), r = a;
  const Exponents& lb = b.leading_exponents();
  const BigInt& cb = b.leading_coeff();
  Exponents e(n);
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    for (int i = 0; i < n; ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < 0) return std::nullopt;
    }
    if (!mpz_divisible_p(r.leading_coeff().get_mpz_t(), cb.get_mpz_t())) return std::nullopt;
    BigInt c = r.leading_coeff() / cb;
    Poly t(n);
    t.add_term(e, c);
    q += t;
    r -= t * b;
  }
  return q;
}

HomogPoly::HomogPoly(Poly p) : p_(std::move(p)) {
  if (!p_.is_homogeneous()) throw std::invalid_argument("HomogPoly: polynomial is not homogeneous");
  degree_ = p_.is_zero() ? 0 : p_.total_degree();
}

// ---- text ----

std::string variable_name(int i) {
  if (i < 0 || i >= 26) throw std::out_of_range("variable_name: at most 26 variables");
  return std::string(1, static_cast<char>('A' + i));
}

std::string to_text(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : p.terms()) {
    BigInt a = abs(c);
    if (c < 0) out += "-";
    else if (!first) out += "+";
    first = false;
    bool constant = exp_degree(e) == 0;
    bool need_star = false;
    if (a != 1 || constant) {
      out += a.get_str();
      need_star = true;
    }
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out += "*";
      out += variable_name(i);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
      need_star = true;
    }
  }
  return out;
}

Poly parse_poly(const std::string& text, int nvars) {
  struct Term {
    BigInt c;
    std::vector<std::pair<int, int>> factors;
  };
  std::vector<Term> terms;
  int maxvar = -1;
  size_t i = 0, n = text.size();
  auto skip = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("parse_poly: " + why + " at position " + std::to_string(i) +
                                " in '" + text + "'");
  };
  auto read_int = [&]() {
    size_t s = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (s == i) fail("expected digits");
    return text.substr(s, i - s);
  };
  skip();
  if (i == n) fail("empty input");
  bool first = true;
  while (i < n) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Term t{BigInt(sign), {}};
    bool expect_factor = true;
    while (expect_factor) {
      skip();
      if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        t.c *= BigInt(read_int(), 10);
      } else if (i < n && std::isupper(static_cast<unsigned char>(text[i]))) {
        int v = text[i] - 'A';
        ++i;
        int e = 1;
        skip();
        if (i < n && text[i] == '^') {
          ++i;
          skip();
          e = std::stoi(read_int());
        }
        maxvar = std::max(maxvar, v);
        t.factors.push_back({v, e});
      } else {
        fail("expected coefficient or variable");
      }
      skip();
      if (i < n && text[i] == '*') {
        ++i;
      } else if (!(i < n && std::isupper(static_cast<unsigned char>(text[i])))) {
        // juxtaposition ("2AB") multiplies too
        expect_factor = false;
      }
    }
    terms.push_back(std::move(t));
    skip();
  }
  if (nvars < 0) nvars = maxvar + 1;
  if (maxvar >= nvars) throw std::invalid_argument("parse_poly: variable beyond nvars in '" + text + "'");
  Poly p(nvars);
  for (auto& t : terms) {
    Exponents e(nvars, 0);
    for (auto [v, k] : t.factors) e[v] += k;
    p.add_term(e, t.c);
  }
  return p;
}

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json j;
  j["nvars"] = p.nvars();
  j["terms"] = nlohmann::json::array();
  for (auto& [e, c] : p.terms()) j["terms"].push_back({{"exps", e}, {"coeff", c.get_str()}});
  return j;
}

Poly poly_from_json(const nlohmann::json& j) {
  Poly p(j.at("nvars").get<int>());
  for (auto& t : j.at("terms")) {
    auto e = t.at("exps").get<Exponents>();
    for (int x : e)
      if (x < 0) throw std::invalid_argument("poly_from_json: negative exponent");
    p.add_term(e, BigInt(t.at("coeff").get<std::string>(), 10));
  }
  return p;
}

// ---- operations ----

HomogPoly specialize(const HomogPoly& p, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("specialize: empty variable subset");
  std::set<int> uniq(keep.begin(), keep.end());
  if (uniq.size() != keep.size()) throw std::invalid_argument("specialize: repeated variable");
  return HomogPoly(p.poly().restrict_to(keep).normalized());
}

Mod2Poly operator*(const Mod2Poly& a, const Mod2Poly& b) {
  Mod2Poly r{a.nvars, {}};
  Exponents e(a.nvars);
  for (auto& x : a.support)
    for (auto& y : b.support) {
      for (int i = 0; i < a.nvars; ++i) e[i] = x[i] + y[i];
      auto [it, fresh] = r.support.insert(e);
      if (!fresh) r.support.erase(it);
    }
  return r;
}

Mod2Poly mod2_reduce(const HomogPoly& p) {
  if (!p.is_zero() && p.poly().content() != 1)
    throw std::invalid_argument("mod2_reduce: input content is not 1");
  Mod2Poly r{p.nvars(), {}};
  for (auto& [e, c] : p.poly().terms())
    if (mpz_odd_p(c.get_mpz_t())) r.support.insert(e);
  return r;
}

Mod2Poly sigma_power_mod2(int nvars, int d) {
  Mod2Poly s{nvars, {}};
  for (int i = 0; i < nvars; ++i) {
    Exponents e(nvars, 0);
    e[i] = 1;
    s.support.insert(e);
  }
  Mod2Poly r{nvars, {Exponents(nvars, 0)}};
  for (int k = 0; k < d; ++k) r = r * s;
  return r;
}

int compare_term_lists(const Poly& a, const Poly& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  GrlexGreater gt;
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && gt(ia->first, ib->first))) {
      // a has a term where b has zero
      return ia->second > 0 ? -1 : 1;
    }
    if (ia == a.terms().end() || gt(ib->first, ia->first)) {
      return ib->second > 0 ? 1 : -1;
    }
    if (ia->second != ib->second) return ia->second > ib->second ? -1 : 1;
    ++ia, ++ib;
  }
  return 0;
}

bool operator<(const PolyClass& a, const PolyClass& b) {
  const Poly& x = a.representative.poly();
  const Poly& y = b.representative.poly();
  if (x.nvars() != y.nvars()) return x.nvars() < y.nvars();
  if (x.total_degree() != y.total_degree()) return x.total_degree() < y.total_degree();
  return compare_term_lists(x, y) < 0;
}

PolyClass canonicalize_class(const HomogPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("canonicalize_class: zero polynomial");
  int n = p.nvars();
  Poly base = p.poly();
  base = base.divexact(base.content());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Poly> best;
  do {
    Poly q = base.permute(perm);
    for (int s = 0; s < 2; ++s) {
      if (!best || compare_term_lists(q, *best) < 0) best = q;
      q = -q;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return PolyClass{HomogPoly(*best)};
}

HomogPoly algebraic_subdivide(const HomogPoly& p, int var) {
  int n = p.nvars();
  if (var < 0 || var >= n) throw std::out_of_range("algebraic_subdivide: variable index");
  std::vector<Poly> images;
  for (int i = 0; i < n; ++i) images.push_back(Poly::variable(n + 1, i));
  images[var] += Poly::variable(n + 1, n);
  return HomogPoly(p.poly().compose(images).normalized());
}

std::optional<SubdivisionWitness> detect_subdivision(const HomogPoly& p) {
  int n = p.nvars();
  if (n < 2) throw std::invalid_argument("detect_subdivision: need at least 2 variables");
  std::vector<Poly> d;
  for (int i = 0; i < n; ++i) d.push_back(p.poly().derivative(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (d[i] != d[j]) continue;
      std::vector<int> keep;
      for (int k = 0; k < n; ++k)
        if (k != j) keep.push_back(k);
      return SubdivisionWitness{i, j, specialize(p, keep)};
    }
  return std::nullopt;
}

}  // namespace arearel
