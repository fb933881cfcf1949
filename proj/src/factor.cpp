#include "arearel/factor.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace arearel {

namespace {

// ---------- dense polynomials over Z ----------

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

BigInt zcontent(const ZPoly& f) {
  BigInt g = 0;
  for (auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// content removed, leading coefficient positive
ZPoly primitive(ZPoly f) {
  trim(f);
  if (f.empty()) return f;
  BigInt c = zcontent(f);
  if (f.back() < 0) c = -c;
  for (auto& x : f) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return f;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(r);
  return r;
}

ZPoly zderiv(const ZPoly& f) {
  ZPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

// exact quotient over Z, nullopt if b does not divide a
std::optional<ZPoly> zdivexact(ZPoly a, const ZPoly& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  if (a.empty()) return ZPoly{};
  if (a.size() < b.size()) return std::nullopt;
  ZPoly q(a.size() - b.size() + 1, 0);
  const BigInt& lb = b.back();
  for (int i = deg(a) - deg(b); i >= 0; --i) {
    BigInt& top = a[i + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    BigInt c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    q[i] = c;
    for (size_t j = 0; j < b.size(); ++j) mpz_submul(a[i + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

// symmetric representative of every coefficient modulo m
ZPoly zsymmetric(ZPoly f, const BigInt& m) {
  BigInt half = m / 2;
  for (auto& c : f) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(f);
  return f;
}

// ---------- dense polynomials over F_p, p < 2^32 ----------

using FPoly = std::vector<uint64_t>;

void trim(FPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int deg(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

FPoly to_fp(const ZPoly& f, uint64_t p) {
  FPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = reduce_mod(f[i], p);
  trim(r);
  return r;
}

ZPoly to_z(const FPoly& f) {
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = BigInt(static_cast<unsigned long>(f[i]));
  return r;
}

FPoly fmul(const FPoly& a, const FPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  size_t n = a.size() + b.size() - 1;
  FPoly r(n);
  for (size_t k = 0; k < n; ++k) {
    unsigned __int128 acc = 0;
    size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
    size_t hi = std::min(k, a.size() - 1);
    for (size_t i = lo; i <= hi; ++i) acc += static_cast<unsigned __int128>(a[i] * b[k - i]);
    r[k] = static_cast<uint64_t>(acc % p);
  }
  trim(r);
  return r;
}

FPoly fadd(FPoly a, const FPoly& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = add_mod(a[i], b[i], p);
  trim(a);
  return a;
}

FPoly fsub(FPoly a, const FPoly& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

FPoly fscale(FPoly a, uint64_t c, uint64_t p) {
  for (auto& x : a) x = x * c % p;
  trim(a);
  return a;
}

FPoly fmonic(const FPoly& a, uint64_t p) {
  if (a.empty()) return a;
  return fscale(a, inv_mod(a.back(), p), p);
}

// a = q b + r
void fdivmod(const FPoly& a, const FPoly& b, uint64_t p, FPoly* q, FPoly* r) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  FPoly rem = a;
  trim(rem);
  FPoly quo(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
  uint64_t inv = inv_mod(b.back(), p);
  for (int i = deg(rem) - deg(b); i >= 0; --i) {
    uint64_t c = rem[i + b.size() - 1] * inv % p;
    if (c == 0) continue;
    quo[i] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[i + j] = sub_mod(rem[i + j], c * b[j] % p, p);
  }
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

FPoly frem(const FPoly& a, const FPoly& b, uint64_t p) {
  FPoly r;
  fdivmod(a, b, p, nullptr, &r);
  return r;
}

FPoly fquo(const FPoly& a, const FPoly& b, uint64_t p) {
  FPoly q;
  fdivmod(a, b, p, &q, nullptr);
  return q;
}

FPoly fgcd(FPoly a, FPoly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FPoly r = frem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fmonic(a, p);
}

// s a + t b = gcd (monic)
FPoly fxgcd(FPoly a, FPoly b, uint64_t p, FPoly* s, FPoly* t) {
  FPoly s0{1}, s1{}, t0{}, t1{1};
  trim(a);
  trim(b);
  while (!b.empty()) {
    FPoly q, r;
    fdivmod(a, b, p, &q, &r);
    FPoly s2 = fsub(s0, fmul(q, s1, p), p);
    FPoly t2 = fsub(t0, fmul(q, t1, p), p);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  uint64_t inv = inv_mod(a.back(), p);
  *s = fscale(s0, inv, p);
  *t = fscale(t0, inv, p);
  return fscale(a, inv, p);
}

FPoly fderiv(const FPoly& f, uint64_t p) {
  FPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * (i % p) % p);
  trim(r);
  return r;
}

FPoly fpowmod(FPoly base, uint64_t e, const FPoly& m, uint64_t p) {
  FPoly r{1};
  base = frem(base, m, p);
  while (e) {
    if (e & 1) r = frem(fmul(r, base, p), m, p);
    base = frem(fmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// rows x^{ip} mod f, i < deg f
struct Frobenius {
  std::vector<FPoly> rows;
  uint64_t p;
  FPoly f;
  Frobenius(const FPoly& f_, uint64_t p_) : p(p_), f(f_) {
    int n = deg(f);
    FPoly xp = fpowmod(FPoly{0, 1}, p, f, p);
    rows.push_back(FPoly{1});
    for (int i = 1; i < n; ++i) rows.push_back(frem(fmul(rows.back(), xp, p), f, p));
  }
  // h^p mod f
  FPoly apply(const FPoly& h) const {
    size_t n = rows.size();
    std::vector<unsigned __int128> acc(n, 0);
    for (size_t i = 0; i < h.size(); ++i) {
      if (h[i] == 0) continue;
      const auto& row = rows[i];
      for (size_t j = 0; j < row.size(); ++j) acc[j] += static_cast<unsigned __int128>(h[i] * row[j]);
      // keep the accumulators small
      if ((i & 1023) == 1023)
        for (auto& a : acc) a %= p;
    }
    FPoly r(n);
    for (size_t j = 0; j < n; ++j) r[j] = static_cast<uint64_t>(acc[j] % p);
    trim(r);
    return r;
  }
};

// distinct degree factorization of a monic square-free f
std::vector<std::pair<FPoly, int>> ddf(FPoly f, uint64_t p) {
  std::vector<std::pair<FPoly, int>> out;
  Frobenius frob(f, p);
  FPoly h{0, 1};
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = frem(frob.apply(h), f, p);
    FPoly g = fgcd(f, fsub(h, FPoly{0, 1}, p), p);
    if (deg(g) > 0) {
      out.push_back({g, d});
      f = fquo(f, g, p);
      h = frem(h, f, p);
    }
  }
  if (deg(f) > 0) out.push_back({f, deg(f)});
  return out;
}

// equal degree splitting, odd p
void edf(const FPoly& g, int d, uint64_t p, std::mt19937_64& rng, std::vector<FPoly>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Frobenius frob(g, p);
  std::uniform_int_distribution<uint64_t> coef(0, p - 1);
  while (true) {
    FPoly a(deg(g));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (deg(a) < 1) continue;
    // a^(1 + p + ... + p^{d-1}) lands in F_{p}, then raise to (p-1)/2
    FPoly norm = a, t = a;
    for (int i = 1; i < d; ++i) {
      t = frob.apply(t);
      norm = frem(fmul(norm, t, p), g, p);
    }
    FPoly b = fpowmod(norm, (p - 1) / 2, g, p);
    FPoly s = fgcd(g, fsub(b, FPoly{1}, p), p);
    if (deg(s) > 0 && deg(s) < deg(g)) {
      edf(s, d, p, rng, out);
      edf(fquo(g, s, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<FPoly> factor_mod_p(const FPoly& f, uint64_t p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FPoly> out;
  for (auto& [g, d] : ddf(f, p)) edf(g, d, p, rng, out);
  std::sort(out.begin(), out.end(), [](const FPoly& a, const FPoly& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

uint64_t next_prime_from(std::mt19937_64& rng, uint64_t lo, uint64_t hi) {
  std::uniform_int_distribution<uint64_t> dist(lo, hi);
  while (true) {
    uint64_t c = dist(rng) | 1;
    if (is_prime_u64(c)) return c;
  }
}

// ---------- gcd over Z ----------

ZPoly zgcd(const ZPoly& a0, const ZPoly& b0) {
  ZPoly a = primitive(a0), b = primitive(b0);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (deg(a) == 0 || deg(b) == 0) return ZPoly{1};
  BigInt gamma;
  mpz_gcd(gamma.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
  std::mt19937_64 rng(0x5eed);
  int best = std::min(deg(a), deg(b)) + 1;
  ZPoly acc;
  BigInt modulus = 1;
  for (int iter = 0; iter < 10000; ++iter) {
    uint64_t p = next_prime_from(rng, 1ull << 30, (1ull << 31) - 1);
    if (reduce_mod(gamma, p) == 0) continue;
    FPoly g = fgcd(to_fp(a, p), to_fp(b, p), p);
    if (deg(g) == 0) return ZPoly{1};
    if (deg(g) > best) continue;
    g = fscale(g, reduce_mod(gamma, p), p);
    if (deg(g) < best) {
      best = deg(g);
      acc = to_z(g);
      modulus = static_cast<unsigned long>(p);
    } else {
      ZPoly next(g.size());
      for (size_t i = 0; i < g.size(); ++i) {
        auto [v, m] = crt_combine({{acc[i], modulus}, {BigInt(static_cast<unsigned long>(g[i])),
                                                        BigInt(static_cast<unsigned long>(p))}});
        next[i] = v;
        if (i == 0) modulus = m;
      }
      acc = std::move(next);
    }
    ZPoly cand = primitive(zsymmetric(acc, modulus));
    if (deg(cand) != best) continue;
    if (zdivexact(a, cand) && zdivexact(b, cand)) return cand;
  }
  throw std::runtime_error("zgcd: no convergence");
}

// ---------- Hensel lifting and recombination ----------

// f = lc * prod(monic factors) mod p; returns monic lifts mod p^k
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FPoly>& factors, uint64_t p, int k) {
  BigInt P;
  mpz_ui_pow_ui(P.get_mpz_t(), p, k);
  std::vector<ZPoly> out;
  ZPoly F = f;
  for (size_t i = 0; i + 1 < factors.size(); ++i) {
    FPoly gp = factors[i];
    FPoly hp{reduce_mod(F.back(), p)};
    for (size_t j = i + 1; j < factors.size(); ++j) hp = fmul(hp, factors[j], p);
    FPoly s, t;
    fxgcd(gp, hp, p, &s, &t);
    ZPoly g = to_z(gp), h = to_z(hp);
    h.back() = F.back();
    BigInt pj = static_cast<unsigned long>(p);
    for (int j = 1; j < k; ++j) {
      ZPoly gh = zmul(g, h);
      ZPoly e = F;
      if (e.size() < gh.size()) e.resize(gh.size(), 0);
      for (size_t c = 0; c < gh.size(); ++c) e[c] -= gh[c];
      for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
      FPoly ep = to_fp(e, p);
      FPoly q, r;
      fdivmod(fmul(t, ep, p), gp, p, &q, &r);
      FPoly u = fadd(fmul(s, ep, p), fmul(q, hp, p), p);
      for (size_t c = 0; c < r.size(); ++c) g[c] += pj * static_cast<unsigned long>(r[c]);
      for (size_t c = 0; c < u.size(); ++c) h[c] += pj * static_cast<unsigned long>(u[c]);
      pj *= static_cast<unsigned long>(p);
      gp = to_fp(g, p);  // unchanged mod p
    }
    for (auto& c : g) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    for (auto& c : h) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    out.push_back(std::move(g));
    F = std::move(h);
  }
  // remaining factor: F / lc mod P
  BigInt inv;
  BigInt lc = F.back();
  mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), P.get_mpz_t());
  for (auto& c : F) {
    c *= inv;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
  }
  out.push_back(std::move(F));
  return out;
}

BigInt mod_product_const(const BigInt& lc, const std::vector<ZPoly>& lifted, const std::vector<int>& subset,
                         const BigInt& P) {
  BigInt c = lc;
  for (int i : subset) {
    c *= lifted[i][0];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
  }
  if (c > P / 2) c -= P;
  return c;
}

// f primitive, square-free, degree >= 2, f(0) != 0
std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
  int n = deg(f);
  if (n <= 1) return {f};
  std::mt19937_64 rng(0xfac70 + n);
  // a few good primes, keep the one with fewest modular factors
  uint64_t best_p = 0;
  std::vector<FPoly> best;
  int good = 0;
  for (int tries = 0; good < 3 && tries < 200; ++tries) {
    uint64_t p = next_prime_from(rng, 1ull << 14, 1ull << 16);
    if (reduce_mod(f.back(), p) == 0) continue;
    FPoly fp = to_fp(f, p);
    if (deg(fgcd(fp, fderiv(fp, p), p)) != 0) continue;
    ++good;
    auto facs = factor_mod_p(fmonic(fp, p), p, rng());
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw std::runtime_error("factor: no good prime");
  if (best.size() == 1) return {f};

  BigInt lc = f.back();
  BigInt bound = mignotte_bound(f) * abs(lc) * 2;
  int k = 1;
  BigInt P = static_cast<unsigned long>(best_p);
  while (P <= bound) {
    P *= static_cast<unsigned long>(best_p);
    ++k;
  }
  auto lifted = hensel_lift(f, best, best_p, k);

  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<int> alive(lifted.size());
  for (size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
  int s = 1;
  while (2 * s <= static_cast<int>(alive.size())) {
    bool found = false;
    int m = static_cast<int>(alive.size());
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      std::vector<int> subset;
      for (int i : idx) subset.push_back(alive[i]);
      BigInt rl = rest.back();
      BigInt c0 = mod_product_const(rl, lifted, subset, P);
      BigInt target = rl * rest[0];
      if (c0 != 0 && mpz_divisible_p(target.get_mpz_t(), c0.get_mpz_t())) {
        ZPoly cand{rl};
        for (int i : subset) cand = zsymmetric(zmul(cand, lifted[i]), P);
        cand = primitive(cand);
        if (auto q = zdivexact(rest, cand)) {
          out.push_back(cand);
          rest = *q;
          std::vector<int> keep;
          for (int i = 0; i < m; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(alive[i]);
          alive = keep;
          found = true;
          break;
        }
      }
      // next combination
      int i = s - 1;
      while (i >= 0 && idx[i] == m - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  rest = primitive(rest);
  if (deg(rest) > 0) out.push_back(rest);
  return out;
}

// f primitive with positive leading coefficient and f(0) != 0
std::vector<std::pair<ZPoly, int>> factor_primitive(const ZPoly& f) {
  std::vector<std::pair<ZPoly, int>> out;
  if (deg(f) <= 0) return out;
  // square-free decomposition (Musser)
  ZPoly g = zgcd(f, zderiv(f));
  ZPoly w = *zdivexact(f, g);
  for (int i = 1; deg(w) > 0; ++i) {
    ZPoly y = zgcd(w, g);
    ZPoly z = *zdivexact(w, y);
    if (deg(z) > 0)
      for (auto& h : factor_squarefree(primitive(z))) out.push_back({primitive(h), i});
    w = y;
    g = *zdivexact(g, y);
  }
  return out;
}

Poly dense_to_poly_var(const ZPoly& f, int nvars, int var) {
  Poly r(nvars);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Exponents e(nvars, 0);
    e[var] = static_cast<int>(i);
    r.add_term(e, f[i]);
  }
  return r;
}

void sort_factors(std::vector<std::pair<Poly, int>>& fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
    int da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da < db;
    return compare_term_lists(a.first, b.first) > 0;
  });
}

}  // namespace

int Factorization::count() const {
  int c = 0;
  for (auto& [_, m] : factors) c += m;
  return c;
}

Poly Factorization::expand(int nvars) const {
  Poly r = Poly::constant(nvars, unit);
  for (auto& [f, m] : factors) r = r * f.pow(m);
  return r;
}

ZPoly to_dense(const Poly& f) {
  if (f.nvars() != 1) throw std::invalid_argument("to_dense: expected one variable");
  ZPoly r(f.is_zero() ? 0 : f.total_degree() + 1, 0);
  for (auto& [e, c] : f.terms()) r[e[0]] = c;
  return r;
}

Poly from_dense(const ZPoly& f) { return dense_to_poly_var(f, 1, 0); }

BigInt mignotte_bound(const ZPoly& f) {
  BigInt sq = 0;
  for (auto& c : f) sq += c * c;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
  r += 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(std::max(0, deg(f))));
  return r;
}

Factorization factor_univariate(const Poly& f) {
  if (f.nvars() != 1) throw std::invalid_argument("factor_univariate: expected one variable");
  if (f.is_zero()) throw std::invalid_argument("factor_univariate: zero polynomial");
  Factorization out;
  ZPoly d = to_dense(f);
  BigInt c = zcontent(d);
  if (d.back() < 0) c = -c;
  out.unit = c;
  d = primitive(d);
  size_t low = 0;
  while (d[low] == 0) ++low;
  if (low > 0) {
    out.factors.push_back({Poly::variable(1, 0), static_cast<int>(low)});
    d.erase(d.begin(), d.begin() + static_cast<long>(low));
  }
  for (auto& [g, m] : factor_primitive(d)) {
    Poly gp = from_dense(g);
    auto it = std::find_if(out.factors.begin(), out.factors.end(), [&](auto& x) { return x.first == gp; });
    if (it != out.factors.end())
      it->second += m;
    else
      out.factors.push_back({gp, m});
  }
  sort_factors(out.factors);
  return out;
}

namespace {

// factors of a homogeneous q (no monomial factor, q(e_v) != 0), as homogeneous polys
std::vector<std::pair<Poly, int>> factor_dehomogenized(const Poly& q, int v) {
  int n = q.nvars();
  int d = q.total_degree();
  std::vector<int> others;
  for (int i = 0; i < n; ++i)
    if (i != v) others.push_back(i);
  int k = static_cast<int>(others.size());
  std::vector<std::pair<Poly, int>> result;
  if (k == 0) return result;

  // dehomogenize at v; then shift others by small constants
  Poly f(k);
  for (auto& [e, c] : q.terms()) {
    Exponents g(k);
    for (int i = 0; i < k; ++i) g[i] = e[others[i]];
    f.add_term(g, c);
  }
  std::vector<int> shift(k, 0);
  auto shifted = [&](const Poly& g, int sign) {
    std::vector<Poly> images;
    for (int i = 0; i < k; ++i)
      images.push_back(Poly::variable(k, i) + Poly::constant(k, BigInt(sign * shift[i])));
    return g.compose(images);
  };

  // Kronecker substitution x_i -> t^{b_i}. Images of structured factors
  // (C - D and the like) can split into far more pieces than f has factors;
  // then other shift vectors are tried and the fewest pieces kept.
  std::vector<int> base(k);
  std::vector<long> weight(k);
  auto kronecker = [&](const Poly& g) {
    long w = 1;
    for (int i = 0; i < k; ++i) {
      base[i] = g.degree_in(i) + 1;
      weight[i] = w;
      w *= base[i];
    }
    ZPoly image(static_cast<size_t>(w), 0);
    long top = 0;
    for (auto& [e, c] : g.terms()) {
      long x = 0;
      for (int i = 0; i < k; ++i) x += e[i] * weight[i];
      image[x] += c;
      top = std::max(top, x);
    }
    image.resize(static_cast<size_t>(top) + 1);
    return image;
  };

  std::mt19937_64 rng(0x5417 + static_cast<uint64_t>(q.size()));
  std::uniform_int_distribution<int> sd(-9, 9);
  Poly fs = f;
  std::vector<ZPoly> items;
  std::vector<int> best_shift;
  const int shift_trials = k > 1 ? 6 : 1;
  for (int trial = 0; trial < shift_trials; ++trial) {
    if (k > 1)
      for (int i = 0; i < k; ++i) {
        int s;
        do s = sd(rng);
        while (s == 0 || std::find(shift.begin(), shift.begin() + i, s) != shift.begin() + i);
        shift[i] = s;
      }
    Poly g = k > 1 ? shifted(f, 1) : f;
    Factorization uf = factor_univariate(from_dense(kronecker(g)));
    std::vector<ZPoly> got;
    for (auto& [u, m] : uf.factors)
      for (int j = 0; j < m; ++j) got.push_back(to_dense(u));
    if (trial == 0 || got.size() < items.size()) {
      items = std::move(got);
      best_shift = shift;
    }
    if (static_cast<int>(items.size()) <= d) break;
  }
  shift = best_shift;
  if (k > 1) fs = shifted(f, 1);
  kronecker(fs);  // restores base and weight for the kept shift

  auto inverse = [&](const ZPoly& u) -> std::optional<Poly> {
    Poly g(k);
    for (size_t x = 0; x < u.size(); ++x) {
      if (u[x] == 0) continue;
      Exponents e(k);
      long r = static_cast<long>(x);
      for (int i = k - 1; i >= 0; --i) {
        e[i] = static_cast<int>(r / weight[i]);
        r %= weight[i];
      }
      if (e[k - 1] >= base[k - 1]) return std::nullopt;
      if (exp_degree(e) > d) return std::nullopt;
      g.add_term(e, u[x]);
    }
    return g;
  };

  // back to the unshifted variables, then homogeneous in the original ones
  auto rehomogenize = [&](const Poly& g) {
    Poly back = k > 1 ? shifted(g, -1) : g;
    Poly h(n);
    int gd = back.total_degree();
    for (auto& [e, c] : back.terms()) {
      Exponents full(n, 0);
      for (int i = 0; i < k; ++i) full[others[i]] = e[i];
      full[v] = gd - exp_degree(e);
      h.add_term(full, c);
    }
    return h.normalized();
  };

  Poly rest = fs;
  int s = 1;
  // a factor of rest is the image of at most half the remaining items, or
  // its cofactor is
  while (!items.empty() && 2 * s <= static_cast<int>(items.size())) {
    int m = static_cast<int>(items.size());
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    bool found = false;
    while (true) {
      ZPoly prod{1};
      for (int i : idx) prod = zmul(prod, items[i]);
      if (auto g = inverse(prod)) {
        Poly gn = g->normalized();
        if (auto quo = divide_exact(rest, gn)) {
          int mult = 0;
          Poly r2 = rest;
          while (auto q2 = divide_exact(r2, gn)) {
            r2 = *q2;
            ++mult;
          }
          rest = r2;
          // drop mult copies of the used univariate factors
          std::vector<ZPoly> used;
          for (int i : idx) used.push_back(items[i]);
          for (int c = 0; c < mult; ++c)
            for (auto& u : used) {
              auto it = std::find(items.begin(), items.end(), u);
              if (it == items.end()) throw std::logic_error("factor: recombination bookkeeping");
              items.erase(it);
            }
          result.push_back({rehomogenize(gn), mult});
          found = true;
          break;
        }
      }
      int i = s - 1;
      while (i >= 0 && idx[i] == m - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (!rest.is_constant()) result.push_back({rehomogenize(rest.normalized()), 1});
  return result;
}

}  // namespace

Factorization factor_homogeneous(const HomogPoly& hp) {
  const Poly& p = hp.poly();
  int n = p.nvars();
  if (n > 4 || hp.degree() > 8) throw std::invalid_argument("factor_homogeneous: more than 4 variables or degree above 8");
  if (p.is_zero()) throw std::invalid_argument("factor_homogeneous: zero polynomial");
  Factorization out;
  BigInt c = p.content();
  if (p.leading_coeff() < 0) c = -c;
  out.unit = c;
  Poly q = p.divexact(c);

  // monomial factors
  Exponents low(n, 1 << 30);
  for (auto& [e, _] : q.terms())
    for (int i = 0; i < n; ++i) low[i] = std::min(low[i], e[i]);
  for (int i = 0; i < n; ++i)
    if (low[i] > 0) out.factors.push_back({Poly::variable(n, i), low[i]});
  {
    Poly r(n);
    for (auto& [e, cc] : q.terms()) {
      Exponents f = e;
      for (int i = 0; i < n; ++i) f[i] -= low[i];
      r.add_term(f, cc);
    }
    q = r;
  }
  if (q.total_degree() == 0) {
    sort_factors(out.factors);
    return out;
  }
  int d = q.total_degree();
  int v = -1;
  for (int i = 0; i < n && v < 0; ++i) {
    Exponents e(n, 0);
    e[i] = d;
    if (q.coeff(e) != 0) v = i;
  }
  std::vector<std::pair<Poly, int>> facs;
  if (v >= 0) {
    facs = factor_dehomogenized(q, v);
  } else {
    // x0 -> x0 + sum c_i x_i makes the pure x0^d coefficient q(1, c) nonzero
    std::vector<BigInt> cs(n, 0);
    for (int trial = 1;; ++trial) {
      std::vector<BigRational> pt(n, BigRational(1));
      for (int i = 1; i < n; ++i) {
        cs[i] = (trial + i) % 5 + 1;
        pt[i] = BigRational(cs[i]);
      }
      if (!q.evaluate(pt).is_zero()) break;
    }
    auto change = [&](int sign) {
      std::vector<Poly> images;
      for (int i = 0; i < n; ++i) images.push_back(Poly::variable(n, i));
      for (int i = 1; i < n; ++i) images[0] += Poly::variable(n, i) * BigInt(sign * cs[i]);
      return images;
    };
    Poly moved = q.compose(change(1));
    BigInt mc = moved.content();
    for (auto& [g, m] : factor_dehomogenized(moved.divexact(mc), 0))
      facs.push_back({g.compose(change(-1)).normalized(), m});
  }
  for (auto& f : facs) out.factors.push_back(f);
  // fix the sign so that the product matches exactly
  Poly prod = out.expand(n);
  if (prod != p) {
    if (prod == -p)
      out.unit = -out.unit;
    else
      throw std::logic_error("factor_homogeneous: product check failed");
  }
  sort_factors(out.factors);
  return out;
}

bool is_irreducible(const HomogPoly& p) {
  if (p.is_zero()) return false;
  auto f = factor_homogeneous(p);
  return f.factors.size() == 1 && f.factors[0].second == 1 && (f.unit == 1 || f.unit == -1);
}

bool is_irreducible(const Poly& p) {
  if (p.is_zero()) return false;
  if (p.nvars() == 1) {
    auto f = factor_univariate(p);
    return f.factors.size() == 1 && f.factors[0].second == 1 && (f.unit == 1 || f.unit == -1);
  }
  return is_irreducible(HomogPoly(p));
}

}  // namespace arearel
