#include "arearel/areapoly.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "arearel/parallel.hpp"

namespace arearel {

namespace {

struct PrimeKernel {
  KernelTrial trial;
  std::vector<uint64_t> vec;  // normalized so the first nonzero entry is 1
};

// twice the signed areas of a random drawing mod p with the unit square boundary
std::vector<uint64_t> sample_areas_mod_p(const Triangulation& t, uint64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dist(0, p - 1);
  std::vector<uint64_t> x(t.vertex_count), y(t.vertex_count);
  const uint64_t sq[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int v = 0; v < t.vertex_count; ++v) x[v] = dist(rng), y[v] = dist(rng);
  for (int k = 0; k < 4; ++k) x[t.corners[k]] = sq[k][0], y[t.corners[k]] = sq[k][1];
  std::vector<uint64_t> a;
  a.reserve(t.triangles.size());
  for (auto& tr : t.triangles) {
    uint64_t bx = sub_mod(x[tr[1]], x[tr[0]], p), by = sub_mod(y[tr[1]], y[tr[0]], p);
    uint64_t cx = sub_mod(x[tr[2]], x[tr[0]], p), cy = sub_mod(y[tr[2]], y[tr[0]], p);
    a.push_back(sub_mod(mul_mod(bx, cy, p), mul_mod(cx, by, p), p));
  }
  return a;
}

std::vector<uint64_t> monomial_row(const std::vector<Exponents>& mons, const std::vector<uint64_t>& a,
                                   int degree, uint64_t p) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<uint64_t>> pw(n, std::vector<uint64_t>(degree + 1, 1));
  for (int i = 0; i < n; ++i)
    for (int e = 1; e <= degree; ++e) pw[i][e] = mul_mod(pw[i][e - 1], a[i], p);
  std::vector<uint64_t> row(mons.size());
  for (size_t k = 0; k < mons.size(); ++k) {
    uint64_t v = 1;
    const auto& e = mons[k];
    for (int i = 0; i < n; ++i)
      if (e[i]) v = mul_mod(v, pw[i][e[i]], p);
    row[k] = v;
  }
  return row;
}

PrimeKernel kernel_at(const Triangulation& t, const std::vector<Exponents>& mons, int degree, uint64_t p,
                      uint64_t seed, double margin_frac) {
  size_t M = mons.size();
  size_t margin = std::max<size_t>(10, static_cast<size_t>(std::ceil(margin_frac * M)));
  std::mt19937_64 rng(seed);
  ModEchelon ech(M, p);
  PrimeKernel out;
  out.trial = {degree, p, M, 0, 0};
  size_t stalls = 0;
  auto next_row = [&] {
    ++out.trial.samples;
    return monomial_row(mons, sample_areas_mod_p(t, p, rng), degree, p);
  };
  while (ech.rank() + 1 < M) {
    if (ech.add_row(next_row())) {
      stalls = 0;
    } else if (++stalls >= margin) {
      out.trial.kernel_dim = M - ech.rank();
      return out;
    }
  }
  if (M == 1) {
    // a single monomial never vanishes on a sample with nonzero areas
    ech.add_row(next_row());
    out.trial.kernel_dim = M - ech.rank();
    if (out.trial.kernel_dim == 0) return out;
  }
  auto ker = ech.kernel();
  if (ker.size() != 1) throw std::logic_error("kernel_at: unexpected kernel size");
  auto v = ker[0];
  // margin rows checked against the candidate kernel vector
  for (size_t k = 0; k < margin; ++k) {
    auto row = next_row();
    unsigned __int128 acc = 0;
    for (size_t j = 0; j < M; ++j) acc += static_cast<unsigned __int128>(mul_mod(row[j], v[j], p));
    if (static_cast<uint64_t>(acc % p) != 0) {
      out.trial.kernel_dim = 0;
      return out;
    }
  }
  size_t first = 0;
  while (v[first] == 0) ++first;
  ShoupMul scale(inv_mod(v[first], p), p);
  for (auto& x : v) x = scale(x);
  out.trial.kernel_dim = 1;
  out.vec = std::move(v);
  return out;
}

std::optional<Poly> reconstruct(const std::vector<PrimeKernel>& ks, const std::vector<Exponents>& mons,
                                int nvars) {
  size_t M = mons.size();
  std::vector<BigRational> coeffs(M);
  BigInt den_lcm = 1;
  for (size_t j = 0; j < M; ++j) {
    std::vector<std::pair<BigInt, BigInt>> res;
    for (auto& k : ks) res.push_back({BigInt(std::to_string(k.vec[j])), BigInt(std::to_string(k.trial.prime))});
    auto [r, m] = crt_combine(res);
    auto q = rational_reconstruct(r, m);
    if (!q) return std::nullopt;
    coeffs[j] = *q;
    BigInt d = q->den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  Poly p(nvars);
  for (size_t j = 0; j < M; ++j) {
    if (coeffs[j].is_zero()) continue;
    BigRational c = coeffs[j] * BigRational(den_lcm);
    p.add_term(mons[j], c.num());
  }
  return p.normalized();
}

}  // namespace

std::vector<Exponents> monomials(int nvars, int degree) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  // lex-descending enumeration of compositions of `degree`
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (nvars == 0) return out;
  rec(0, degree);
  return out;
}

std::pair<HomogPoly, InterpolationReport> area_polynomial(const Triangulation& t,
                                                          const InterpolationConfig& cfg) {
  require_valid(t);
  auto start = std::chrono::steady_clock::now();
  int n = t.triangle_count();
  InterpolationReport rep;
  std::mt19937_64 prime_rng(derive_seed(cfg.seed, 0x5052494d45ULL));
  std::vector<uint64_t> prime_pool;
  auto prime_at = [&](size_t k) {
    while (prime_pool.size() <= k) {
      uint64_t q = random_prime_61(prime_rng);
      if (std::find(prime_pool.begin(), prime_pool.end(), q) == prime_pool.end()) prime_pool.push_back(q);
    }
    return prime_pool[k];
  };
  auto say = [&](const std::string& s) {
    if (cfg.log) cfg.log(s);
  };

  for (int d = 1; d <= cfg.degree_cap; ++d) {
    auto mons = monomials(n, d);
    std::vector<PrimeKernel> good;
    size_t used = 0;
    bool zero_kernel = false;
    auto run = [&](size_t count) {
      std::vector<PrimeKernel> batch(count);
      std::vector<uint64_t> ps;
      for (size_t k = 0; k < count; ++k) ps.push_back(prime_at(used + k));
      parallel_for(count, cfg.jobs, [&](size_t k) {
        batch[k] = kernel_at(t, mons, d, ps[k], derive_seed(cfg.seed, d, used + k), cfg.margin);
      });
      used += count;
      for (auto& b : batch) {
        rep.trials.push_back(b.trial);
        say("degree " + std::to_string(d) + " prime " + std::to_string(b.trial.prime) + ": kernel dim " +
            std::to_string(b.trial.kernel_dim) + " after " + std::to_string(b.trial.samples) + " samples");
        if (b.trial.kernel_dim == 0) zero_kernel = true;
        else if (b.trial.kernel_dim == 1) good.push_back(std::move(b));
      }
    };
    run(1);
    if (zero_kernel) continue;
    while (!zero_kernel) {
      // keep the largest group of primes agreeing on the support
      std::map<std::vector<size_t>, std::vector<PrimeKernel>> groups;
      for (auto& g : good) {
        std::vector<size_t> supp;
        for (size_t j = 0; j < g.vec.size(); ++j)
          if (g.vec[j]) supp.push_back(j);
        groups[supp].push_back(g);
      }
      const std::vector<PrimeKernel>* best = nullptr;
      for (auto& [s, g] : groups)
        if (!best || g.size() > best->size()) best = &g;
      if (best && static_cast<int>(best->size()) >= cfg.min_primes) {
        auto p = reconstruct(*best, mons, n);
        if (p) {
          HomogPoly hp(*p);
          auto check = verify_vanishing(hp, t, cfg.verify_samples, derive_seed(cfg.seed, 0x564552ULL, d));
          if (check.ok) {
            rep.degree = d;
            rep.poly = hp;
            for (auto& k : *best) {
              rep.primes.push_back(k.trial.prime);
              rep.samples_per_prime.push_back(k.trial.samples);
            }
            rep.verification_samples = check.trials;
            rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return {hp, rep};
          }
          say("degree " + std::to_string(d) + ": exact verification failed, adding a prime");
        } else {
          say("degree " + std::to_string(d) + ": rational reconstruction failed, adding a prime");
        }
      }
      if (static_cast<int>(used) >= cfg.max_primes)
        throw std::runtime_error("area_polynomial: primes disagree at degree " + std::to_string(d));
      size_t need = 1;
      if (best && static_cast<int>(best->size()) < cfg.min_primes) need = cfg.min_primes - best->size();
      if (!best) need = cfg.min_primes;
      run(need);
    }
  }
  throw std::runtime_error("area_polynomial: degree cap " + std::to_string(cfg.degree_cap) + " exceeded");
}

Scalar evaluate_at_drawing(const HomogPoly& p, const Triangulation& t, const Drawing& d) {
  auto a = areas(t, d);
  if (static_cast<int>(a.size()) != p.nvars()) throw std::invalid_argument("evaluate_at_drawing: variable count");
  return p.poly().evaluate(a);
}

VanishingResult verify_vanishing(const HomogPoly& p, const Triangulation& t, int trials, uint64_t seed) {
  if (p.nvars() != t.triangle_count()) throw std::invalid_argument("verify_vanishing: variable count");
  VanishingResult out;
  for (int i = 0; i < trials; ++i) {
    Drawing d = sample_drawing(t, derive_seed(seed, static_cast<uint64_t>(i)));
    auto a = areas(t, d);
    // homogeneous, so clear denominators and evaluate over Z
    BigInt L = 1;
    for (auto& x : a) {
      BigInt den = x.re.den();
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<BigInt> ai;
    for (auto& x : a) ai.push_back((x.re * BigRational(L)).num());
    BigInt v = p.poly().evaluate(ai);
    ++out.trials;
    if (v != 0) {
      out.ok = false;
      out.counterexample = d;
      out.value = p.poly().evaluate(a);
      return out;
    }
  }
  return out;
}

nlohmann::json report_to_json(const InterpolationReport& r) {
  nlohmann::json j;
  j["degree"] = r.degree;
  j["primes"] = nlohmann::json::array();
  for (auto p : r.primes) j["primes"].push_back(std::to_string(p));
  j["samples_per_prime"] = r.samples_per_prime;
  j["trials"] = nlohmann::json::array();
  for (auto& k : r.trials)
    j["trials"].push_back({{"degree", k.degree},
                           {"prime", std::to_string(k.prime)},
                           {"monomials", k.monomials},
                           {"samples", k.samples},
                           {"kernel_dim", k.kernel_dim}});
  j["poly"] = poly_to_json(r.poly.poly());
  j["verification_samples"] = r.verification_samples;
  return j;
}

InterpolationReport report_from_json(const nlohmann::json& j) {
  InterpolationReport r;
  r.degree = j.at("degree").get<int>();
  for (auto& p : j.at("primes")) r.primes.push_back(std::stoull(p.get<std::string>()));
  r.samples_per_prime = j.at("samples_per_prime").get<std::vector<size_t>>();
  for (auto& k : j.at("trials"))
    r.trials.push_back({k.at("degree").get<int>(), std::stoull(k.at("prime").get<std::string>()),
                        k.at("monomials").get<size_t>(), k.at("samples").get<size_t>(),
                        k.at("kernel_dim").get<size_t>()});
  r.poly = HomogPoly(poly_from_json(j.at("poly")));
  r.verification_samples = j.at("verification_samples").get<int>();
  return r;
}

}  // namespace arearel
