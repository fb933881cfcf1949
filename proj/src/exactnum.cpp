#include "arearel/exactnum.hpp"

#include <stdexcept>

namespace arearel {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigRational BigRational::parse(const std::string& s) {
  auto slash = s.find('/');
  BigInt n, d = 1;
  try {
    if (slash == std::string::npos) {
      n = BigInt(s, 10);
    } else {
      n = BigInt(s.substr(0, slash), 10);
      d = BigInt(s.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
  return BigRational(n, d);
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::string GaussianRational::str() const {
  if (im.is_zero()) return re.str();
  std::string s = re.is_zero() ? "" : re.str();
  if (im.sign() > 0 && !s.empty()) s += "+";
  if (im == BigRational(-1)) return s + "-i";
  if (im == BigRational(1)) return s + "i";
  return s + im.str() + "*i";
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  BigRational n = b.norm();
  GaussianRational t = a * b.conj();
  return {t.re / n, t.im / n};
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  // extended Euclid on signed 128-bit
  __int128 t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt, nt = tmp;
    tmp = r - q * nr;
    r = nr, nr = tmp;
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  if (t < 0) t += p;
  return static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic base set for 64-bit inputs
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b) {
  auto mix = [](uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

uint64_t random_prime_61(std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dist(uint64_t{1} << 60, (uint64_t{1} << 61) - 1);
  for (;;) {
    uint64_t c = dist(rng) | 1;
    if (is_prime_u64(c)) return c;
  }
}

uint64_t reduce_mod(const BigInt& x, uint64_t p) {
  static_assert(sizeof(unsigned long) == 8);
  return mpz_fdiv_ui(x.get_mpz_t(), p);
}

uint64_t reduce_mod(const BigRational& x, uint64_t p) {
  uint64_t d = reduce_mod(x.den(), p);
  return mul_mod(reduce_mod(x.num(), p), inv_mod(d, p), p);
}

ModEchelon::ModEchelon(size_t cols, uint64_t p) : n_(cols), p_(p), pivot_row_(cols, -1) {}

bool ModEchelon::add_row(std::vector<uint64_t> v) {
  if (v.size() != n_) throw std::invalid_argument("ModEchelon: row length");
  for (size_t c = 0; c < n_; ++c) {
    if (v[c] == 0) continue;
    int r = pivot_row_[c];
    if (r < 0) {
      ShoupMul scale(inv_mod(v[c], p_), p_);
      for (size_t j = c; j < n_; ++j) v[j] = scale(v[j]);
      pivot_row_[c] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(v));
      return true;
    }
    const auto& row = rows_[r];
    ShoupMul f(v[c], p_);
    for (size_t j = c; j < n_; ++j) v[j] = sub_mod(v[j], f(row[j]), p_);
  }
  return false;
}

std::vector<std::vector<uint64_t>> ModEchelon::kernel() const {
  std::vector<std::vector<uint64_t>> basis;
  for (size_t f = 0; f < n_; ++f) {
    if (pivot_row_[f] >= 0) continue;
    std::vector<uint64_t> v(n_, 0);
    v[f] = 1;
    for (size_t c = n_; c-- > 0;) {
      int r = pivot_row_[c];
      if (r < 0) continue;
      const auto& row = rows_[r];
      unsigned __int128 acc = 0;
      for (size_t j = c + 1; j < n_; ++j) {
        if (v[j]) acc += static_cast<unsigned __int128>(row[j]) * v[j] % p_;
      }
      uint64_t s = static_cast<uint64_t>(acc % p_);
      v[c] = s ? p_ - s : 0;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<uint64_t>> nullspace_mod_p(const std::vector<uint64_t>& matrix, size_t m,
                                                   size_t n, uint64_t p) {
  if (matrix.size() != m * n) throw std::invalid_argument("nullspace_mod_p: shape");
  ModEchelon e(n, p);
  for (size_t i = 0; i < m && e.rank() < n; ++i) {
    std::vector<uint64_t> row(matrix.begin() + i * n, matrix.begin() + (i + 1) * n);
    for (auto& x : row) x %= p;
    e.add_row(std::move(row));
  }
  return e.kernel();
}

std::pair<BigInt, BigInt> crt_combine(const std::vector<std::pair<BigInt, BigInt>>& residues) {
  BigInt x = 0, m = 1;
  for (auto& [r0, mi] : residues) {
    if (mi <= 0) throw std::invalid_argument("crt_combine: modulus must be positive");
    BigInt r = r0 % mi;
    if (r < 0) r += mi;
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
    BigInt diff = r - x;
    if (diff % g != 0) throw std::invalid_argument("crt_combine: inconsistent residues");
    // x + m * s * diff/g solves both congruences
    BigInt lcm = m / g * mi;
    x = x + m * ((s * (diff / g)) % (mi / g));
    x %= lcm;
    if (x < 0) x += lcm;
    m = lcm;
  }
  return {x, m};
}

std::optional<BigRational> rational_reconstruct(const BigInt& residue, const BigInt& modulus) {
  if (residue < 0 || residue >= modulus) throw std::invalid_argument("rational_reconstruct: residue range");
  BigInt bound;
  BigInt half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  BigInt r0 = modulus, r1 = residue, t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1, r1 = r2;
    BigInt t2 = t0 - q * t1;
    t0 = t1, t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) return std::nullopt;
  return BigRational(r1, t1);
}

}  // namespace arearel
