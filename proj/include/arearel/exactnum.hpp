#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace arearel {

using BigInt = mpz_class;

/// Exact rational in lowest terms with positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : q_(v) {}
  BigRational(const BigInt& v) : q_(v) {}
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "n", "-n", "n/d".
  static BigRational parse(const std::string& s);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

/// Element of Q(i).
struct GaussianRational {
  BigRational re, im;

  GaussianRational() = default;
  GaussianRational(long v) : re(v) {}
  GaussianRational(const BigRational& r) : re(r) {}
  GaussianRational(const BigRational& r, const BigRational& i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }
  BigRational norm() const { return re * re + im * im; }
  std::string str() const;

  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Throws std::domain_error on division by zero.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// ---- prime fields on single words ----

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p);
/// Throws std::domain_error if a is not invertible.
uint64_t inv_mod(uint64_t a, uint64_t p);

/// Precomputed constant for repeated multiplication by w mod p (p < 2^63).
struct ShoupMul {
  uint64_t w, wp, p;
  ShoupMul(uint64_t w_, uint64_t p_)
      : w(w_), wp(static_cast<uint64_t>((static_cast<unsigned __int128>(w_) << 64) / p_)), p(p_) {}
  uint64_t operator()(uint64_t x) const {
    uint64_t q = static_cast<uint64_t>((static_cast<unsigned __int128>(x) * wp) >> 64);
    uint64_t r = x * w - q * p;
    return r >= p ? r - p : r;
  }
};

bool is_prime_u64(uint64_t n);

/// Deterministic child seed (splitmix64 mixing).
uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0);

/// Uniform prime in [2^60, 2^61).
uint64_t random_prime_61(std::mt19937_64& rng);

uint64_t reduce_mod(const BigInt& x, uint64_t p);
uint64_t reduce_mod(const BigRational& x, uint64_t p);

/// Row echelon form over F_p built one row at a time, leftmost pivot.
class ModEchelon {
 public:
  ModEchelon(size_t cols, uint64_t p);

  /// Reduces `row` and keeps it if independent. Returns true if rank grew.
  bool add_row(std::vector<uint64_t> row);
  size_t rank() const { return rows_.size(); }
  size_t cols() const { return n_; }
  /// Basis of the right nullspace of all rows added so far; one vector per
  /// free column, ordered by free column, with a 1 in that column.
  std::vector<std::vector<uint64_t>> kernel() const;

 private:
  size_t n_;
  uint64_t p_;
  std::vector<std::vector<uint64_t>> rows_;
  std::vector<int> pivot_row_;  // column -> index in rows_ or -1
};

/// Right nullspace of an m x n row-major matrix over F_p.
std::vector<std::vector<uint64_t>> nullspace_mod_p(const std::vector<uint64_t>& matrix, size_t m,
                                                   size_t n, uint64_t p);

/// Combines residues (value, modulus). Throws std::invalid_argument when
/// non-coprime moduli carry inconsistent residues.
std::pair<BigInt, BigInt> crt_combine(const std::vector<std::pair<BigInt, BigInt>>& residues);

/// a/b with |a|, b <= sqrt(m/2), a = b * r mod m, gcd(b, m) = 1; nullopt if none.
std::optional<BigRational> rational_reconstruct(const BigInt& residue, const BigInt& modulus);

}  // namespace arearel
