#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arearel/exactnum.hpp"

namespace arearel {

using Exponents = std::vector<int>;

int exp_degree(const Exponents& e);

/// Graded lexicographic order, greatest first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with integer coefficients.
/// Exponent vectors have length nvars; zero coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<Exponents, BigInt, GrlexGreater>;

  explicit Poly(int nvars = 0) : nvars_(nvars) {}
  static Poly constant(int nvars, const BigInt& c);
  static Poly variable(int nvars, int i);
  /// Sum of all variables.
  static Poly sigma(int nvars);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(int var) const;
  bool is_homogeneous() const;
  BigInt coeff(const Exponents& e) const;
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const BigInt& leading_coeff() const { return terms_.begin()->second; }

  void add_term(const Exponents& e, const BigInt& c);

  /// Non-negative gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  /// Divides out the content and makes the leading (grlex greatest) coefficient positive.
  Poly normalized() const;
  bool is_normalized() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const BigInt& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const BigInt& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  Poly pow(int e) const;
  /// Exact division by a nonzero integer; throws if not exact.
  Poly divexact(const BigInt& c) const;

  Poly derivative(int var) const;

  /// Substitute variable i by images[i] (all images share one nvars).
  Poly compose(const std::vector<Poly>& images) const;

  /// Keep only variables in `keep` (others set to zero), re-indexed in the given order.
  Poly restrict_to(const std::vector<int>& keep) const;

  /// Apply a permutation of variables: variable i becomes variable perm[i].
  Poly permute(const std::vector<int>& perm) const;

  template <class T>
  T evaluate(const std::vector<T>& point) const;

  uint64_t evaluate_mod(const std::vector<uint64_t>& point, uint64_t p) const;

 private:
  int nvars_;
  TermMap terms_;
};

/// Exact quotient a / b in Z[x], or nullopt if b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Homogeneous polynomial; may be the zero polynomial, flagged by is_zero().
class HomogPoly {
 public:
  HomogPoly() = default;
  /// Throws std::invalid_argument if `p` is not homogeneous.
  explicit HomogPoly(Poly p);

  const Poly& poly() const { return p_; }
  int nvars() const { return p_.nvars(); }
  int degree() const { return degree_; }
  bool is_zero() const { return p_.is_zero(); }
  HomogPoly normalized() const { return HomogPoly(p_.normalized()); }
  friend bool operator==(const HomogPoly& a, const HomogPoly& b) { return a.p_ == b.p_; }
  friend bool operator!=(const HomogPoly& a, const HomogPoly& b) { return !(a == b); }

 private:
  Poly p_;
  int degree_ = 0;
};

// ---- text and JSON formats ----

std::string variable_name(int i);
/// "A^2+2*A*B-B^2"; "0" for the zero polynomial.
std::string to_text(const Poly& p);
inline std::string to_text(const HomogPoly& p) { return to_text(p.poly()); }
/// nvars < 0 infers the count from the highest variable letter used. Factors
/// may be joined by "*" or written side by side ("2AB").
Poly parse_poly(const std::string& text, int nvars = -1);
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

// ---- operations ----

template <class T>
T evaluate(const HomogPoly& p, const std::vector<T>& point) {
  return p.poly().evaluate(point);
}

/// p with all variables outside `keep` set to zero, re-indexed, normalized.
HomogPoly specialize(const HomogPoly& p, const std::vector<int>& keep);

/// Polynomial over F_2 as its support.
struct Mod2Poly {
  int nvars = 0;
  std::set<Exponents> support;
  friend bool operator==(const Mod2Poly& a, const Mod2Poly& b) {
    return a.nvars == b.nvars && a.support == b.support;
  }
  friend Mod2Poly operator*(const Mod2Poly& a, const Mod2Poly& b);
};

/// Throws std::invalid_argument if the content is not 1.
Mod2Poly mod2_reduce(const HomogPoly& p);
Mod2Poly sigma_power_mod2(int nvars, int d);

/// Canonical representative of a polynomial up to scaling and variable permutation.
struct PolyClass {
  HomogPoly representative;
  friend bool operator==(const PolyClass& a, const PolyClass& b) {
    return a.representative == b.representative;
  }
  friend bool operator<(const PolyClass& a, const PolyClass& b);
};

/// Term-list order used for canonical forms: walking monomials from the
/// grlex greatest down, the first differing coefficient decides, larger wins.
/// Returns <0, 0, >0 like strcmp, "less" meaning preferred.
int compare_term_lists(const Poly& a, const Poly& b);

PolyClass canonicalize_class(const HomogPoly& p);

/// X_var -> X_var + X_n with the new variable appended, normalized.
HomogPoly algebraic_subdivide(const HomogPoly& p, int var);

struct SubdivisionWitness {
  int first, second;
  HomogPoly merged;  ///< second variable removed, normalized
};
std::optional<SubdivisionWitness> detect_subdivision(const HomogPoly& p);

// ---- template definitions ----

template <class T>
T Poly::evaluate(const std::vector<T>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("evaluate: point has wrong length");
  // cache of powers per variable
  std::vector<std::vector<T>> powers(nvars_);
  T total(0);
  for (const auto& [e, c] : terms_) {
    T term = [&] {
      if constexpr (std::is_same_v<T, BigInt>) return c;
      else return T(BigRational(c));
    }();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(T(1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
      term = term * pw[e[i]];
    }
    total = total + term;
  }
  return total;
}

}  // namespace arearel
