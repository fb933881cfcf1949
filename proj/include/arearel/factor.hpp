#pragma once

#include <utility>
#include <vector>

#include "arearel/exactnum.hpp"
#include "arearel/poly.hpp"

namespace arearel {

/// unit * prod(factor^multiplicity) equals the input exactly. Factors are
/// primitive with positive leading coefficient; unit is the signed content.
struct Factorization {
  BigInt unit{1};
  std::vector<std::pair<Poly, int>> factors;

  /// Sum of multiplicities.
  int count() const;
  Poly expand(int nvars) const;
};

/// Dense univariate helpers, coefficient i belongs to x^i.
using ZPoly = std::vector<BigInt>;
ZPoly to_dense(const Poly& f);  // f must have one variable
Poly from_dense(const ZPoly& f);

/// 2^n * ||f||_2, rounded up; bounds every coefficient of every factor.
BigInt mignotte_bound(const ZPoly& f);

/// Complete factorization over Q of a polynomial in one variable.
/// Constants give an empty factor list.
Factorization factor_univariate(const Poly& f);

/// Complete factorization of a homogeneous polynomial in at most 4 variables
/// of degree at most 8. Throws std::invalid_argument outside that box.
Factorization factor_homogeneous(const HomogPoly& p);

/// Single factor of multiplicity one and unit content. Polynomials in one
/// variable go through factor_univariate, others must be homogeneous.
bool is_irreducible(const Poly& p);
bool is_irreducible(const HomogPoly& p);

}  // namespace arearel
