#pragma once

// Dense univariate polynomials over Z and their factorization over Q.

#include <string>
#include <vector>

#include "greenfield/rational.hpp"

namespace greenfield {

// Coefficient of x^i at index i; no trailing zeros. The zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Integer> coeffs);
  static UPoly constant(const Integer& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({0, 1}); }

  const std::vector<Integer>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for zero.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Integer& lead() const;
  Integer operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(const Integer& k) const;
  bool operator==(const UPoly& o) const = default;

  Integer content() const;  // sign of the leading coefficient
  UPoly primitive() const;  // positive leading coefficient
  UPoly derivative() const;
  Rational evaluate(const Rational& x) const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Integer> c_;
};

// Exact quotient when b divides a over Z, otherwise nullopt-like false.
bool divides(const UPoly& b, const UPoly& a, UPoly* quotient = nullptr);

// Primitive gcd with positive leading coefficient.
UPoly gcd(const UPoly& a, const UPoly& b);

struct UFactor {
  UPoly poly;  // primitive, irreducible over Q, positive leading coefficient
  unsigned multiplicity = 1;
};

struct UFactorization {
  Integer unit;  // signed content
  std::vector<UFactor> factors;  // by degree, then coefficients
};

// Squarefree decomposition, factoring modulo a small prime, Hensel lifting
// and exhaustive recombination.
UFactorization factor_over_q(const UPoly& f);

}  // namespace greenfield
