#pragma once

// Curves y^2 = x^3 + a x + b over Q and the Lattes map of duplication.

#include <optional>

#include "greenfield/dynsys.hpp"
#include "greenfield/rational.hpp"

namespace greenfield {

struct CurvePoint {
  bool infinity = true;
  Rational x, y;
  static CurvePoint zero() { return {}; }
  static CurvePoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }
  bool operator==(const CurvePoint&) const = default;
};

class EllipticCurve {
 public:
  // DomainError when 4a^3 + 27b^2 = 0.
  EllipticCurve(Rational a, Rational b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool contains(const CurvePoint& p) const;
  CurvePoint negate(const CurvePoint& p) const;
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint dbl(const CurvePoint& p) const { return add(p, p); }
  CurvePoint mul(long k, const CurvePoint& p) const;
  // Smallest m <= 12 with mP = O; rational torsion never has larger order.
  std::optional<unsigned> torsion_order(const CurvePoint& p) const;

  // x(2P) = f(x(P)) on P^1 with f = (X^4 - 2aX^2Z^2 - 8bXZ^3 + a^2Z^4, 4(X^3Z + aXZ^3 + bZ^4)).
  PolyMap lattes_map() const;

 private:
  Rational a_, b_;
};

// x(P) as a point of P^1; O goes to [1 : 0].
ProjPoint x_coordinate(const CurvePoint& p);

struct LattesSystem {
  EllipticCurve curve;
  CurvePoint base;
  DynSystem system;
  // PreconditionError unless the base point lies on the curve.
  LattesSystem(EllipticCurve e, CurvePoint p);
};

}  // namespace greenfield
