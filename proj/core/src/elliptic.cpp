#include "greenfield/elliptic.hpp"

#include "greenfield/errors.hpp"

namespace greenfield {

EllipticCurve::EllipticCurve(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if (4 * a_ * a_ * a_ + 27 * b_ * b_ == 0) throw DomainError("singular curve: 4a^3 + 27b^2 = 0");
}

bool EllipticCurve::contains(const CurvePoint& p) const {
  return p.infinity || p.y * p.y == p.x * p.x * p.x + a_ * p.x + b_;
}

CurvePoint EllipticCurve::negate(const CurvePoint& p) const {
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, -p.y);
}

CurvePoint EllipticCurve::add(const CurvePoint& p, const CurvePoint& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  Rational lambda;
  if (p.x == q.x) {
    if (p.y != q.y || p.y == 0) return CurvePoint::zero();
    lambda = (3 * p.x * p.x + a_) / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Rational x = lambda * lambda - p.x - q.x;
  Rational y = lambda * (p.x - x) - p.y;
  return CurvePoint::affine(std::move(x), std::move(y));
}

CurvePoint EllipticCurve::mul(long k, const CurvePoint& p) const {
  CurvePoint base = k < 0 ? negate(p) : p;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  CurvePoint acc = CurvePoint::zero();
  while (e) {
    if (e & 1) acc = add(acc, base);
    base = dbl(base);
    e >>= 1;
  }
  return acc;
}

std::optional<unsigned> EllipticCurve::torsion_order(const CurvePoint& p) const {
  CurvePoint q = p;
  for (unsigned m = 1; m <= 12; ++m) {
    if (q.infinity) return m;
    q = add(q, p);
  }
  return std::nullopt;
}

PolyMap EllipticCurve::lattes_map() const {
  const std::size_t nv = 2;
  const HomoForm X = HomoForm::variable(nv, 0), Z = HomoForm::variable(nv, 1);
  const HomoForm A = X.pow(4) - (X.pow(2) * Z.pow(2)).scaled(2 * a_) - (X * Z.pow(3)).scaled(8 * b_) +
                     Z.pow(4).scaled(a_ * a_);
  const HomoForm B = (X.pow(3) * Z + (X * Z.pow(3)).scaled(a_) + Z.pow(4).scaled(b_)).scaled(4);
  return PolyMap({A, B});
}

ProjPoint x_coordinate(const CurvePoint& p) {
  if (p.infinity) return ProjPoint::exact({1, 0});
  return ProjPoint::exact({p.x, 1});
}

LattesSystem::LattesSystem(EllipticCurve e, CurvePoint p)
    : curve(std::move(e)), base(std::move(p)), system(curve.lattes_map()) {
  if (!curve.contains(base)) throw PreconditionError("base point is not on the curve");
}

}  // namespace greenfield
