#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "greenfield/errors.hpp"
#include "greenfield/heights.hpp"
#include "oracles.hpp"

using namespace greenfield;

namespace {

const double kLog2 = std::log(2.0);

ProjPoint pt(Rational a, Rational b) { return ProjPoint::exact({std::move(a), std::move(b)}); }

}  // namespace

TEST(WeilHeight, Examples) {
  EXPECT_NEAR(weil_height(pt(2, 1)).value, kLog2, 1e-15);
  EXPECT_NEAR(weil_height(pt(Rational(2, 3), 1)).value, std::log(3.0), 1e-15);
  EXPECT_NEAR(weil_height(pt(1, 1)).value, 0.0, 1e-15);
  EXPECT_NEAR(weil_height(pt(4, 6)).value, std::log(3.0), 1e-15);
}

TEST(CanonicalHeight, Examples) {
  const DynSystem power(PolyMap::parse({"x^2", "y^2"}));
  const DynSystem cheb(PolyMap::parse({"x^2-2*y^2", "y^2"}));
  EXPECT_NEAR(canonical_height(power, pt(2, 1), 1e-12).value, kLog2, 1e-12);
  EXPECT_NEAR(canonical_height(cheb, pt(2, 1), 1e-10).value, 0.0, 1e-9);
  EXPECT_NEAR(canonical_height(cheb, pt(3, 1), 1e-10).value, 0.9624236501, 1e-9);
  const HeightValue h = canonical_height(cheb, pt(3, 1), 1e-10);
  EXPECT_LE(h.error, 1e-10);
}

TEST(LocalProfile, Examples) {
  const DynSystem power(PolyMap::parse({"x^2", "y^2"}));
  const HeightValue a = local_height_profile(power, pt(2, 1), 1e-12);
  EXPECT_NEAR(a.local_profile.at(Place::archimedean()).value(), kLog2, 1e-15);
  for (const auto& [v, h] : a.local_profile)
    if (!v.is_archimedean()) EXPECT_TRUE(h.is_zero());
  const HeightValue b = local_height_profile(power, pt(4, 2), 1e-12);
  EXPECT_NEAR(b.local_profile.at(Place::archimedean()).value(), std::log(4.0), 1e-15);
  EXPECT_EQ(b.local_profile.at(Place::prime(2)).padic_coefficient(2), -1);
  EXPECT_NEAR(b.value, kLog2, 1e-12);
}

TEST(CanonicalHeight, PreperiodicPointsVanish) {
  const DynSystem power(PolyMap::parse({"x^2", "y^2"}));
  const DynSystem cheb(PolyMap::parse({"x^2-2*y^2", "y^2"}));
  for (const auto& p : {pt(0, 1), pt(1, 0), pt(1, 1), pt(-1, 1)})
    EXPECT_LE(std::fabs(canonical_height(power, p, 1e-10).value), 1e-9);
  for (const auto& p : {pt(2, 1), pt(-2, 1), pt(0, 1), pt(1, 0), pt(1, 1), pt(-1, 1)})
    EXPECT_LE(std::fabs(canonical_height(cheb, p, 1e-10).value), 1e-9) << p.to_string();
}

TEST(CanonicalHeight, LiftChangeInvarianceIsExact) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const ProjPoint p = pt(oracle::random_rational(rng, 30, 20), oracle::random_rational(rng, 30, 20, true));
    const Rational s = oracle::random_rational(rng, 50, 50, true);
    const HeightValue a = local_height_profile(f, p, 1e-10), b = local_height_profile(f, p.scaled(s), 1e-10);
    EXPECT_TRUE(a.total.padic_equal(b.total)) << p.to_string();
    EXPECT_NEAR(a.total.arch(), b.total.arch(), a.total.arch_err() + b.total.arch_err() + 1e-12);
  }
}

TEST(CanonicalHeight, FunctionalEquation) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  std::mt19937_64 rng(72);
  for (int t = 0; t < 30; ++t) {
    const ProjPoint p = pt(oracle::random_rational(rng, 20, 9), oracle::random_rational(rng, 20, 9, true));
    const double a = canonical_height(f, apply(f.map(), p), 1e-9).value;
    const double b = canonical_height(f, p, 1e-9).value;
    EXPECT_LE(std::fabs(a - 2 * b), 2e-9);
  }
}

TEST(CanonicalHeight, AgreesWithWeilHeightUpToBoundedDifference) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  double bound = 0.0;
  for (const Place& v : f.bad_places()) bound += f.growth(v).bound();
  std::mt19937_64 rng(73);
  for (int t = 0; t < 30; ++t) {
    const ProjPoint p = pt(oracle::random_rational(rng, 1000, 900), oracle::random_rational(rng, 1000, 900, true));
    EXPECT_LE(std::fabs(canonical_height(f, p, 1e-9).value - weil_height(p).value), bound + 1e-9);
  }
}

TEST(CanonicalHeight, RejectsNumericLift) {
  const DynSystem f(PolyMap::parse({"x^2", "y^2"}));
  EXPECT_THROW(canonical_height(f, ProjPoint::numeric({Complex(1, 0), Complex(1, 0)}), 1e-9), PreconditionError);
}
