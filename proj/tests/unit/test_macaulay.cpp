#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "greenfield/errors.hpp"
#include "greenfield/macaulay.hpp"
#include "oracles.hpp"

using namespace greenfield;

namespace {

PolyMap random_map(std::mt19937_64& rng, std::size_t nvars, unsigned d) {
  std::vector<HomoForm> forms;
  for (std::size_t i = 0; i < nvars; ++i) {
    HomoForm f(nvars, d);
    for (const auto& m : monomials(nvars, d))
      if (rng() % 3 == 0) f.add_term(m, oracle::random_rational(rng, 4, 3));
    Exponent e(nvars, 0);
    e[i] = d;
    f.add_term(e, oracle::random_rational(rng, 3, 2, true));
    forms.push_back(f);
  }
  return PolyMap(forms);
}

}  // namespace

TEST(Resultant, Examples) {
  EXPECT_EQ(macaulay_resultant(PolyMap::parse({"x^2", "y^2"})), 1);
  EXPECT_EQ(macaulay_resultant(PolyMap::parse({"x^2 + 7/3*y^2", "y^2"})), 1);
  EXPECT_EQ(macaulay_resultant(PolyMap::parse({"x^2", "y^2", "z^2"})), 1);
  EXPECT_EQ(macaulay_resultant(PolyMap::parse({"2*x^2", "y^2"})), 4);
  EXPECT_EQ(macaulay_resultant(PolyMap::parse({"x^2", "x*y"})), 0);
  EXPECT_EQ(macaulay_resultant(PolyMap::parse({"x*y", "x*z", "y*z"})), 0);
}

TEST(Resultant, MacaulayMatrixIsSquareAtCriticalDegree) {
  const MacaulayMatrix m = macaulay_matrix(PolyMap::parse({"x^2", "y^2", "z^2"}));
  EXPECT_EQ(m.degree, 4u);
  EXPECT_EQ(m.columns.size(), 15u);
  EXPECT_EQ(m.entries.size(), 15u);
  EXPECT_EQ(m.entries[0].size(), 15u);
}

TEST(Resultant, ScalingLaw) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 12; ++t) {
    const std::size_t N = 1 + t % 2;
    const unsigned d = 1 + t % 3;
    const PolyMap f = random_map(rng, N + 1, d);
    const Rational lam = oracle::random_rational(rng, 5, 4, true);
    const unsigned e = (N + 1) * static_cast<unsigned>(std::pow(d, N));
    EXPECT_EQ(macaulay_resultant(f.scaled(lam)), pow(lam, e) * macaulay_resultant(f));
  }
}

TEST(Resultant, AgreesWithSylvesterForBinaryForms) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const PolyMap f = random_map(rng, 2, 1 + t % 5);
    EXPECT_EQ(macaulay_resultant(f), sylvester_resultant(f));
  }
}

TEST(Resultant, DegenerateMinorFallsBackCorrectly) {
  // Forms built so that the extraneous minor vanishes in the given coordinates.
  const PolyMap f = PolyMap::parse({"y^2", "z^2", "x^2"});
  EXPECT_EQ(std::abs(macaulay_resultant(f).get_d()), 1.0);
  const PolyMap g = PolyMap::parse({"x*y + z^2", "x^2 + y*z", "y^2 + x*z"});
  const Rational r = macaulay_resultant(g);
  // Res is unchanged in absolute value by permuting the variables.
  const PolyMap h = PolyMap::parse({"y*x + z^2", "y^2 + x*z", "x^2 + y*z"});
  EXPECT_EQ(abs(r), abs(macaulay_resultant(h)));
}

TEST(RNormalized, Examples) {
  const PolyMap power = PolyMap::parse({"x^2", "y^2"});
  for (auto c : {RConvention::Paper, RConvention::Invariant}) {
    EXPECT_TRUE(r_normalized(power, Place::archimedean(), c).is_zero());
    EXPECT_TRUE(r_normalized(power, Place::prime(2), c).is_zero());
  }
  const PolyMap two = PolyMap::parse({"2*x^2", "y^2"});
  EXPECT_NEAR(r_normalized(two, Place::archimedean(), RConvention::Paper).value(), 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(r_normalized(two, Place::archimedean(), RConvention::Invariant).value(), -0.5 * std::log(2.0), 1e-15);
  EXPECT_EQ(r_normalized(two, Place::prime(2), RConvention::Invariant).padic_coefficient(2), Rational(1, 2));
  EXPECT_EQ(parse_convention("paper"), RConvention::Paper);
  EXPECT_THROW(parse_convention("other"), ParseError);
}

TEST(Certificate, Examples) {
  const PolyMap f = PolyMap::parse({"x^2", "y^2"});
  const auto a = elimination_certificate(f, HomoForm::parse("x^4", 2));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0], HomoForm::parse("x^2", 2));
  EXPECT_TRUE(a[1].is_zero());
  const auto b = elimination_certificate(f, HomoForm::parse("x^2*y^2", 2));
  EXPECT_EQ(expand_certificate(f, b), HomoForm::parse("x^2*y^2", 2));
  EXPECT_EQ(b[0], HomoForm::parse("y^2", 2));  // graded-lex-first pivot choice
  const PolyMap c = PolyMap::parse({"x^2-2*y^2", "y^2"});
  const HomoForm phi = HomoForm::parse("x^3*y", 2);
  EXPECT_EQ(expand_certificate(c, elimination_certificate(c, phi)), phi);
  EXPECT_THROW(elimination_certificate(f, HomoForm::parse("x^3", 2)), PreconditionError);
}

TEST(Certificate, RandomTargetsReexpand) {
  std::mt19937_64 rng(43);
  const PolyMap f = random_map(rng, 3, 2);
  ASSERT_NE(macaulay_resultant(f), 0);
  for (int t = 0; t < 5; ++t) {
    HomoForm phi(3, 6);
    for (const auto& m : monomials(3, 6))
      if (rng() % 4 == 0) phi.add_term(m, oracle::random_rational(rng, 5, 3));
    EXPECT_EQ(expand_certificate(f, elimination_certificate(f, phi)), phi);
  }
}
