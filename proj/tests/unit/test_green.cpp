#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "greenfield/errors.hpp"
#include "greenfield/factor.hpp"
#include "greenfield/green.hpp"
#include "greenfield/heights.hpp"
#include "oracles.hpp"

using namespace greenfield;

namespace {

const double kLog2 = std::log(2.0), kLog3 = std::log(3.0);

const DynSystem& power() {
  static const DynSystem s(PolyMap::parse({"x^2", "y^2"}));
  return s;
}

std::vector<ProjPoint> pts(std::initializer_list<std::pair<int, int>> xs) {
  std::vector<ProjPoint> out;
  for (auto [a, b] : xs) out.push_back(ProjPoint::exact({a, b}));
  return out;
}

std::vector<ProjPoint> roots_of_unity(unsigned count) {
  std::vector<ProjPoint> out;
  for (unsigned k = 0; k < count; ++k)
    out.push_back(ProjPoint::numeric({std::polar(1.0, 2 * std::acos(-1.0) * k / count), Complex(1, 0)}));
  return out;
}

double logd(const ExtLogMag& v) { return std::get<LogMag>(v).value(); }

}  // namespace

TEST(EvalDetLog, Examples) {
  const BasisFamily b = monomial_basis(1, 1);
  for (int p : {2, 3, 7}) {
    const EvalDetLog e = eval_det_log(b, pts({{0, 1}, {1, 0}}), Place::prime(p));
    ASSERT_FALSE(is_minus_infinity(e.value));
    EXPECT_TRUE(std::get<LogMag>(e.value).is_zero());
  }
  EXPECT_NEAR(logd(eval_det_log(b, pts({{1, 1}, {-1, 1}}), Place::archimedean()).value), kLog2, 1e-15);
  EXPECT_TRUE(is_minus_infinity(eval_det_log(b, pts({{1, 1}, {2, 2}}), Place::archimedean()).value));
  EXPECT_THROW(eval_det_log(b, pts({{1, 1}}), Place::archimedean()), PreconditionError);
  EXPECT_THROW(eval_det_log(b, roots_of_unity(2), Place::prime(2)), PreconditionError);
}

TEST(GreenValue, ExamplesAndProductFormula) {
  const BasisFamily b = monomial_basis(1, 1);
  const auto lifts = pts({{1, 1}, {-1, 1}});
  for (auto c : {RConvention::Paper, RConvention::Invariant}) {
    const GreenValue inf = green_value(power(), b, lifts, Place::archimedean(), c, 1e-12);
    EXPECT_NEAR(inf.approx(), -0.3465735903, 1e-10);
    const GreenValue two = green_value(power(), b, lifts, Place::prime(2), c, 1e-12);
    EXPECT_NEAR(two.approx(), 0.5 * kLog2, 1e-15);
    EXPECT_EQ(two.value.padic_coefficient(2), Rational(1, 2));
    EXPECT_NEAR((inf.value + two.value).value(), 0.0, 1e-12);
  }
  EXPECT_TRUE(green_value(power(), b, pts({{1, 1}, {3, 3}}), Place::archimedean(), RConvention::Invariant, 1e-9).infinite);
}

TEST(GreenValue, SumOverPlacesIsAverageCanonicalHeight) {
  // log|det| and r(F) satisfy the product formula; the escape rates add up
  // to canonical heights.
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "3*y^2"}));
  const BasisFamily b = special_basis(f, 3);
  const auto lifts = pts({{1, 2}, {3, 1}, {-1, 5}, {2, 7}});
  RatMatrix m;
  for (const auto& p : lifts) {
    std::vector<Rational> row;
    for (const auto& el : b.elements) row.push_back(evaluate_exact(el.expanded, p));
    m.push_back(row);
  }
  const Rational det = oracle::leibniz_det(m);
  ASSERT_NE(det, 0);
  std::set<Integer> primes{2, 3, 5, 7};
  for (const auto& p : prime_support(det)) primes.insert(p);
  LogMag total = green_value(f, b, lifts, Place::archimedean(), RConvention::Invariant, 1e-12).value;
  for (const auto& p : primes) total += green_value(f, b, lifts, Place::prime(p), RConvention::Invariant, 1e-12).value;
  double avg = 0.0;
  for (const auto& p : lifts) avg += canonical_height(f, p, 1e-12).value / lifts.size();
  EXPECT_NEAR(total.value(), avg, 1e-9);
}

TEST(DbnWitness, Examples) {
  const BasisFamily b2 = monomial_basis(1, 2);
  EXPECT_NEAR(logd(dbn_witness(power(), b2, roots_of_unity(3), Place::archimedean())), 0.25 * kLog3, 1e-12);
  const BasisFamily b1 = monomial_basis(1, 1);
  for (int p : {3, 5, 7}) EXPECT_TRUE(std::get<LogMag>(dbn_witness(power(), b1, pts({{0, 1}, {1, 1}}), Place::prime(p))).is_zero());
  EXPECT_TRUE(is_minus_infinity(dbn_witness(power(), b1, pts({{1, 2}, {1, 2}}), Place::prime(3))));
}

TEST(DbnWitness, RejectsOutsideLiftNamingIndex) {
  const BasisFamily b1 = monomial_basis(1, 1);
  try {
    dbn_witness(power(), b1, pts({{1, 1}, {3, 1}}), Place::archimedean());
    FAIL() << "expected rejection";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(DbnWitness, RejectsLiftOffHypersurface) {
  const DynSystem line(PolyMap::parse({"x^2", "y^2", "z^2"}), HomoForm::parse("x-y", 3));
  const BasisFamily b = special_basis(line, 1);
  ASSERT_EQ(b.c(), 2u);
  std::vector<ProjPoint> on{ProjPoint::exact({1, 1, 0}), ProjPoint::exact({0, 0, 1})};
  EXPECT_NO_THROW(dbn_witness(line, b, on, Place::archimedean()));
  on[1] = ProjPoint::exact({1, 0, 1});
  EXPECT_THROW(dbn_witness(line, b, on, Place::archimedean()), PreconditionError);
}

TEST(Envelope, Examples) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  EXPECT_TRUE(hadamard_envelope(f, 4, LogMag(), Place::prime(2)).is_zero());
  const LogMag e = hadamard_envelope(f, 4, LogMag::log_prime(2, 1), Place::prime(2));
  EXPECT_EQ(e.padic_coefficient(2), 35);
  EXPECT_THROW(hadamard_envelope(f, 1, LogMag(), Place::prime(2)), PreconditionError);
}

TEST(Envelope, DominatesSampledDeterminants) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  std::mt19937_64 rng(61);
  for (unsigned n : {4u, 8u}) {
    const BasisFamily b = special_basis(f, n);
    for (const Place& v : {Place::archimedean(), Place::prime(2)}) {
      const double env = hadamard_envelope(f, n, v).value();
      const double rlog = julia_radius_log(f, v).value();
      for (int t = 0; t < 5; ++t) {
        std::vector<ProjPoint> lifts;
        for (unsigned i = 0; i <= n; ++i) {
          ProjPoint p = ProjPoint::exact({oracle::random_rational(rng, 8, 8), 1});
          // shrink the lift until it lies in the filled Julia set
          while (julia_membership(f, v, p, 1e-9) != Membership::Inside) p = p.scaled(v.is_archimedean() ? Rational(1, 2) : Rational(2));
          EXPECT_LE(log_sup_norm(v, p).value(), rlog + 1e-9);
          lifts.push_back(p);
        }
        const EvalDetLog d = eval_det_log(b, lifts, v);
        if (!is_minus_infinity(d.value)) EXPECT_LE(std::get<LogMag>(d.value).value(), env + 1e-9);
      }
    }
  }
}

TEST(Fekete, PowerMapAgreesWithRootsOfUnity) {
  for (unsigned n : {1u, 2u, 5u, 8u}) {
    const BasisFamily b = special_basis(power(), n);
    const FeketeResult r = fekete_search(power(), b, 20000, 7);
    const double want = std::log(n + 1.0) / (2.0 * n);
    EXPECT_NEAR(r.witness.value(), want, 1e-6) << n;
    EXPECT_LE(r.evaluations, 20000u);
    EXPECT_EQ(r.lifts.size(), n + 1);
  }
}

TEST(Fekete, DeterministicPerSeed) {
  const BasisFamily b = special_basis(power(), 6);
  const FeketeResult a = fekete_search(power(), b, 5000, 11), c = fekete_search(power(), b, 5000, 11);
  EXPECT_EQ(a.witness.value(), c.witness.value());
  EXPECT_EQ(a.evaluations, c.evaluations);
  for (std::size_t i = 0; i < a.lifts.size(); ++i) EXPECT_EQ(a.lifts[i].as_complex(), c.lifts[i].as_complex());
}

TEST(Fekete, RejectsHigherDimension) {
  const DynSystem p2(PolyMap::parse({"x^2", "y^2", "z^2"}));
  EXPECT_THROW(fekete_search(p2, special_basis(p2, 1), 100, 1), PreconditionError);
}
