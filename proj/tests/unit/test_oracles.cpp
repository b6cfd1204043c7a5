// Library results checked against the independent references in oracles.hpp.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "greenfield/basis.hpp"
#include "greenfield/dynsys.hpp"
#include "greenfield/green.hpp"
#include "greenfield/linalg.hpp"
#include "greenfield/macaulay.hpp"
#include "oracles.hpp"

using namespace greenfield;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  RatMatrix m(rows, std::vector<Rational>(cols));
  for (auto& r : m)
    for (auto& x : r) x = oracle::random_rational(rng, 9, 4);
  return m;
}

HomoForm random_binary_form(std::mt19937_64& rng, unsigned d, bool monic_x) {
  HomoForm f(2, d);
  for (unsigned i = 0; i <= d; ++i) {
    Rational c = oracle::random_rational(rng, 5, 3);
    if (i == d && monic_x && c == 0) c = 1;
    f.add_term({i, d - i}, c);
  }
  return f;
}

}  // namespace

TEST(OracleDeterminant, MatchesLeibnizOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 6;
    RatMatrix m = random_matrix(rng, n, n);
    if (t % 7 == 0 && n > 1) m[n - 1] = m[0];  // force singular now and then
    EXPECT_EQ(determinant(m), oracle::leibniz_det(m)) << "trial " << t;
  }
}

TEST(OracleDeterminant, BareissIntegerMatchesLeibniz) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 6;
    IntMatrix m(n, std::vector<Integer>(n));
    RatMatrix q(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = static_cast<long>(rng() % 41) - 20;
        q[i][j] = m[i][j];
      }
    EXPECT_EQ(Rational(bareiss_determinant(m)), oracle::leibniz_det(q));
  }
}

TEST(OracleRank, RankAndIncrementalRankMatchGauss) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 150; ++t) {
    const std::size_t rows = 2 + rng() % 9, cols = 2 + rng() % 9, r = 1 + rng() % std::min(rows, cols);
    // rows x r times r x cols has rank <= r
    const RatMatrix a = random_matrix(rng, rows, r), b = random_matrix(rng, r, cols);
    RatMatrix m(rows, std::vector<Rational>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k < r; ++k) m[i][j] += a[i][k] * b[k][j];
    const std::size_t want = oracle::gauss_rank(m);
    EXPECT_EQ(rank(m), want);
    IncrementalRank inc(cols);
    for (const auto& row : m) inc.add(row);
    EXPECT_EQ(inc.rank(), want) << "trial " << t;
    for (const auto& row : m) EXPECT_TRUE(inc.contains(row));
  }
}

TEST(OracleRank, IncrementalRankWithPivotsRightOfEarlierColumns) {
  // Rows whose pivots arrive out of column order; exercises back-scaling.
  IncrementalRank inc(3);
  EXPECT_TRUE(inc.add(std::vector<Rational>{0, 2, 1}));
  EXPECT_TRUE(inc.add(std::vector<Rational>{3, 1, 0}));
  EXPECT_FALSE(inc.add(std::vector<Rational>{3, 3, 1}));
  EXPECT_FALSE(inc.add(std::vector<Rational>{6, 0, -1}));
  EXPECT_TRUE(inc.add(std::vector<Rational>{1, 1, 1}));
  EXPECT_EQ(inc.rank(), 3u);
}

TEST(OracleResultant, BinaryFormsMatchRootProduct) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 60; ++t) {
    const unsigned d = 1 + t % 4;
    const HomoForm f = random_binary_form(rng, d, true), g = random_binary_form(rng, d, false);
    const Rational exact = macaulay_resultant(PolyMap({f, g}));
    const long double want = oracle::root_product_resultant(f, g);
    const long double scale = std::max<long double>(1.0L, std::fabs(want));
    EXPECT_NEAR(static_cast<double>(exact.get_d() / scale), static_cast<double>(want / scale), 1e-9)
        << f.to_string() << " ; " << g.to_string();
    EXPECT_EQ(exact, sylvester_resultant(PolyMap({f, g})));
  }
}

TEST(OracleResultant, DiagonalAndPerFormScaling) {
  // Res(a x^d, b y^d, c z^d) = (a b c)^(d^2); Res is homogeneous of degree d^N in each form.
  std::mt19937_64 rng(15);
  for (unsigned d = 1; d <= 3; ++d) {
    const Rational a(2), b(-3, 5), c(7, 2);
    const PolyMap diag({HomoForm::monomial({d, 0, 0}, a), HomoForm::monomial({0, d, 0}, b),
                        HomoForm::monomial({0, 0, d}, c)});
    EXPECT_EQ(macaulay_resultant(diag), pow(a * b * c, d * d));
  }
  for (int t = 0; t < 6; ++t) {
    const unsigned d = 2;
    std::vector<HomoForm> forms;
    for (std::size_t i = 0; i < 3; ++i) {
      HomoForm f = HomoForm::monomial(i == 0 ? Exponent{d, 0, 0} : i == 1 ? Exponent{0, d, 0} : Exponent{0, 0, d});
      for (const auto& m : monomials(3, d)) f.add_term(m, oracle::random_rational(rng, 2, 2));
      forms.push_back(f);
    }
    const Rational base = macaulay_resultant(PolyMap(forms));
    const Rational lam(3, 2);
    auto scaled = forms;
    scaled[1] = scaled[1].scaled(lam);
    EXPECT_EQ(macaulay_resultant(PolyMap(scaled)), pow(lam, d * d) * base);
  }
}

TEST(OracleResultant, LinearChangeOfCoordinates) {
  // Res(F o A) = det(A)^(d^(N+1)) Res(F) with A: x -> x + y, y -> y + z, z -> 2z.
  std::mt19937_64 rng(16);
  const std::vector<HomoForm> sub{HomoForm::parse("x+y", 3), HomoForm::parse("y+z", 3), HomoForm::parse("2*z", 3)};
  for (int t = 0; t < 4; ++t) {
    std::vector<HomoForm> forms;
    for (std::size_t i = 0; i < 3; ++i) {
      HomoForm f(3, 2);
      for (const auto& m : monomials(3, 2)) f.add_term(m, oracle::random_rational(rng, 3, 1));
      forms.push_back(f);
    }
    const Rational base = macaulay_resultant(PolyMap(forms));
    std::vector<HomoForm> moved;
    for (const auto& f : forms) moved.push_back(substitute(f, sub));
    EXPECT_EQ(macaulay_resultant(PolyMap(moved)), pow(Rational(2), 8) * base);
  }
}

TEST(OracleEscape, ChebyshevClosedForm) {
  const DynSystem f(PolyMap::parse({"x^2-2*y^2", "y^2"}));
  for (int x = 3; x <= 40; ++x) {
    const EscapeRate r = escape_rate(f, Place::archimedean(), ProjPoint::exact({Rational(x), Rational(1)}), 1e-11);
    EXPECT_NEAR(r.approx(), oracle::chebyshev_height(x), 1e-10) << x;
    EXPECT_LE(r.error, 1e-11);
  }
}

TEST(OracleFekete, SmallDegreesMatchAngleGrid) {
  const DynSystem f(PolyMap::parse({"x^2", "y^2"}));
  for (unsigned n : {1u, 2u}) {
    const BasisFamily b = special_basis(f, n);
    const FeketeResult r = fekete_search(f, b, 20000, 3);
    const double grid = oracle::grid_vandermonde_logmax(n, n == 1 ? 3600 : 720) / (n * (n + 1.0));
    EXPECT_GE(r.witness.value(), grid - 1e-9) << n;
    EXPECT_NEAR(r.witness.value(), grid, 1e-6) << n;
  }
}

TEST(OracleDet, EvalDetLogMatchesLeibnizOnMonomialBasis) {
  std::mt19937_64 rng(17);
  const BasisFamily b = monomial_basis(1, 4);
  for (int t = 0; t < 30; ++t) {
    std::vector<ProjPoint> lifts;
    RatMatrix m;
    for (std::size_t i = 0; i < 5; ++i) {
      const Rational x = oracle::random_rational(rng, 6, 3), y = oracle::random_rational(rng, 6, 3, true);
      lifts.push_back(ProjPoint::exact({x, y}));
      std::vector<Rational> row;
      for (const auto& el : b.elements) row.push_back(evaluate_exact(el.expanded, lifts.back()));
      m.push_back(row);
    }
    const Rational det = oracle::leibniz_det(m);
    const EvalDetLog got = eval_det_log(b, lifts, Place::prime(3));
    if (det == 0) {
      EXPECT_TRUE(is_minus_infinity(got.value));
    } else {
      ASSERT_FALSE(is_minus_infinity(got.value));
      EXPECT_EQ(std::get<LogMag>(got.value).padic_coefficient(3), -ord_p(det, Integer(3)));
    }
  }
}
