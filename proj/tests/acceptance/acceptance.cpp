// One line per acceptance criterion; exit status 0 only when all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "greenfield/basis.hpp"
#include "greenfield/elliptic.hpp"
#include "greenfield/errors.hpp"
#include "greenfield/experiments.hpp"
#include "greenfield/green.hpp"
#include "greenfield/heights.hpp"
#include "greenfield/linalg.hpp"
#include "greenfield/macaulay.hpp"
#include "oracles.hpp"

using namespace greenfield;

namespace {

// Collects the first few failures of a criterion.
struct Ledger {
  int failures = 0;
  std::ostringstream notes;
  void fail(const std::string& what) {
    if (failures++ < 3) notes << (failures > 1 ? "; " : "") << what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

ProjPoint rational_lift(std::mt19937_64& rng, std::size_t nvars) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < nvars; ++i) c.push_back(oracle::random_rational(rng, 12, 9));
  if (c.back() == 0) c.back() = 1;
  return ProjPoint::exact(c);
}

RatMatrix eval_matrix(const BasisFamily& b, const std::vector<ProjPoint>& lifts) {
  RatMatrix m;
  for (const auto& p : lifts) {
    std::vector<Rational> row;
    for (const auto& el : b.elements) row.push_back(evaluate_exact(el.expanded, p));
    m.push_back(row);
  }
  return m;
}

// Scales a lift into the filled Julia set at v.
ProjPoint into_julia(const DynSystem& f, const Place& v, ProjPoint p) {
  for (int guard = 0; guard < 200; ++guard) {
    if (julia_membership(f, v, p, 1e-9) == Membership::Inside) return p;
    p = p.scaled(v.is_archimedean() ? Rational(1, 2) : Rational(v.prime()));
  }
  throw InternalError("lift never entered the filled Julia set");
}

// ---- criteria -----------------------------------------------------------

void c1_product_formula(Ledger& L) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 1000; ++t) {
    const Rational x = oracle::random_rational(rng, 1000000, 1000000, true);
    const LogMag s = product_formula_sum(x);
    for (const auto& [p, ord] : rational_log_expansion(x))
      L.expect(s.padic_coefficient(p) == -ord, "p-adic part of " + to_string(x));
    L.expect(std::fabs(s.value()) <= 1e-9, "arch residual " + fmt(s.value()) + " at " + to_string(x));
  }
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  int tuples = 0;
  while (tuples < 100) {
    const unsigned n = 1 + rng() % 4;
    const BasisFamily b = special_basis(f, n);
    std::vector<ProjPoint> lifts;
    for (std::size_t i = 0; i < b.c(); ++i) lifts.push_back(rational_lift(rng, 2));
    const Rational det = determinant(eval_matrix(b, lifts));
    if (det == 0) continue;
    ++tuples;
    const EvalDetLog inf = eval_det_log(b, lifts, Place::archimedean());
    LogMag total = std::get<LogMag>(inf.value);
    for (const auto& v : support(det))
      if (!v.is_archimedean()) {
        const LogMag local = std::get<LogMag>(eval_det_log(b, lifts, v).value);
        L.expect(local.padic_coefficient(v.prime()) == -ord_p(det, v.prime()), "det p-adic part at " + v.to_string());
        total += local;
      }
    for (const auto& [p, ord] : rational_log_expansion(det)) L.expect(total.padic_coefficient(p) == -ord, "ledger p-adic");
    L.expect(std::fabs(total.value()) <= 1e-9, "det arch residual " + fmt(total.value()));
  }
}

void c2_resultants(Ledger& L) {
  L.expect(macaulay_resultant(PolyMap::parse({"x^2", "y^2"})) == 1, "Res(x^2,y^2)");
  L.expect(macaulay_resultant(PolyMap::parse({"2*x^2", "y^2"})) == 4, "Res(2x^2,y^2)");
  L.expect(macaulay_resultant(PolyMap::parse({"x^2", "y^2", "z^2"})) == 1, "Res(x^2,y^2,z^2)");
  std::mt19937_64 rng(102);
  int nonzero = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t N = 1 + t % 3;
    const unsigned d = 1 + (t / 3) % 3;
    std::vector<HomoForm> forms;
    for (std::size_t i = 0; i <= N; ++i) {
      HomoForm g(N + 1, d);
      Exponent e(N + 1, 0);
      e[i] = d;
      g.add_term(e, oracle::random_rational(rng, 4, 3, true));
      for (const auto& m : monomials(N + 1, d))
        if (rng() % 4 == 0) g.add_term(m, oracle::random_rational(rng, 4, 3));
      forms.push_back(g);
    }
    const PolyMap f(forms);
    const Rational lam = oracle::random_rational(rng, 6, 5, true);
    const unsigned exp = static_cast<unsigned>((N + 1) * std::pow(d, N));
    const Rational r = macaulay_resultant(f);
    nonzero += r != 0;
    L.expect(macaulay_resultant(f.scaled(lam)) == pow(lam, exp) * r,
             "scaling law d=" + std::to_string(d) + " N=" + std::to_string(N));
  }
  L.expect(nonzero >= 40, "too few nondegenerate samples");
}

void c3_escape(Ledger& L) {
  std::mt19937_64 rng(103);
  const DynSystem power(PolyMap::parse({"x^2", "y^2"}));
  for (int t = 0; t < 50; ++t) {
    const ProjPoint p = rational_lift(rng, 2);
    for (int prime : {2, 3, 5}) {
      const Place v = Place::prime(prime);
      LogMag want;
      bool first = true;
      for (const auto& x : p.exact_coords())
        if (x != 0 && (first || abs_log(v, x).value() > want.value())) want = abs_log(v, x), first = false;
      const EscapeRate r = escape_rate(power, v, p, 1e-9);
      L.expect(r.error == 0.0 && r.value.padic_equal(want) && r.value.arch() == 0.0, "power map at " + v.to_string());
    }
    double want = -1e300;
    for (const auto& x : p.exact_coords())
      if (x != 0) want = std::max(want, log_abs(x));
    L.expect(std::fabs(escape_rate(power, Place::archimedean(), p, 1e-9).approx() - want) <= 1e-9, "power map at inf");
  }
  const DynSystem cheb(PolyMap::parse({"x^2-2*y^2", "y^2"}));
  const double c = escape_rate(cheb, Place::archimedean(), ProjPoint::exact({3, 1}), 1e-10).approx();
  L.expect(std::fabs(c - std::log((3 + std::sqrt(5.0)) / 2)) <= 1e-9 && std::fabs(c - 0.9624236501) <= 1e-9,
           "Chebyshev value " + fmt(c));
  const DynSystem half(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  for (int t = 0; t < 100; ++t) {
    const ProjPoint p = rational_lift(rng, 2);
    const Place v = t % 2 ? Place::archimedean() : Place::prime(2);
    const DynSystem& s = t % 3 ? half : cheb;
    const double a = escape_rate(s, v, apply(s.map(), p), 1e-9).approx();
    const double b = escape_rate(s, v, p, 1e-9).approx();
    L.expect(std::fabs(a - 2 * b) <= 2e-9, "functional equation off by " + fmt(a - 2 * b));
  }
}

void c4_basis(Ledger& L) {
  for (unsigned d = 2; d <= 3; ++d)
    for (std::size_t N = 1; N <= 3; ++N) {
      const SandwichScan s = keyratio_scan(d, N, 200);
      for (unsigned n = d * (N + 1); n <= 200; ++n) {
        const unsigned g = floor_G(d, N, n);
        L.expect((N + 1) * g <= n, "floor_G bound");
        if (n >= s.n0) L.expect(keyratio_holds(d, N, n), "sandwich d=" + std::to_string(d) + " N=" + std::to_string(N) +
                                                              " n=" + std::to_string(n));
      }
      L.expect(!s.last_violation || *s.last_violation < s.n0, "violation past n0");
    }
  struct Case {
    std::vector<std::string> forms;
    unsigned nmax;
  };
  const std::vector<Case> cases{
      {{"x^2", "y^2"}, 40},
      {{"x^2-2*y^2", "y^2"}, 40},
      {{"x^3+x*y^2", "y^3-x^2*y"}, 40},
      {{"x^2+y*z", "y^2", "z^2-x*y"}, 12},
      {{"x^3", "y^3+x*z^2", "z^3-x^2*y"}, 12},
  };
  for (const auto& c : cases) {
    const DynSystem f(PolyMap::parse(c.forms));
    const std::size_t nv = f.map().nvars();
    for (unsigned n = 1; n <= c.nmax; ++n) {
      const BasisFamily b = special_basis(f, n);
      const auto mons = monomials(nv, n);
      const auto index = monomial_index(mons);
      RatMatrix rows;
      for (const auto& el : b.elements) rows.push_back(el.expanded.coefficients(mons, index));
      L.expect(b.c() == mons.size() && rank(rows) == mons.size(),
               "rank at n=" + std::to_string(n) + " for " + c.forms[0]);
    }
  }
}

void c5_envelope(Ledger& L) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  const std::vector<unsigned> ns{4, 8, 16, 32};
  std::mt19937_64 rng(105);
  for (const Place& v : {Place::archimedean(), Place::prime(2)}) {
    std::vector<double> ratios;
    double prev = 1e300;
    for (unsigned n : ns) {
      const BasisFamily b = special_basis(f, n);
      const LogMag env = hadamard_envelope(f, n, julia_radius_log(f, v), v);
      for (int t = 0; t < 4; ++t) {
        std::vector<ProjPoint> lifts;
        for (unsigned i = 0; i <= n; ++i) lifts.push_back(into_julia(f, v, rational_lift(rng, 2)));
        const EvalDetLog d = eval_det_log(b, lifts, v);
        if (!is_minus_infinity(d.value))
          L.expect(std::get<LogMag>(d.value).value() <= env.value() + 1e-9,
                   "log|det| above envelope at " + v.to_string() + " n=" + std::to_string(n));
      }
      const double per = env.value() / (n * b.c());
      L.expect(per < prev, "envelope/(n c) not decreasing at " + v.to_string());
      prev = per;
      ratios.push_back(per * n / std::log(n));
    }
    const double cfit = *std::max_element(ratios.begin(), ratios.end());
    const double cmin = *std::min_element(ratios.begin(), ratios.end());
    L.expect(cfit / cmin - 1.0 <= 0.2, "C_fit spread " + fmt(cfit / cmin - 1.0) + " at " + v.to_string());
  }
}

void c6_trend(Ledger& L) {
  const DynSystem power(PolyMap::parse({"x^2", "y^2"}));
  for (int p : {2, 3, 7}) {
    const TrendTable t = transfin_trend(power, Place::prime(p), {2, 4, 8, 16});
    for (const auto& row : t.rows) L.expect(row.envelope_logd.is_zero(), "good-place envelope not exactly 0");
  }
  const TrendTable inf = transfin_trend(power, Place::archimedean(), {2, 4, 8, 16, 32});
  for (const auto& row : inf.rows) {
    const double bound = std::log(row.n + 1.0) / (2.0 * row.n);
    L.expect(row.witness_logd && std::fabs(row.witness_logd->value()) <= bound + 1e-12,
             "witness above (1/2n) log(n+1) at n=" + std::to_string(row.n));
  }
  // |V| over the cube roots of unity, by brute force and through the library
  const double pi = std::acos(-1.0);
  double v = 1.0;
  std::vector<std::complex<double>> w;
  std::vector<ProjPoint> lifts;
  for (int k = 0; k < 3; ++k) {
    w.push_back(std::polar(1.0, 2 * pi * k / 3));
    lifts.push_back(ProjPoint::numeric({w.back(), 1.0}));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) v *= std::abs(w[i] - w[j]);
  L.expect(std::fabs(v - std::pow(3.0, 1.5)) <= 1e-12, "brute-force |V| = " + fmt(v));
  const EvalDetLog d = eval_det_log(monomial_basis(1, 2), lifts, Place::archimedean());
  L.expect(std::fabs(std::get<LogMag>(d.value).value() - 1.5 * std::log(3.0)) <= 1e-12, "library |V|");
}

void c7_fekete(Ledger& L) {
  const DynSystem power(PolyMap::parse({"x^2", "y^2"}));
  for (unsigned n = 1; n <= 20; ++n) {
    const BasisFamily b = special_basis(power, n);
    const FeketeResult r = fekete_search(power, b, 20000, 7);
    const double want = std::log(n + 1.0) / (2.0 * n);
    const double gap = want - r.witness.value();
    L.expect(r.evaluations <= 20000, "budget exceeded");
    L.expect(gap <= (n <= 8 ? 1e-6 : 1e-3), "n=" + std::to_string(n) + " short by " + fmt(gap));
    if (n == 6 || n == 15) {
      const FeketeResult again = fekete_search(power, b, 20000, 7);
      L.expect(again.witness.value() == r.witness.value() && again.evaluations == r.evaluations, "not deterministic");
    }
  }
}

void c8_heights(Ledger& L) {
  const DynSystem power(PolyMap::parse({"x^2", "y^2"}));
  const DynSystem cheb(PolyMap::parse({"x^2-2*y^2", "y^2"}));
  const double h = canonical_height(power, ProjPoint::exact({2, 1}), 1e-13).value;
  L.expect(std::fabs(h - std::log(2.0)) <= 1e-12, "h([2:1]) = " + fmt(h));
  const std::vector<std::pair<const DynSystem*, std::vector<Rational>>> pre{
      {&power, {0, 1}}, {&power, {1, 0}}, {&power, {1, 1}}, {&power, {-1, 1}},
      {&cheb, {2, 1}},  {&cheb, {-2, 1}}, {&cheb, {0, 1}},  {&cheb, {1, 1}}, {&cheb, {-1, 1}}, {&cheb, {1, 0}}};
  for (const auto& [s, c] : pre) {
    const double v = canonical_height(*s, ProjPoint::exact(c), 1e-10).value;
    L.expect(std::fabs(v) <= 1e-9, "preperiodic point has height " + fmt(v));
  }
  std::mt19937_64 rng(108);
  const DynSystem half(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  for (int t = 0; t < 30; ++t) {
    const ProjPoint p = rational_lift(rng, 2);
    const Rational k = oracle::random_rational(rng, 60, 60, true);
    const HeightValue a = local_height_profile(half, p, 1e-10), b = local_height_profile(half, p.scaled(k), 1e-10);
    L.expect(a.total.padic_equal(b.total), "lift change moved a p-adic part");
    L.expect(std::fabs(a.total.arch() - b.total.arch()) <= a.total.arch_err() + b.total.arch_err(),
             "lift change moved the arch part");
  }
}

void c9_multiples(Ledger& L) {
  const EllipticCurve e(0, -2);
  const CurvePoint p = CurvePoint::affine(3, 5);
  const LattesSystem lattes(e, p);
  for (unsigned n = 1; n <= 10; ++n) {
    const std::size_t bound = 2 * n + (n + 1);
    const MultiplesResult m = multiples_search(lattes.system, translation_orbit(e, p, bound), n);
    L.expect(m.bound == bound && m.indices.size() == n + 1 && m.indices.back() <= bound, "n=" + std::to_string(n));
    L.expect(m.determinant != 0, "zero determinant at n=" + std::to_string(n));
  }
  bool rejected = false;
  try {
    const EllipticCurve t(0, 1);
    multiples_search(LattesSystem(t, CurvePoint::affine(2, 3)).system, translation_orbit(t, CurvePoint::affine(2, 3), 10), 3);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  L.expect(rejected, "torsion input accepted");
  // x(2Q) = f(x(Q)) on random points of two curves
  std::mt19937_64 rng(109);
  const EllipticCurve e17(0, 17);
  const std::vector<CurvePoint> gens17{CurvePoint::affine(-2, 3), CurvePoint::affine(2, 5)};
  for (int t = 0; t < 50; ++t) {
    const bool first = t % 2 == 0;
    const EllipticCurve& c = first ? e : e17;
    CurvePoint q = first ? c.mul(static_cast<long>(rng() % 25) - 12, p)
                         : c.add(c.mul(static_cast<long>(rng() % 9) - 4, gens17[0]),
                                 c.mul(static_cast<long>(rng() % 9) - 4, gens17[1]));
    if (q.infinity) q = first ? p : gens17[0];
    L.expect(c.contains(q), "sample not on curve");
    L.expect(apply(c.lattes_map(), x_coordinate(q)).projectively_equal(x_coordinate(c.dbl(q))), "group law mismatch");
  }
}

void c10_lehmer(Ledger& L) {
  const LattesSystem lattes(EllipticCurve(0, -2), CurvePoint::affine(3, 5));
  const LehmerScan s = lehmer_scan(lattes, {0, 1, 2}, 1e-9);
  unsigned per_depth[3] = {0, 0, 0};
  for (const auto& r : s.rows) {
    L.expect(std::ldexp(r.height, 2 * static_cast<int>(r.depth)) == s.base_height,
             "height scaling at depth " + std::to_string(r.depth));
    L.expect(r.lehmer_value > 0.0 && r.height > 0.0, "nonpositive row at depth " + std::to_string(r.depth));
    per_depth[r.depth] += r.degree * r.multiplicity;
  }
  L.expect(per_depth[0] == 1 && per_depth[1] == 4 && per_depth[2] == 16, "preimage counts");
  L.expect(s.min_lehmer_value > 0.0, "minimum Lehmer value not positive");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<void(Ledger&)> run;
  };
  const std::vector<Criterion> criteria{
      {"product formula ledger", 10, c1_product_formula},
      {"Macaulay resultants and scaling law", 60, c2_resultants},
      {"escape rates and functional equation", 0, c3_escape},
      {"basis machinery: sandwich and full rank", 300, c4_basis},
      {"Hadamard envelope and fitted constant", 0, c5_envelope},
      {"transfinite diameter trend", 0, c6_trend},
      {"Fekete search", 60, c7_fekete},
      {"canonical heights", 0, c8_heights},
      {"greedy multiples and group law", 0, c9_multiples},
      {"Lehmer scan", 300, c10_lehmer},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Ledger L;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(L);
    } catch (const std::exception& e) {
      L.fail(std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].limit_seconds > 0 && secs > criteria[i].limit_seconds)
      L.fail("took " + fmt(secs) + " s, limit " + fmt(criteria[i].limit_seconds) + " s");
    const bool pass = L.failures == 0;
    failed += !pass;
    std::printf("criterion %2zu  %s  %-42s %8.2f s%s%s\n", i + 1, pass ? "PASS" : "FAIL", criteria[i].name, secs,
                pass ? "" : "  ", L.notes.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
