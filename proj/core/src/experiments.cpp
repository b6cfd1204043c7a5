#include "greenfield/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "greenfield/errors.hpp"
#include "greenfield/heights.hpp"
#include "greenfield/linalg.hpp"
#include "greenfield/parallel.hpp"

namespace greenfield {

namespace {

Rational power_of(const Integer& base, long e) {
  Rational r = ipow(base, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1 / r) : r;
}

// Rescales an exact lift so that H_v <= 0, keeping it as large as allowed.
ProjPoint scale_into_julia(const DynSystem& system, const Place& place, const ProjPoint& lift) {
  const EscapeRate h = escape_rate(system, place, lift, 1e-12);
  if (!place.is_archimedean()) {
    const Integer& p = place.prime();
    long s;
    if (h.error == 0.0) {
      const Rational q = h.value.padic_coefficient(p);
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      s = c.get_si();
    } else {
      s = static_cast<long>(std::ceil((h.approx() + h.error) / log_prime_value(p)));
    }
    return lift.scaled(power_of(p, s));
  }
  const long s = static_cast<long>(std::ceil((h.approx() + h.error + 1e-12) / std::numbers::ln2));
  return lift.scaled(power_of(Integer(2), -s));
}

// c exact points in general position for the degree-n evaluation.
std::vector<ProjPoint> exact_tuple(const DynSystem& system, const BasisFamily& basis, std::uint64_t seed) {
  const std::size_t nv = system.map().nvars();
  const std::size_t c = basis.c();
  std::vector<ProjPoint> pts;
  if (nv == 2) {
    for (std::size_t k = 0; k < c; ++k) pts.push_back(ProjPoint::exact({Rational(static_cast<long>(k)), 1}));
    return pts;
  }
  std::mt19937_64 rng(seed);
  const long span = static_cast<long>(c);
  for (std::size_t k = 0; k < c; ++k) {
    std::vector<Rational> x(nv);
    for (std::size_t i = 0; i + 1 < nv; ++i) x[i] = static_cast<long>(rng() % (2 * span + 1)) - span;
    x[nv - 1] = 1;
    pts.push_back(ProjPoint::exact(std::move(x)));
  }
  return pts;
}

std::optional<LogMag> better(std::optional<LogMag> a, const ExtLogMag& b) {
  if (is_minus_infinity(b)) return a;
  const LogMag& v = std::get<LogMag>(b);
  if (!a || v.value() > a->value()) return v;
  return a;
}

AdelicRow adelic_row(const DynSystem& system, unsigned n, std::size_t budget, std::uint64_t seed) {
  AdelicRow row;
  row.n = n;
  const BasisFamily basis = special_basis(system, n);
  row.c = basis.c();
  const Rational norm(1, static_cast<unsigned long>(n) * row.c);

  std::vector<Place> places{Place::archimedean()};
  for (const auto& p : system.candidate_primes()) places.push_back(Place::prime(p));

  bool all_witnessed = true;
  double wsum = 0.0;
  for (const auto& v : places) {
    PlaceBound b;
    b.place = v;
    b.good = !v.is_archimedean() && system.reduction(v).type == Reduction::Good;
    b.r_log = julia_radius_log(system, v);
    b.envelope = hadamard_envelope(system, n, b.r_log, v);
    b.envelope_logd = b.envelope.scaled(norm);
    if (!system.hypersurface()) {
      std::vector<ProjPoint> lifts;
      for (const auto& p : exact_tuple(system, basis, seed)) lifts.push_back(scale_into_julia(system, v, p));
      b.witness_logd = better(std::nullopt, dbn_witness(system, basis, lifts, v));
      if (b.witness_logd) b.witness_source = "exact";
      if (v.is_archimedean() && system.dimension() == 1) {
        const FeketeResult f = fekete_search(system, basis, budget, seed);
        if (!b.witness_logd || f.witness.value() > b.witness_logd->value()) {
          b.witness_logd = f.witness;
          b.witness_source = "fekete";
        }
      }
    }
    row.sum_envelope_logd += b.envelope_logd.value();
    if (b.witness_logd)
      wsum += b.witness_logd->value();
    else
      all_witnessed = false;
    row.places.push_back(std::move(b));
  }
  if (all_witnessed) row.sum_witness_logd = wsum;
  return row;
}

}  // namespace

AdelicReport adelic_report(const DynSystem& system, const std::vector<unsigned>& n_list, std::size_t budget,
                           std::uint64_t seed) {
  AdelicReport report;
  for (unsigned n : n_list) {
    try {
      report.rows.push_back(adelic_row(system, n, budget, seed));
    } catch (const std::exception& e) {
      AdelicRow row;
      row.n = n;
      row.error = e.what();
      report.rows.push_back(std::move(row));
    }
  }
  double lo = 0.0, hi = 0.0;
  bool any = false;
  const AdelicRow* prev = nullptr;
  for (const auto& row : report.rows) {
    if (!row.error.empty() || row.n < 2) continue;
    const double k = row.sum_envelope_logd * row.n / std::log(static_cast<double>(row.n));
    lo = any ? std::min(lo, k) : k;
    hi = any ? std::max(hi, k) : k;
    any = true;
    if (prev && prev->n < row.n && !(row.sum_envelope_logd < prev->sum_envelope_logd)) report.decreasing = false;
    prev = &row;
  }
  report.c_fit = hi;
  report.c_spread = any && lo > 0.0 ? hi / lo - 1.0 : 0.0;
  for (auto& row : report.rows)
    if (row.error.empty() && row.n >= 2) row.reference = report.c_fit * std::log(static_cast<double>(row.n)) / row.n;
  return report;
}

TrendTable transfin_trend(const DynSystem& system, const Place& place, const std::vector<unsigned>& n_list) {
  if (system.dimension() != 1 || system.hypersurface())
    throw PreconditionError("the trend driver works on P^1 systems");
  const unsigned long weight = system.map().nvars() * ipow(Integer(system.degree()), system.dimension()).get_ui();
  TrendTable t;
  t.place = place;
  const Rational& res = system.resultant();
  if (place.is_archimedean()) {
    // |Res| = r^weight with r rational, then lambda = 1/r.
    Integer num = abs(Integer(res.get_num())), den = res.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), weight) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), weight))
      throw PreconditionError("no rational rescaling gives |Res|_inf = 1");
    t.lambda = Rational(rd, rn);
  } else {
    const ReductionInfo info = system.reduction(place);
    if (info.type != Reduction::Good) throw PreconditionError("bad reduction at " + place.to_string());
    t.lambda = power_of(place.prime(), -info.min_coeff_ord);
  }
  const DynSystem scaled(system.map().scaled(t.lambda), system.hypersurface());

  for (unsigned n : n_list) {
    TrendRow row;
    row.n = n;
    const BasisFamily basis = special_basis(scaled, n);
    row.c = basis.c();
    const Rational norm(1, static_cast<unsigned long>(n) * row.c);
    if (n >= 2) row.envelope_logd = hadamard_envelope(scaled, n, place).scaled(norm);
    std::vector<ProjPoint> lifts;
    if (place.is_archimedean()) {
      for (std::size_t k = 0; k < row.c; ++k) {
        const Complex z = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(row.c));
        const double h =
            escape_rate(scaled, place, ProjPoint::numeric({z, Complex(1.0, 0.0)}), 1e-13).approx();
        const double s = std::exp(-h);
        lifts.push_back(ProjPoint::numeric({z * s, Complex(s, 0.0)}));
      }
    } else {
      for (std::size_t k = 0; k < row.c; ++k)
        lifts.push_back(scale_into_julia(scaled, place, ProjPoint::exact({Rational(static_cast<long>(k)), 1})));
    }
    const ExtLogMag w = dbn_witness(scaled, basis, lifts, place);
    if (!is_minus_infinity(w)) row.witness_logd = std::get<LogMag>(w);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<ProjPoint> translation_orbit(const EllipticCurve& e, const CurvePoint& p, std::size_t count) {
  if (!e.contains(p)) throw PreconditionError("point is not on the curve");
  std::vector<ProjPoint> out;
  CurvePoint q = p;
  for (std::size_t k = 1; k <= count; ++k) {
    out.push_back(x_coordinate(q));
    q = e.add(q, p);
  }
  return out;
}

MultiplesResult multiples_search(const DynSystem& system, const std::vector<ProjPoint>& orbit, unsigned n) {
  MultiplesResult out;
  const BasisFamily basis = special_basis(system, n);
  out.c = basis.c();
  const std::size_t g = system.dimension() - (system.hypersurface() ? 1 : 0);
  out.bound = 2 * ipow(Integer(n), g).get_ui() + out.c;
  if (orbit.size() < out.bound)
    throw PreconditionError("orbit has " + std::to_string(orbit.size()) + " points, the bound needs " +
                            std::to_string(out.bound));
  for (std::size_t i = 0; i < out.bound; ++i) {
    if (!orbit[i].is_exact()) throw PreconditionError("orbit points must be exact");
    for (std::size_t j = 0; j < i; ++j)
      if (orbit[i].projectively_equal(orbit[j]))
        throw PreconditionError("orbit repeats: entries " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                " coincide (torsion point)");
  }
  const auto mons = monomials(system.map().nvars(), n);
  const auto index = monomial_index(mons);
  IncrementalRank rank(out.c);
  RatMatrix chosen;
  for (std::size_t k = 0; k < out.bound && rank.rank() < out.c; ++k) {
    std::vector<Rational> row;
    for (const auto& el : basis.elements) row.push_back(el.expanded.evaluate(std::span<const Rational>(orbit[k].exact_coords())));
    if (rank.add(row)) {
      out.indices.push_back(k + 1);
      chosen.push_back(std::move(row));
    }
  }
  if (rank.rank() < out.c)
    throw PreconditionError("rank " + std::to_string(rank.rank()) + " of " + std::to_string(out.c) +
                            " within the bound " + std::to_string(out.bound));
  out.determinant = determinant(chosen);
  if (out.determinant == 0) throw InternalError("independent rows with a zero determinant");
  return out;
}

namespace {

// Integer polynomial with the roots X of A(X,1) u_den - B(X,1) u_num.
UPoly preimage_polynomial(const PolyMap& f, const Rational& x) {
  const unsigned D = f.degree();
  std::vector<Rational> c(D + 1);
  for (unsigned i = 0; i <= D; ++i) {
    const Exponent e{i, D - i};
    c[i] = f[0].coefficient(e) * Rational(x.get_den()) - f[1].coefficient(e) * Rational(x.get_num());
  }
  Integer l = 1;
  for (const auto& v : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> z;
  for (const auto& v : c) z.push_back(Integer(v * l));
  return UPoly(std::move(z));
}

double lehmer_shape(double h, unsigned D) {
  const double ld = std::log(static_cast<double>(std::max(D, 2u)));
  return h * std::pow(static_cast<double>(D), 5) * ld * ld;
}

}  // namespace

LehmerScan lehmer_scan(const LattesSystem& lattes, const std::vector<unsigned>& depths, double tol) {
  if (lattes.curve.torsion_order(lattes.base)) throw PreconditionError("base point is torsion");
  for (unsigned k : depths)
    if (k > 3) throw PreconditionError("preimage depth is capped at 3");
  LehmerScan scan;
  const HeightValue h0 = canonical_height(lattes.system, x_coordinate(lattes.base), tol);
  scan.base_height = h0.value;
  scan.base_error = h0.error;
  if (!(h0.value - h0.error > tol)) throw PreconditionError("canonical height of x(P) is not certified positive");

  std::vector<std::vector<LehmerRow>> per(depths.size());
  parallel_for(depths.size(), [&](std::size_t i) {
    const unsigned k = depths[i];
    const double h = std::ldexp(scan.base_height, -2 * static_cast<int>(k));
    if (k == 0) {
      const Rational& x = lattes.base.x;
      const UPoly lin({Integer(-x.get_num()), Integer(x.get_den())});
      per[i].push_back({0, lin.to_string("X"), 1, 1, h, lehmer_shape(h, 1)});
      return;
    }
    const PolyMap& fk = lattes.system.iterate(k);
    const UPoly g = preimage_polynomial(fk, lattes.base.x);
    const UFactorization fac = factor_over_q(g);
    for (const auto& f : fac.factors) {
      const unsigned D = static_cast<unsigned>(f.poly.degree());
      per[i].push_back({k, f.poly.to_string("X"), D, f.multiplicity, h, lehmer_shape(h, D)});
    }
    const long deficit = static_cast<long>(fk.degree()) - g.degree();
    if (deficit > 0) per[i].push_back({k, "[1:0]", 1, static_cast<unsigned>(deficit), h, lehmer_shape(h, 1)});
  });
  bool first = true;
  for (auto& rows : per)
    for (auto& r : rows) {
      scan.min_lehmer_value = first ? r.lehmer_value : std::min(scan.min_lehmer_value, r.lehmer_value);
      first = false;
      scan.rows.push_back(std::move(r));
    }
  return scan;
}

}  // namespace greenfield
