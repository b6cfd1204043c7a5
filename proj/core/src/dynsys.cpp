#include "greenfield/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "greenfield/errors.hpp"
#include "greenfield/factor.hpp"

namespace greenfield {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Rational coefficient_l1(const HomoForm& f) {
  Rational s = 0;
  for (const auto& [e, c] : f.terms()) s += abs(c);
  return s;
}

// Smallest ord_p over the coefficients of a nonzero form.
long min_ord(const HomoForm& f, const Integer& p) {
  long best = std::numeric_limits<long>::max();
  for (const auto& [e, c] : f.terms()) best = std::min(best, ord_p(c, p));
  return best;
}

long min_ord(const PolyMap& f, const Integer& p) {
  long best = std::numeric_limits<long>::max();
  for (const auto& g : f.forms())
    if (!g.is_zero()) best = std::min(best, min_ord(g, p));
  return best;
}

// c mod p^k for c with ord_p(c) >= 0.
Integer reduce_mod(const Rational& c, const Integer& modulus) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), c.get_den_mpz_t(), modulus.get_mpz_t()) == 0)
    throw InternalError("denominator not invertible modulo p^k");
  Integer r = c.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

// ord_p of an integer known modulo p^prec; returns prec when it is zero.
long truncated_ord(const Integer& x, const Integer& p, long prec) {
  if (x == 0) return prec;
  return std::min(prec, ord_p(x, p));
}

double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

EscapeRate archimedean_escape(const DynSystem& system, const ProjPoint& lift, double tol) {
  const PolyMap& f = system.map();
  const double d = static_cast<double>(system.degree());
  const double bound = system.growth(Place::archimedean()).bound();

  std::vector<Complex> q;
  LogMag lognorm;
  if (lift.is_exact()) {
    const auto& x = lift.exact_coords();
    Rational top = 0;
    for (const auto& c : x) top = std::max(top, abs(c));
    lognorm = abs_log(Place::archimedean(), top);
    for (const auto& c : x) q.emplace_back(Rational(c / top).get_d(), 0.0);
  } else {
    const auto& z = lift.numeric_coords();
    double top = 0.0;
    for (const auto& c : z) top = std::max(top, std::abs(c));
    const double l = std::log(top);
    lognorm = LogMag::archimedean(l, 2 * ulp(l));
    for (const auto& c : z) q.push_back(c / top);
  }

  std::size_t steps = 0;
  double tail = bound / (d - 1.0);
  while (tail > tol / 2) {
    tail /= d;
    ++steps;
  }
  tail = round_up(tail);

  double sum = 0.0, comp = 0.0, rounding = lognorm.arch_err();
  double weight = 1.0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<Complex> y(q.size());
    double top = 0.0, eval_err = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      y[i] = f[i].evaluate(std::span<const Complex>(q));
      eval_err = std::max(eval_err, f[i].evaluate_error(std::span<const Complex>(q)));
      top = std::max(top, std::abs(y[i]));
    }
    if (!(top > 0.0) || !std::isfinite(top)) throw InternalError("orbit left the binary64 range");
    weight /= d;
    const double term = weight * std::log(top);
    const double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    rounding += weight * (eval_err / top + 4 * kEps) + ulp(term);
    for (auto& v : y) v /= top;
    q = std::move(y);
  }
  const double value = lognorm.arch() + (sum + comp);
  rounding += ulp(value) + kEps * std::fabs(sum);
  EscapeRate out;
  out.value = LogMag::archimedean(value, rounding);
  out.error = rounding + tail;
  out.iterations = steps;
  return out;
}

EscapeRate padic_escape(const DynSystem& system, const Place& place, const ProjPoint& lift, double tol) {
  if (!lift.is_exact()) throw PreconditionError("nonarchimedean escape rate needs an exact lift");
  const Integer& p = place.prime();
  const unsigned d = system.degree();
  const PolyMap& f = system.map();
  const ReductionInfo info = system.reduction(place);
  const LogMag lognorm = log_sup_norm(place, lift);
  const Rational coeff_shift(-info.min_coeff_ord, static_cast<long>(d - 1));  // times log p
  EscapeRate out;
  if (info.type == Reduction::Good) {
    out.value = lognorm + LogMag::log_prime(p, coeff_shift);
    return out;
  }
  // Primitive integral F' = p^-m F and primitive integral lift P'.
  const long m = info.min_coeff_ord;
  const long c_lo_units = -system.growth(place).c_lo.padic_coefficient(p).get_num().get_si();
  // c_lo(F) = -min ord(eta) log p; for F' the cofactors pick up p^m.
  const long w_max = std::max(0L, -c_lo_units - m);
  const double logp = log_prime_value(p);

  std::size_t steps = 0;
  double tail = static_cast<double>(w_max) * logp / (static_cast<double>(d) - 1.0);
  while (tail > tol) {
    tail /= d;
    ++steps;
  }
  const long prec0 = static_cast<long>(steps + 1) * w_max + 1;
  Integer modulus = ipow(p, static_cast<unsigned long>(prec0));
  long prec = prec0;

  const auto& x = lift.exact_coords();
  long a = std::numeric_limits<long>::max();
  for (const auto& c : x)
    if (c != 0) a = std::min(a, ord_p(c, p));
  const Rational pa = pow(Rational(p), -a);
  std::vector<Integer> q;
  for (const auto& c : x) q.push_back(c == 0 ? Integer(0) : reduce_mod(c * pa, modulus));

  // Coefficients of F' modulo p^prec0.
  const Rational pm = pow(Rational(p), -m);
  std::vector<std::vector<std::pair<Exponent, Integer>>> coeffs(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i)
    for (const auto& [e, c] : f[i].terms()) coeffs[i].emplace_back(e, reduce_mod(c * pm, modulus));

  Rational s = 0;
  Integer dk = 1;
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<Integer> y(q.size(), Integer(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (const auto& [e, c] : coeffs[i]) {
        Integer t = c;
        for (std::size_t v = 0; v < q.size(); ++v)
          if (e[v]) {
            Integer pw;
            mpz_powm_ui(pw.get_mpz_t(), q[v].get_mpz_t(), e[v], modulus.get_mpz_t());
            t = t * pw % modulus;
          }
        y[i] += t;
      }
      mpz_mod(y[i].get_mpz_t(), y[i].get_mpz_t(), modulus.get_mpz_t());
    }
    long w = prec;
    for (const auto& v : y) w = std::min(w, truncated_ord(v, p, prec));
    if (w > w_max || w >= prec) throw InternalError("p-adic orbit lost precision");
    const Integer pw = ipow(p, static_cast<unsigned long>(w));
    prec -= w;
    modulus = ipow(p, static_cast<unsigned long>(prec));
    for (auto& v : y) {
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pw.get_mpz_t());
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
    }
    dk *= d;
    s += Rational(w) / Rational(dk);
    q = std::move(y);
    for (auto& row : coeffs)
      for (auto& [e, c] : row) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  }
  // H_{F'}(P') lies in [-(s + T) log p, -s log p] with T = w_max / (d^K (d-1)).
  const Rational half_tail = Rational(w_max) / Rational(dk * (d - 1) * 2);
  out.value = LogMag::log_prime(p, Rational(-a) - s - half_tail + coeff_shift);
  out.error = round_up(half_tail.get_d() * logp * (1 + 4 * kEps));
  out.iterations = steps;
  return out;
}

}  // namespace

std::string to_string(Reduction r) { return r == Reduction::Good ? "good" : "bad"; }

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Inside:
      return "inside";
    case Membership::Outside:
      return "outside";
    default:
      return "undetermined";
  }
}

double GrowthConstants::bound() const {
  const double lo = std::fabs(c_lo.value()) + c_lo.error_bound();
  const double hi = std::fabs(c_hi.value()) + c_hi.error_bound();
  return round_up(std::max(lo, hi) * (1 + 4 * kEps));
}

InvarianceCheck check_invariance(const PolyMap& f, const HomoForm& g) {
  if (g.nvars() != f.nvars()) throw PreconditionError("hypersurface lives in a different projective space");
  if (g.is_zero() || g.degree() == 0) throw PreconditionError("hypersurface form must be nonconstant");
  const HomoForm gf = substitute(g, f.forms());
  Division div = divide(gf, g);
  InvarianceCheck out;
  out.invariant = div.remainder.is_zero();
  out.witness = out.invariant ? div.quotient : div.remainder;
  return out;
}

DynSystem::DynSystem(PolyMap map, std::optional<HomoForm> hypersurface)
    : map_(std::move(map)), hypersurface_(std::move(hypersurface)), cache_(std::make_shared<Cache>()) {
  if (map_.degree() < 2) throw PreconditionError("a dynamical system needs degree at least 2");
  resultant_ = macaulay_resultant(map_);
  if (resultant_ == 0) throw DomainError("not a morphism: resultant vanishes");
  if (hypersurface_) {
    const auto check = check_invariance(map_, *hypersurface_);
    if (!check.invariant) throw PreconditionError("hypersurface is not invariant: remainder " + check.witness.to_string());
  }
  std::set<Integer> primes;
  for (const auto& g : map_.forms())
    for (const auto& [e, c] : g.terms())
      for (auto& p : prime_support(c)) primes.insert(p);
  for (auto& p : prime_support(resultant_)) primes.insert(p);
  candidate_primes_.assign(primes.begin(), primes.end());
}

unsigned DynSystem::macaulay_degree() const {
  return static_cast<unsigned>(map_.nvars()) * (map_.degree() - 1) + 1;
}

const PolyMap& DynSystem::iterate(unsigned k) const {
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->iterates.find(k);
  if (it != cache_->iterates.end()) return it->second;
  return cache_->iterates.emplace(k, greenfield::iterate(map_, k)).first->second;
}

const std::vector<std::vector<HomoForm>>& DynSystem::lower_certificates() const {
  std::call_once(cache_->certificates_once, [this] {
    const std::size_t n = map_.nvars();
    const unsigned e = macaulay_degree();
    std::vector<HomoForm> targets;
    for (std::size_t j = 0; j < n; ++j) {
      Exponent x(n, 0);
      x[j] = e;
      targets.push_back(HomoForm::monomial(x));
    }
    auto sols = solve_certificates(map_, targets);
    for (auto& s : sols) {
      if (!s) throw InternalError("x_j^e outside the ideal although Res != 0");
      cache_->certificates.push_back(std::move(*s));
    }
  });
  return cache_->certificates;
}

GrowthConstants DynSystem::growth(const Place& place) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->growth.find(place);
    if (it != cache_->growth.end()) return it->second;
  }
  const auto& eta = lower_certificates();
  GrowthConstants g;
  if (place.is_archimedean()) {
    Rational hi = 0;
    for (const auto& f : map_.forms()) hi = std::max(hi, coefficient_l1(f));
    Rational lo = 0;
    for (const auto& row : eta) {
      Rational s = 0;
      for (const auto& h : row) s += coefficient_l1(h);
      lo = std::max(lo, s);
    }
    g.c_hi = abs_log(place, hi);
    g.c_lo = abs_log(place, lo);
  } else {
    g.c_hi = coeff_sup_log(map_, place);
    long lowest = std::numeric_limits<long>::max();
    for (const auto& row : eta)
      for (const auto& h : row)
        if (!h.is_zero()) lowest = std::min(lowest, min_ord(h, place.prime()));
    g.c_lo = LogMag::log_prime(place.prime(), Rational(-lowest));
  }
  std::lock_guard lock(cache_->mutex);
  cache_->growth.emplace(place, g);
  return g;
}

ReductionInfo DynSystem::reduction(const Place& place) const {
  ReductionInfo info;
  if (place.is_archimedean()) return info;
  const Integer& p = place.prime();
  const Integer weight = Integer(map_.nvars()) * ipow(Integer(map_.degree()), map_.dimension());
  info.min_coeff_ord = min_ord(map_, p);
  info.ord_resultant = ord_p(resultant_, p);
  info.ord_primitive_resultant = info.ord_resultant - weight.get_si() * info.min_coeff_ord;
  info.type = info.ord_primitive_resultant == 0 ? Reduction::Good : Reduction::Bad;
  info.needs_extension = info.ord_resultant % weight.get_si() != 0;
  return info;
}

std::vector<Place> DynSystem::bad_places() const {
  std::vector<Place> out{Place::archimedean()};
  for (const auto& p : candidate_primes_) {
    const Place v = Place::prime(p);
    if (reduction(v).type == Reduction::Bad) out.push_back(v);
  }
  return out;
}

Reduction reduction_type(const DynSystem& system, const Place& place) { return system.reduction(place).type; }

InvarianceCheck check_invariance(const DynSystem& system) {
  if (!system.hypersurface()) throw PreconditionError("system has no hypersurface");
  return check_invariance(system.map(), *system.hypersurface());
}

LogMag log_sup_norm(const Place& place, const ProjPoint& lift) {
  if (!lift.is_exact()) {
    if (!place.is_archimedean()) throw PreconditionError("numeric lift at a nonarchimedean place");
    double top = 0.0;
    for (const auto& z : lift.numeric_coords()) top = std::max(top, std::abs(z));
    const double l = std::log(top);
    return LogMag::archimedean(l, 2 * ulp(l));
  }
  const auto& x = lift.exact_coords();
  if (place.is_archimedean()) {
    Rational top = 0;
    for (const auto& c : x) top = std::max(top, abs(c));
    return abs_log(place, top);
  }
  long lowest = std::numeric_limits<long>::max();
  for (const auto& c : x)
    if (c != 0) lowest = std::min(lowest, place.valuation(c));
  return LogMag::log_prime(place.prime(), Rational(-lowest));
}

EscapeRate escape_rate(const DynSystem& system, const Place& place, const ProjPoint& lift, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (lift.size() != system.map().nvars()) throw PreconditionError("lift dimension does not match the system");
  return place.is_archimedean() ? archimedean_escape(system, lift, tol) : padic_escape(system, place, lift, tol);
}

Membership julia_membership(const DynSystem& system, const Place& place, const ProjPoint& lift, double tol) {
  if (!place.is_archimedean() && system.reduction(place).type == Reduction::Good) {
    const EscapeRate r = escape_rate(system, place, lift, tol);
    return r.value.padic_coefficient(place.prime()) <= 0 ? Membership::Inside : Membership::Outside;
  }
  const EscapeRate r = escape_rate(system, place, lift, tol / 4);
  const double h = r.approx();
  if (h > tol) return Membership::Outside;
  if (h < -tol) return Membership::Inside;
  return Membership::Undetermined;
}

}  // namespace greenfield
