#include "greenfield/heights.hpp"

#include <set>

#include "greenfield/errors.hpp"
#include "greenfield/parallel.hpp"

namespace greenfield {

namespace {

std::set<Place> coordinate_places(const ProjPoint& point) {
  if (!point.is_exact()) throw PreconditionError("heights need an exact rational lift");
  std::set<Place> out{Place::archimedean()};
  for (const auto& c : point.exact_coords())
    if (c != 0)
      for (const auto& v : support(c)) out.insert(v);
  return out;
}

// point = s * primitive with primitive integral, coprime, first nonzero entry positive.
std::pair<ProjPoint, Rational> primitive_lift(const ProjPoint& point) {
  if (!point.is_exact()) throw PreconditionError("heights need an exact rational lift");
  Integer den = 1, num = 0;
  const Rational* first = nullptr;
  for (const auto& c : point.exact_coords()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    if (!first && c != 0) first = &c;
  }
  if (!first) throw DomainError("zero lift");
  Rational s(num, den);
  s.canonicalize();
  if (*first < 0) s = -s;
  return {point.scaled(1 / s), s};
}

HeightValue finish(std::map<Place, LogMag> profile, double error) {
  HeightValue h;
  for (const auto& [v, l] : profile) h.total += l;
  h.local_profile = std::move(profile);
  h.value = h.total.value();
  h.error = error + h.total.error_bound();
  return h;
}

}  // namespace

HeightValue weil_height(const ProjPoint& point) {
  std::map<Place, LogMag> profile;
  for (const auto& v : coordinate_places(point)) profile[v] = log_sup_norm(v, point);
  return finish(std::move(profile), 0.0);
}

HeightValue local_height_profile(const DynSystem& system, const ProjPoint& point, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (point.size() != system.map().nvars()) throw PreconditionError("point dimension does not match the system");
  // Rates come from the primitive integral lift, so the total is the same
  // binary64 number for every lift; the given lift only shifts each local
  // term by log|s|_v, and those shifts sum to zero.
  const auto [primitive, s] = primitive_lift(point);
  std::set<Place> places = coordinate_places(primitive);
  for (const auto& p : system.candidate_primes()) places.insert(Place::prime(p));
  const std::vector<Place> order(places.begin(), places.end());

  std::size_t inexact = 0;
  for (const auto& v : order)
    if (v.is_archimedean() || system.reduction(v).type == Reduction::Bad) ++inexact;
  const double each = tol / static_cast<double>(inexact);

  std::vector<EscapeRate> rates(order.size());
  parallel_for(order.size(), [&](std::size_t i) { rates[i] = escape_rate(system, order[i], primitive, each); });

  HeightValue h;
  double error = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    h.total += rates[i].value;
    error += rates[i].error;
    h.local_profile[order[i]] = rates[i].value + abs_log(order[i], s);
  }
  // Places where only the scale is non-unit; the primitive lift has rate 0 there.
  for (const auto& v : support(s))
    if (!h.local_profile.count(v)) h.local_profile[v] = abs_log(v, s);
  h.value = h.total.value();
  h.error = error + h.total.error_bound();
  return h;
}

HeightValue canonical_height(const DynSystem& system, const ProjPoint& point, double tol) {
  return local_height_profile(system, point, tol);
}

}  // namespace greenfield
