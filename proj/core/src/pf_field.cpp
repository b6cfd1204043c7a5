#include "greenfield/pf_field.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <mutex>

#include "greenfield/errors.hpp"
#include "greenfield/factor.hpp"

namespace greenfield {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Error-free transformation: a + b = s + e exactly.
double two_sum_error(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

// ---------------------------------------------------------------- Place

Place Place::archimedean() { return Place(); }

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) throw DomainError("place requires a prime, got " + p.get_str());
  Place v;
  v.archimedean_ = false;
  v.p_ = p;
  return v;
}

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "oo" || text == "infinity") return archimedean();
  std::string_view digits = text;
  if (digits.starts_with("p=")) digits.remove_prefix(2);
  if (digits.empty()) throw ParseError("empty place");
  for (char c : digits)
    if (c < '0' || c > '9') throw ParseError("malformed place '" + std::string(text) + "'");
  return prime(Integer(std::string(digits), 10));
}

const Integer& Place::prime() const {
  if (archimedean_) throw DomainError("archimedean place has no prime");
  return p_;
}

Integer Place::residue_characteristic() const { return archimedean_ ? Integer(0) : p_; }

long Place::valuation(const Rational& x) const {
  if (archimedean_) throw DomainError("valuation at the archimedean place");
  return ord_p(x, p_);
}

std::string Place::to_string() const { return archimedean_ ? "inf" : "p=" + p_.get_str(); }

bool Place::operator==(const Place& other) const {
  return archimedean_ == other.archimedean_ && (archimedean_ || p_ == other.p_);
}

bool Place::operator<(const Place& other) const {
  if (archimedean_ != other.archimedean_) return archimedean_;
  return !archimedean_ && p_ < other.p_;
}

// ---------------------------------------------------------------- numerics

double ulp(double x) {
  x = std::fabs(x);
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

double log_abs(const Rational& x, int working_bits) {
  if (x == 0) throw DomainError("log of zero magnitude");
  if (abs(x) == 1) return 0.0;
  mpfr_t t;
  mpfr_init2(t, working_bits);
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
  mpfr_abs(t, t, MPFR_RNDN);
  mpfr_log(t, t, MPFR_RNDN);
  const double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

double log_prime_value(const Integer& p) {
  static std::mutex mutex;
  static std::map<Integer, double> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  const double v = log_abs(Rational(p));
  cache.emplace(p, v);
  return v;
}

// ---------------------------------------------------------------- LogMag

LogMag LogMag::archimedean(double value, double err) {
  if (!(err >= 0.0)) throw DomainError("negative archimedean error bound");
  LogMag m;
  m.arch_ = value;
  m.arch_err_ = err;
  return m;
}

LogMag LogMag::log_prime(const Integer& p, const Rational& coefficient) {
  LogMag m;
  m.add_padic(p, coefficient);
  return m;
}

Rational LogMag::padic_coefficient(const Integer& p) const {
  auto it = padic_.find(p);
  return it == padic_.end() ? Rational(0) : it->second;
}

void LogMag::add_padic(const Integer& p, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = padic_.try_emplace(p, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) padic_.erase(it);
  }
}

double LogMag::value() const {
  double sum = arch_;
  for (const auto& [p, q] : padic_) sum += q.get_d() * log_prime_value(p);
  return sum;
}

double LogMag::error_bound() const {
  double magnitude = std::fabs(arch_);
  for (const auto& [p, q] : padic_) magnitude += std::fabs(q.get_d() * log_prime_value(p));
  const double terms = static_cast<double>(padic_.size());
  const double rounding = padic_.empty() ? 0.0 : magnitude * (terms + 4.0) * kEps;
  return arch_err_ + rounding;
}

LogMag LogMag::operator+(const LogMag& other) const {
  LogMag out = *this;
  out += other;
  return out;
}

LogMag& LogMag::operator+=(const LogMag& other) {
  for (const auto& [p, q] : other.padic_) add_padic(p, q);
  const double s = arch_ + other.arch_;
  arch_err_ = arch_err_ + other.arch_err_ + std::fabs(two_sum_error(arch_, other.arch_, s));
  arch_ = s;
  return *this;
}

LogMag LogMag::operator-() const {
  LogMag out;
  for (const auto& [p, q] : padic_) out.padic_.emplace(p, -q);
  out.arch_ = -arch_;
  out.arch_err_ = arch_err_;
  return out;
}

LogMag LogMag::operator-(const LogMag& other) const { return *this + (-other); }

LogMag LogMag::scaled(const Rational& factor) const {
  LogMag out;
  if (factor == 0) return out;
  for (const auto& [p, q] : padic_) out.padic_.emplace(p, q * factor);
  const double f = factor.get_d();
  const double prod = arch_ * f;
  const double prod_err = std::fma(arch_, f, -prod);
  const double f_err = std::fabs(Rational(Rational(f) - factor).get_d());
  out.arch_ = prod;
  out.arch_err_ = std::fabs(factor.get_d()) * arch_err_ * (1 + 2 * kEps) + std::fabs(arch_) * f_err +
                  std::fabs(prod_err);
  return out;
}

// ---------------------------------------------------------------- operations

LogMag abs_log(const Place& place, const Rational& x, int working_bits) {
  if (x == 0) throw DomainError("log of zero magnitude");
  if (place.is_archimedean()) {
    const double v = log_abs(x, working_bits);
    return LogMag::archimedean(v, v == 0.0 ? 0.0 : ulp(v));
  }
  const long ord = place.valuation(x);
  return LogMag::log_prime(place.prime(), Rational(-ord));
}

std::vector<Place> support(const Rational& x) {
  if (x == 0) throw DomainError("support of zero");
  std::vector<Place> out;
  if (abs(x) != 1) out.push_back(Place::archimedean());
  for (const auto& p : prime_support(x)) out.push_back(Place::prime(p));
  return out;
}

std::map<Integer, long> rational_log_expansion(const Rational& x) {
  if (x == 0) throw DomainError("log of zero magnitude");
  std::map<Integer, long> out;
  for (const auto& pp : factor(x.get_num())) out[pp.prime] += static_cast<long>(pp.exponent);
  for (const auto& pp : factor(x.get_den())) out[pp.prime] -= static_cast<long>(pp.exponent);
  return out;
}

LogMag product_formula_sum(const Rational& x) {
  LogMag total = abs_log(Place::archimedean(), x);
  for (const auto& v : support(x))
    if (!v.is_archimedean()) total += abs_log(v, x);
  return total;
}

}  // namespace greenfield
