#pragma once

// Places of the rational field and exact ledgers of log-absolute-values.
//
// The normalized absolute values are |x|_p = p^(-ord_p x) and the usual
// |x|_inf. A LogMag keeps every p-adic contribution symbolically as a
// rational multiple of log p, and the archimedean contribution as a binary64
// value with a tracked error bound, so adelic sums cancel exactly on the
// p-adic side.

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "greenfield/rational.hpp"

namespace greenfield {

class Place {
 public:
  static Place archimedean();
  // Throws DomainError unless p is prime.
  static Place prime(const Integer& p);
  // "inf" or "p=<prime>"; a bare prime is accepted too.
  static Place parse(std::string_view text);

  bool is_archimedean() const { return archimedean_; }
  // Throws DomainError at the archimedean place.
  const Integer& prime() const;
  // 0 at the archimedean place.
  Integer residue_characteristic() const;
  // ord_p(x); DomainError at the archimedean place or for x == 0.
  long valuation(const Rational& x) const;

  std::string to_string() const;

  // The archimedean place sorts first, then primes ascending.
  bool operator==(const Place& other) const;
  bool operator<(const Place& other) const;

 private:
  Place() = default;
  bool archimedean_ = true;
  Integer p_ = 0;
};

class LogMag {
 public:
  LogMag() = default;

  static LogMag archimedean(double value, double err = 0.0);
  // coefficient * log p, exact.
  static LogMag log_prime(const Integer& p, const Rational& coefficient);

  const std::map<Integer, Rational>& padic() const { return padic_; }
  Rational padic_coefficient(const Integer& p) const;
  double arch() const { return arch_; }
  double arch_err() const { return arch_err_; }

  bool is_exact() const { return arch_err_ == 0.0; }
  bool is_zero() const { return padic_.empty() && arch_ == 0.0 && arch_err_ == 0.0; }

  // arch + sum q_p log p evaluated in binary64.
  double value() const;
  // arch_err plus a bound on the rounding of value().
  double error_bound() const;

  LogMag operator+(const LogMag& other) const;
  LogMag operator-(const LogMag& other) const;
  LogMag operator-() const;
  LogMag& operator+=(const LogMag& other);
  LogMag scaled(const Rational& factor) const;

  // Symbolic parts agree exactly; arch parts agree within the combined error.
  bool padic_equal(const LogMag& other) const { return padic_ == other.padic_; }

 private:
  void add_padic(const Integer& p, const Rational& q);

  std::map<Integer, Rational> padic_;
  double arch_ = 0.0;
  double arch_err_ = 0.0;
};

// Stand-in for log(0) = -infinity; never encoded as a floating infinity.
struct MinusInfinity {
  bool operator==(const MinusInfinity&) const = default;
};
using ExtLogMag = std::variant<LogMag, MinusInfinity>;

inline bool is_minus_infinity(const ExtLogMag& v) { return std::holds_alternative<MinusInfinity>(v); }

// log of |x|, correctly rounded to binary64 (MPFR with `working_bits` bits).
double log_abs(const Rational& x, int working_bits = 128);
// log p for a prime, cached.
double log_prime_value(const Integer& p);
// One unit in the last place of |x|.
double ulp(double x);

// log |x|_v. DomainError for x == 0.
LogMag abs_log(const Place& place, const Rational& x, int working_bits = 128);

// Places where |x|_v != 1, in place order.
std::vector<Place> support(const Rational& x);

// ord_p(x) for every prime p in the support: log|x|_inf = sum ord_p(x) log p.
std::map<Integer, long> rational_log_expansion(const Rational& x);

// Sum over support(x) and the archimedean place of abs_log(v, x).
LogMag product_formula_sum(const Rational& x);

}  // namespace greenfield
