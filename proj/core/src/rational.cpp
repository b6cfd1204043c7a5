#include "greenfield/rational.hpp"

#include <cctype>

#include "greenfield/errors.hpp"

namespace greenfield {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  std::string_view num = s, den;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
    if (!all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (!all_digits(num)) throw ParseError("malformed rational '" + std::string(text) + "'");
  Rational q;
  q.get_num() = Integer(std::string(num), 10);
  q.get_den() = den.empty() ? Integer(1) : Integer(std::string(den), 10);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) { return q.get_str(10); }

long ord_p(const Integer& z, const Integer& p) {
  if (z == 0) throw DomainError("ord_p of zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

long ord_p(const Rational& q, const Integer& p) {
  if (q == 0) throw DomainError("ord_p of zero");
  return ord_p(q.get_num(), p) - ord_p(q.get_den(), p);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw DomainError("negative power of zero");
    return pow(Rational(1) / q, -e);
  }
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

Integer ipow(const Integer& z, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), e);
  return r;
}

}  // namespace greenfield
