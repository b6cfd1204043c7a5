#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace greenfield {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a/b" or "a" in base 10 with an optional leading minus sign.
// Whitespace around the token is ignored. Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

// Exponent of the prime p in z != 0.
long ord_p(const Integer& z, const Integer& p);
// ord_p(num) - ord_p(den) for q != 0.
long ord_p(const Rational& q, const Integer& p);

Rational abs(const Rational& q);
Rational pow(const Rational& q, long e);
Integer ipow(const Integer& z, unsigned long e);

}  // namespace greenfield
