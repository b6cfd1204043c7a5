#pragma once

#include <utility>
#include <vector>

#include "greenfield/rational.hpp"

namespace greenfield {

// Deterministic Miller-Rabin below 3.3e24 (first thirteen prime bases);
// Baillie-PSW above that bound.
bool is_prime(const Integer& n);

struct PrimePower {
  Integer prime;
  unsigned long exponent;
  bool operator==(const PrimePower&) const = default;
};

// Complete factorization of |n| (n != 0) into primes in ascending order.
// Trial division, then Pollard-Brent, then elliptic-curve method (Montgomery
// curves, two stages) for cofactors that resist rho.
std::vector<PrimePower> factor(const Integer& n);

// Distinct primes dividing numerator or denominator of q != 0, ascending.
std::vector<Integer> prime_support(const Rational& q);

}  // namespace greenfield
