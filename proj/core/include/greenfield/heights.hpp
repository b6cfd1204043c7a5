#pragma once

#include <map>

#include "greenfield/dynsys.hpp"
#include "greenfield/pf_field.hpp"

namespace greenfield {

struct HeightValue {
  double value = 0.0;
  double error = 0.0;
  // Exact p-adic parts plus the archimedean binary64 part.
  LogMag total;
  std::map<Place, LogMag> local_profile;
};

// sum_v log max_i |x_i|_v.
HeightValue weil_height(const ProjPoint& point);

// Per-place escape rates H_{F,v} of the given lift. Places are the union of
// the coordinate support, the primes of the coefficients and the resultant,
// and infinity; everywhere else the term is 0. The total does not depend on
// the lift.
HeightValue local_height_profile(const DynSystem& system, const ProjPoint& point, double tol);

// Same sum; the canonical height of the point.
HeightValue canonical_height(const DynSystem& system, const ProjPoint& point, double tol);

}  // namespace greenfield
