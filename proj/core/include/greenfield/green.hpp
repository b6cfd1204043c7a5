#pragma once

#include <cstdint>
#include <vector>

#include "greenfield/basis.hpp"
#include "greenfield/dynsys.hpp"
#include "greenfield/macaulay.hpp"
#include "greenfield/pf_field.hpp"

namespace greenfield {

struct EvalDetLog {
  ExtLogMag value = MinusInfinity{};
  std::size_t dimension = 0;
  unsigned degree = 0;
  // Numeric mode only: the pivot fell below the rank threshold.
  bool numeric_singular = false;
};

// log |det(eta_j(P_i))|_v. Exact lifts give an exact rational determinant;
// numeric lifts (archimedean only) use pivoted elimination.
EvalDetLog eval_det_log(const BasisFamily& basis, const std::vector<ProjPoint>& lifts, const Place& place);

struct GreenValue {
  bool infinite = false;  // the determinant vanished
  LogMag value;           // meaningless when infinite
  double error = 0.0;
  double approx() const { return value.value(); }
};

// (1/c) sum H_F(P_i) - (1/(n c)) log|det| + r(F).
GreenValue green_value(const DynSystem& system, const BasisFamily& basis, const std::vector<ProjPoint>& lifts,
                       const Place& place, RConvention convention, double tol);

// (1/(n c)) log|det| after checking every lift is admissible (filled Julia
// set and on X). PreconditionError names the first bad index.
ExtLogMag dbn_witness(const DynSystem& system, const BasisFamily& basis, const std::vector<ProjPoint>& lifts,
                      const Place& place, double tol = 1e-9);

// log R with ||P||_v <= R for every lift in the filled Julia set.
LogMag julia_radius_log(const DynSystem& system, const Place& place);

// Upper bound for log|det| over admissible tuples. Needs n >= 2.
LogMag hadamard_envelope(const DynSystem& system, unsigned n, const LogMag& r_log, const Place& place);
LogMag hadamard_envelope(const DynSystem& system, unsigned n, const Place& place);

struct FeketeResult {
  std::vector<ProjPoint> lifts;
  LogMag witness;                   // (1/(n c)) log|det| at the lifts
  std::size_t evaluations = 0;      // determinants spent across restarts
  std::size_t restart = 0;          // which restart produced the tuple
};

// Maximizes |det| over lifts (z, 1) exp(-H(z, 1)) at the archimedean place.
// P^1 systems only. Each determinant costs one unit of budget.
FeketeResult fekete_search(const DynSystem& system, const BasisFamily& basis, std::size_t budget,
                           std::uint64_t seed, std::size_t restarts = 4);

}  // namespace greenfield
