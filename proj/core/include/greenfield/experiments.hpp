#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greenfield/basis.hpp"
#include "greenfield/dynsys.hpp"
#include "greenfield/elliptic.hpp"
#include "greenfield/green.hpp"
#include "greenfield/upoly.hpp"

namespace greenfield {

// ---- adelic upper bound -------------------------------------------------

struct PlaceBound {
  Place place = Place::archimedean();
  bool good = false;
  LogMag r_log;                        // Julia radius used by the envelope
  LogMag envelope;                     // bound for log|det|
  LogMag envelope_logd;                // envelope / (n c)
  std::optional<LogMag> witness_logd;  // admissible tuple, (1/(n c)) log|det|
  std::string witness_source;          // "fekete", "exact", or empty
};

struct AdelicRow {
  unsigned n = 0;
  std::size_t c = 0;
  std::vector<PlaceBound> places;
  double sum_envelope_logd = 0.0;
  std::optional<double> sum_witness_logd;  // only when every place has a witness
  double reference = 0.0;                  // C_fit log n / n
  std::string error;                       // set when this n failed
};

struct AdelicReport {
  std::vector<AdelicRow> rows;
  // max over n of sum_envelope_logd * n / log n.
  double c_fit = 0.0;
  // max/min - 1 of the same quantity over the rows.
  double c_spread = 0.0;
  bool decreasing = true;
};

// Places: infinity plus every prime of a coefficient or of Res.
AdelicReport adelic_report(const DynSystem& system, const std::vector<unsigned>& n_list, std::size_t budget,
                           std::uint64_t seed);

// ---- transfinite diameter trend at a place of unit resultant -------------

struct TrendRow {
  unsigned n = 0;
  std::size_t c = 0;
  LogMag envelope_logd;
  std::optional<LogMag> witness_logd;
};

struct TrendTable {
  Place place = Place::archimedean();
  // The rescaled map lambda F with |Res(lambda F)|_v = 1.
  Rational lambda = 1;
  std::vector<TrendRow> rows;
};

// P^1 systems. Witnesses come from roots of unity at infinity and from the
// points (k, 1) at a prime. PreconditionError when no rational rescaling
// gives |Res|_v = 1.
TrendTable transfin_trend(const DynSystem& system, const Place& place, const std::vector<unsigned>& n_list);

// ---- greedy multiples -----------------------------------------------------

struct MultiplesResult {
  std::vector<std::size_t> indices;  // 1-based positions in the orbit
  Rational determinant;              // of the chosen rows, nonzero
  std::size_t c = 0;
  std::size_t bound = 0;             // 2 n^g + c(n)
};

// x(kP) for k = 1..count.
std::vector<ProjPoint> translation_orbit(const EllipticCurve& e, const CurvePoint& p, std::size_t count);

// Keeps orbit entry k when its evaluation row raises the exact rank.
// PreconditionError for a repeating orbit (torsion) or when the rank stays
// short within the bound.
MultiplesResult multiples_search(const DynSystem& system, const std::vector<ProjPoint>& orbit, unsigned n);

// ---- Lehmer scan on Lattes maps -------------------------------------------

struct LehmerRow {
  unsigned depth = 0;
  std::string factor;         // irreducible factor over Q cutting out the preimages
  unsigned degree = 1;        // D
  unsigned multiplicity = 1;
  double height = 0.0;        // exactly base_height / 4^depth
  double lehmer_value = 0.0;  // height * D^5 * log(max(D, 2))^2
};

struct LehmerScan {
  double base_height = 0.0;
  double base_error = 0.0;
  std::vector<LehmerRow> rows;
  double min_lehmer_value = 0.0;
};

LehmerScan lehmer_scan(const LattesSystem& lattes, const std::vector<unsigned>& depths, double tol);

}  // namespace greenfield
