#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "greenfield/homopoly.hpp"
#include "greenfield/macaulay.hpp"
#include "greenfield/pf_field.hpp"

namespace greenfield {

enum class Reduction { Good, Bad };
enum class Membership { Inside, Outside, Undetermined };

std::string to_string(Reduction r);
std::string to_string(Membership m);

// log||F(Q)|| - d log||Q|| lies in [-c_lo, c_hi] for every Q != 0.
struct GrowthConstants {
  LogMag c_lo;
  LogMag c_hi;
  // max(|c_lo|, |c_hi|) rounded up.
  double bound() const;
};

struct ReductionInfo {
  Reduction type = Reduction::Bad;
  // Minimum ord_p over the coefficients of F.
  long min_coeff_ord = 0;
  long ord_resultant = 0;
  // ord_p Res(p^-m F) with m = min_coeff_ord; zero exactly at good places.
  long ord_primitive_resultant = 0;
  // No rational multiple of F has a unit resultant at p.
  bool needs_extension = false;
};

struct EscapeRate {
  // Exact p-adic coefficient or binary64 archimedean value.
  LogMag value;
  // Bound on |value - H_F|, including the telescoping tail.
  double error = 0.0;
  std::size_t iterations = 0;
  double approx() const { return value.value(); }
};

struct InvarianceCheck {
  bool invariant = false;
  // Q with G(F) = Q*G on success, the division remainder otherwise.
  HomoForm witness;
};

InvarianceCheck check_invariance(const PolyMap& f, const HomoForm& g);

class DynSystem {
 public:
  // Throws DomainError when Res(F) = 0 and PreconditionError when d < 2 or
  // the hypersurface is not invariant.
  explicit DynSystem(PolyMap map, std::optional<HomoForm> hypersurface = std::nullopt);

  const PolyMap& map() const { return map_; }
  const std::optional<HomoForm>& hypersurface() const { return hypersurface_; }
  unsigned degree() const { return map_.degree(); }
  std::size_t dimension() const { return map_.dimension(); }
  const Rational& resultant() const { return resultant_; }
  unsigned macaulay_degree() const;

  // F^(k), memoized.
  const PolyMap& iterate(unsigned k) const;
  // x_j^e = sum_i eta[j][i] F_i at the Macaulay degree e.
  const std::vector<std::vector<HomoForm>>& lower_certificates() const;
  GrowthConstants growth(const Place& place) const;
  ReductionInfo reduction(const Place& place) const;
  // Primes dividing a coefficient or the resultant, ascending.
  const std::vector<Integer>& candidate_primes() const { return candidate_primes_; }
  std::vector<Place> bad_places() const;  // archimedean first

 private:
  PolyMap map_;
  std::optional<HomoForm> hypersurface_;
  Rational resultant_;
  std::vector<Integer> candidate_primes_;

  struct Cache {
    std::mutex mutex;
    std::map<unsigned, PolyMap> iterates;
    std::once_flag certificates_once;
    std::vector<std::vector<HomoForm>> certificates;
    std::map<Place, GrowthConstants> growth;
  };
  std::shared_ptr<Cache> cache_;
};

Reduction reduction_type(const DynSystem& system, const Place& place);
InvarianceCheck check_invariance(const DynSystem& system);

// H_F at the place within tol. Exact (error 0) at good nonarchimedean places.
EscapeRate escape_rate(const DynSystem& system, const Place& place, const ProjPoint& lift, double tol);

Membership julia_membership(const DynSystem& system, const Place& place, const ProjPoint& lift, double tol);

// log max_i |x_i|_v.
LogMag log_sup_norm(const Place& place, const ProjPoint& lift);

}  // namespace greenfield
