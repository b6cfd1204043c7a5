#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "greenfield/dynsys.hpp"
#include "greenfield/homopoly.hpp"

namespace greenfield {

// (F_i^(k))^j.
struct FactorTriple {
  std::size_t i = 0;
  unsigned k = 1;
  unsigned j = 1;
  auto operator<=>(const FactorTriple&) const = default;
};

struct GenElement {
  enum class Kind { Monomial, Product };
  Kind kind = Kind::Monomial;
  Exponent monomial;                   // Monomial provenance
  HomoForm cofactor;                   // Product provenance
  std::vector<FactorTriple> factors;   // ascending
  HomoForm expanded;

  std::string describe() const;
};

struct BasisFamily {
  unsigned n = 0;
  std::vector<GenElement> elements;
  // Pivot column (in the degree-n monomial list) at which each element entered.
  std::vector<std::size_t> rank_profile;
  std::size_t candidates_examined = 0;
  // Factor counts below floor(t1) had to be admitted.
  bool relaxed_t1 = false;
  std::size_t c() const { return elements.size(); }
};

// { j d^k : k >= 1, 1 <= j <= d-1 } within [1, nmax], ascending.
std::vector<unsigned> gen_degrees(unsigned d, unsigned nmax);
std::vector<unsigned> gen_degrees(const DynSystem& system, unsigned nmax);

// Largest n' in the generator degrees with (N+1) n' <= n; needs n >= d(N+1).
unsigned floor_G(unsigned d, std::size_t N, unsigned n);
unsigned floor_G(const DynSystem& system, unsigned n);

// log_{(N+1)/N} max(1, n - d(N+1)) and log_{(2N+2)/(2N+1)} n.
double t1(unsigned d, std::size_t N, unsigned n);
double t2(std::size_t N, unsigned n);

// Checks N n/(N+1) <= n - floor_G(n) <= (2N+1) n/(2N+2) over [d(N+1), nmax].
struct SandwichScan {
  unsigned n0 = 0;                        // the sandwich holds for every scanned n >= n0
  std::optional<unsigned> last_violation;  // largest scanned n where it fails
};
SandwichScan keyratio_scan(unsigned d, std::size_t N, unsigned nmax);
bool keyratio_holds(unsigned d, std::size_t N, unsigned n);

// Dimension of degree-n forms modulo the hypersurface (or all of them).
std::size_t c_of_n(const DynSystem& system, unsigned n);

// Lazily enumerates the spanning family in its canonical order, calling
// visit until it returns false. Returns whether the enumeration was cut
// short by visit. `relaxed` selects factor counts below floor(t1).
bool enumerate_spanning(const DynSystem& system, unsigned n, bool relaxed,
                        const std::function<bool(const GenElement&)>& visit);

// First `limit` elements of the spanning family (threshold n >= d(N+1);
// below it, all degree-n monomials).
std::vector<GenElement> spanning_family(const DynSystem& system, unsigned n, std::size_t limit);

BasisFamily special_basis(const DynSystem& system, unsigned n);
BasisFamily monomial_basis(std::size_t N, unsigned n);

}  // namespace greenfield
