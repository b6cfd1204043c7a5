#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greenfield/homopoly.hpp"
#include "greenfield/linalg.hpp"
#include "greenfield/pf_field.hpp"

namespace greenfield {

// Square Macaulay matrix of an equal-degree system at e = (N+1)(d-1)+1.
// Row k is mu*F_i where columns[k] = mu * x_i^d and i is the first index
// with x_i^d dividing columns[k]; so row and column indices coincide.
struct MacaulayMatrix {
  unsigned degree = 0;
  std::vector<Exponent> columns;
  std::vector<std::pair<std::size_t, Exponent>> rows;  // (i, mu)
  RatMatrix entries;
  // Monomials divisible by exactly one x_i^d.
  std::vector<bool> reduced;
};

MacaulayMatrix macaulay_matrix(const PolyMap& f);

// N = 1: Sylvester determinant. N >= 2: det(M) / det(M') with M' the
// minor on non-reduced monomials; when M' is singular a determinant-one
// change of coordinates is tried, and as a last resort Res(F + t*x^d) is
// interpolated at t = 0.
Rational macaulay_resultant(const PolyMap& f);
Rational sylvester_resultant(const PolyMap& f);

enum class RConvention { Paper, Invariant };
RConvention parse_convention(std::string_view text);
std::string to_string(RConvention c);

// paper:      +(1/(d(d-1)(N+1)))   * log|Res|_v
// invariant:  -(1/(d^N(d-1)(N+1))) * log|Res|_v
LogMag r_normalized(const Rational& resultant, unsigned d, std::size_t N, const Place& place, RConvention c);
LogMag r_normalized(const PolyMap& f, const Place& place, RConvention c);

// phi = sum eta_i F_i with deg eta_i = deg phi - d. Requires deg phi >= (N+1)d
// and Res(F) != 0. Unknowns are ordered (i, monomial) with i ascending and
// monomials graded-lex; the leftmost-pivot solution with free variables zero
// is returned.
std::vector<HomoForm> elimination_certificate(const PolyMap& f, const HomoForm& phi);

// Same solver without the degree threshold; one result per target, nullopt
// where no certificate exists in that degree. Targets must share a degree.
std::vector<std::optional<std::vector<HomoForm>>> solve_certificates(const PolyMap& f,
                                                                     const std::vector<HomoForm>& targets);

// sum eta_i F_i, for checking certificates.
HomoForm expand_certificate(const PolyMap& f, const std::vector<HomoForm>& eta);

}  // namespace greenfield
