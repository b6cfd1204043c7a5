#pragma once

// Sparse homogeneous forms with exact rational coefficients, polynomial maps
// built from them, and projective points given by a lift.

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "greenfield/pf_field.hpp"
#include "greenfield/rational.hpp"

namespace greenfield {

using Exponent = std::vector<unsigned>;
using Complex = std::complex<double>;

// Terms of a fixed degree are ordered lexicographically descending, which is
// graded-lex within one degree: x0^n comes first.
using TermMap = std::map<Exponent, Rational, std::greater<Exponent>>;

class HomoForm {
 public:
  HomoForm() = default;
  // The zero form.
  HomoForm(std::size_t nvars, unsigned degree);

  static HomoForm monomial(const Exponent& e, const Rational& c = Rational(1));
  static HomoForm variable(std::size_t nvars, std::size_t i);
  static HomoForm constant(std::size_t nvars, const Rational& c);

  // "c*x0^a0*...*xN^aN" terms joined by + or -. Variables x0..xN; when
  // nvars <= 4 the aliases x, y, z, w are accepted too. A zero form needs
  // `degree_hint` since its degree cannot be read off.
  static HomoForm parse(std::string_view text, std::size_t nvars, int degree_hint = -1);

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  HomoForm operator+(const HomoForm& o) const;
  HomoForm operator-(const HomoForm& o) const;
  HomoForm operator-() const;
  HomoForm operator*(const HomoForm& o) const;
  HomoForm scaled(const Rational& c) const;
  HomoForm pow(unsigned e) const;

  Rational evaluate(std::span<const Rational> x) const;
  // Compensated summation; see evaluate_error for the bound.
  Complex evaluate(std::span<const Complex> x) const;
  double evaluate_error(std::span<const Complex> x) const;

  // Coefficients against `monomials` (all of this form's degree).
  std::vector<Rational> coefficients(const std::vector<Exponent>& monomials,
                                     const std::map<Exponent, std::size_t>& index) const;

  std::string to_string() const;
  bool operator==(const HomoForm& o) const = default;

 private:
  void check_compatible(const HomoForm& o) const;

  std::size_t nvars_ = 0;
  unsigned degree_ = 0;
  TermMap terms_;
};

// All exponent vectors of the given degree in graded-lex order.
std::vector<Exponent> monomials(std::size_t nvars, unsigned degree);
// Index lookup for the list above.
std::map<Exponent, std::size_t> monomial_index(const std::vector<Exponent>& list);
// binom(n + k, k) with overflow check (ResourceError).
std::size_t count_monomials(std::size_t nvars, unsigned degree);
Integer binomial(unsigned long n, unsigned long k);

// A = Q*B + R with the remainder's terms not divisible by the lead term of B.
struct Division {
  HomoForm quotient;
  HomoForm remainder;
};
Division divide(const HomoForm& a, const HomoForm& b);

class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<HomoForm> forms);

  static PolyMap identity(std::size_t nvars);
  static PolyMap parse(const std::vector<std::string>& forms);

  std::size_t nvars() const { return forms_.size(); }
  std::size_t dimension() const { return forms_.size() - 1; }
  unsigned degree() const { return degree_; }
  const std::vector<HomoForm>& forms() const { return forms_; }
  const HomoForm& operator[](std::size_t i) const { return forms_[i]; }
  std::size_t term_count() const;

  std::vector<Rational> apply(std::span<const Rational> x) const;
  std::vector<Complex> apply(std::span<const Complex> x) const;

  PolyMap scaled(const Rational& c) const;
  std::vector<std::string> to_strings() const;
  bool operator==(const PolyMap& o) const = default;

 private:
  std::vector<HomoForm> forms_;
  unsigned degree_ = 0;
};

inline constexpr std::size_t kCompositionTermCap = 10'000'000;

// f(g_0, ..., g_N).
HomoForm substitute(const HomoForm& f, const std::vector<HomoForm>& g,
                    std::size_t term_cap = kCompositionTermCap);
PolyMap compose(const PolyMap& outer, const PolyMap& inner, std::size_t term_cap = kCompositionTermCap);
// F^(k) by repeated squaring; k >= 1.
PolyMap iterate(const PolyMap& f, unsigned k, std::size_t term_cap = kCompositionTermCap);

// max over coefficients c of log|c|_v.
LogMag coeff_sup_log(const PolyMap& f, const Place& place);
LogMag coeff_sup_log(const HomoForm& f, const Place& place);

class ProjPoint {
 public:
  ProjPoint() = default;
  static ProjPoint exact(std::vector<Rational> coords);
  static ProjPoint numeric(std::vector<Complex> coords);
  // "a/b,c/d,..." (exact mode).
  static ProjPoint parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<std::vector<Rational>>(coords_); }
  std::size_t size() const;
  const std::vector<Rational>& exact_coords() const;
  const std::vector<Complex>& numeric_coords() const;
  // Numeric copy of an exact point; numeric points are returned unchanged.
  std::vector<Complex> as_complex() const;

  ProjPoint scaled(const Rational& c) const;
  bool projectively_equal(const ProjPoint& o) const;
  std::string to_string() const;

 private:
  std::variant<std::vector<Rational>, std::vector<Complex>> coords_;
};

Rational evaluate_exact(const HomoForm& f, const ProjPoint& p);
ProjPoint apply(const PolyMap& f, const ProjPoint& p);

}  // namespace greenfield
