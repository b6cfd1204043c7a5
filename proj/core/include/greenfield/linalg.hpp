#pragma once

// Exact fraction-free linear algebra over Z and Q, plus a small pivoted LU
// for complex binary64 determinants.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "greenfield/rational.hpp"

namespace greenfield {

using IntMatrix = std::vector<std::vector<Integer>>;
using RatMatrix = std::vector<std::vector<Rational>>;
using ComplexMatrix = std::vector<std::vector<std::complex<double>>>;

// Bareiss elimination with row pivoting. The matrix must be square.
Integer bareiss_determinant(IntMatrix m);
Rational determinant(const RatMatrix& m);

// Multiplies every row by the lcm of its denominators. scale[i] is that
// multiplier, so row_i(result) = scale[i] * row_i(m).
IntMatrix clear_denominators(const RatMatrix& m, std::vector<Integer>* scale = nullptr);

struct Echelon {
  IntMatrix rows;                    // fraction-free row echelon form
  std::vector<std::size_t> pivots;   // pivot column of row k
};

// Fraction-free row echelon form. Pivots are taken only among the first
// `pivot_columns` columns (the rest ride along, e.g. right-hand sides).
Echelon bareiss_echelon(IntMatrix m, std::size_t pivot_columns);

std::size_t rank(const RatMatrix& m);

// Solves A X = B with pivots on the leftmost possible columns and every free
// variable set to zero, which makes the answer unique and reproducible.
// Returns nullopt when the system is inconsistent.
std::optional<RatMatrix> solve_leftmost(const RatMatrix& a, const RatMatrix& b);

// Row space maintained as primitive integer echelon rows keyed by pivot.
class IncrementalRank {
 public:
  explicit IncrementalRank(std::size_t dimension) : dimension_(dimension) {}

  // Inserts v when it is independent of the current rows; returns whether
  // the rank grew.
  bool add(std::span<const Rational> v) { return insert(v).has_value(); }
  // Same, returning the pivot column of the new row.
  std::optional<std::size_t> insert(std::span<const Rational> v);
  bool contains(std::span<const Rational> v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::vector<std::size_t> pivots() const;

 private:
  std::vector<Integer> reduce(std::span<const Rational> v) const;

  std::size_t dimension_;
  std::map<std::size_t, std::vector<Integer>> rows_;
};

struct ComplexLogDet {
  double log_abs = 0.0;   // log |det|; meaningless when singular
  double error = 0.0;     // first-order bound from a condition estimate
  bool singular = false;  // pivot below relative threshold
};

ComplexLogDet complex_log_abs_det(ComplexMatrix m, double singular_threshold = 1e-13);

}  // namespace greenfield
