#include "greenfield/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "greenfield/errors.hpp"

namespace greenfield {

namespace {

void divexact(Integer& target, const Integer& divisor) {
  if (divisor == 1) return;
  mpz_divexact(target.get_mpz_t(), target.get_mpz_t(), divisor.get_mpz_t());
}

// Smallest nonzero entry in column c among rows [from, n).
std::optional<std::size_t> find_pivot(const IntMatrix& m, std::size_t from, std::size_t c) {
  std::optional<std::size_t> best;
  std::size_t best_size = 0;
  for (std::size_t r = from; r < m.size(); ++r) {
    if (m[r][c] == 0) continue;
    const std::size_t sz = mpz_sizeinbase(m[r][c].get_mpz_t(), 2);
    if (!best || sz < best_size) {
      best = r;
      best_size = sz;
    }
  }
  return best;
}

// One Bareiss step: rows below k, columns after c.
void bareiss_eliminate(IntMatrix& m, std::size_t k, std::size_t c, const Integer& prev) {
  const Integer& pivot = m[k][c];
  const std::size_t ncols = m[k].size();
  Integer t;
  for (std::size_t i = k + 1; i < m.size(); ++i) {
    auto& row = m[i];
    const Integer factor = row[c];
    if (factor == 0) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        if (row[j] == 0) continue;
        row[j] *= pivot;
        divexact(row[j], prev);
      }
    } else {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        const Integer& kj = m[k][j];
        if (kj == 0) {
          if (row[j] == 0) continue;
          row[j] *= pivot;
        } else {
          t = factor * kj;
          row[j] *= pivot;
          row[j] -= t;
        }
        divexact(row[j], prev);
      }
      row[c] = 0;
    }
  }
}

}  // namespace

Integer bareiss_determinant(IntMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw PreconditionError("determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    auto pivot = find_pivot(m, k, k);
    if (!pivot) return 0;
    if (*pivot != k) {
      std::swap(m[*pivot], m[k]);
      sign = -sign;
    }
    bareiss_eliminate(m, k, k, prev);
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix clear_denominators(const RatMatrix& m, std::vector<Integer>* scale) {
  IntMatrix out;
  out.reserve(m.size());
  if (scale) scale->clear();
  for (const auto& row : m) {
    Integer l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> irow;
    irow.reserve(row.size());
    for (const auto& q : row) {
      Integer v = l / q.get_den();
      irow.push_back(v * q.get_num());
    }
    out.push_back(std::move(irow));
    if (scale) scale->push_back(l);
  }
  return out;
}

Rational determinant(const RatMatrix& m) {
  std::vector<Integer> scale;
  IntMatrix im = clear_denominators(m, &scale);
  Rational det(bareiss_determinant(std::move(im)));
  Integer total = 1;
  for (const auto& s : scale) total *= s;
  det /= total;
  det.canonicalize();
  return det;
}

Echelon bareiss_echelon(IntMatrix m, std::size_t pivot_columns) {
  Echelon out;
  Integer prev = 1;
  std::size_t k = 0;
  for (std::size_t c = 0; c < pivot_columns && k < m.size(); ++c) {
    auto pivot = find_pivot(m, k, c);
    if (!pivot) continue;
    if (*pivot != k) std::swap(m[*pivot], m[k]);
    bareiss_eliminate(m, k, c, prev);
    prev = m[k][c];
    out.pivots.push_back(c);
    ++k;
  }
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  return bareiss_echelon(clear_denominators(m), cols).pivots.size();
}

std::optional<RatMatrix> solve_leftmost(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw PreconditionError("solve: row count mismatch");
  const std::size_t n = rows ? a.front().size() : 0;
  const std::size_t k = rows ? b.front().size() : 0;
  RatMatrix aug(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != n || b[i].size() != k) throw PreconditionError("solve: ragged matrix");
    aug[i] = a[i];
    aug[i].insert(aug[i].end(), b[i].begin(), b[i].end());
  }
  Echelon e = bareiss_echelon(clear_denominators(aug), n);
  const std::size_t r = e.pivots.size();
  for (std::size_t i = r; i < rows; ++i)
    for (std::size_t j = n; j < n + k; ++j)
      if (e.rows[i][j] != 0) return std::nullopt;
  RatMatrix x(n, std::vector<Rational>(k, Rational(0)));
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t ri = r; ri-- > 0;) {
      const std::size_t pc = e.pivots[ri];
      Rational acc(e.rows[ri][n + col]);
      for (std::size_t j = pc + 1; j < n; ++j)
        if (e.rows[ri][j] != 0 && x[j][col] != 0) acc -= Rational(e.rows[ri][j]) * x[j][col];
      x[pc][col] = acc / Rational(e.rows[ri][pc]);
    }
  }
  return x;
}

// ---------------------------------------------------------------- IncrementalRank

std::vector<Integer> IncrementalRank::reduce(std::span<const Rational> v) const {
  if (v.size() != dimension_) throw PreconditionError("IncrementalRank: dimension mismatch");
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> c(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) c[i] = (l / v[i].get_den()) * v[i].get_num();
  Integer t;
  for (const auto& [p, row] : rows_) {
    if (c[p] == 0) continue;
    const Integer a = row[p];
    const Integer b = c[p];
    // Columns left of p are scaled too; only the subtraction starts at p.
    if (a != 1)
      for (std::size_t j = 0; j < p; ++j)
        if (c[j] != 0) c[j] *= a;
    for (std::size_t j = p; j < dimension_; ++j) {
      c[j] *= a;
      if (row[j] != 0) {
        t = b * row[j];
        c[j] -= t;
      }
    }
    Integer g = 0;
    for (const auto& x : c) {
      if (x == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) break;
    }
    if (g > 1)
      for (auto& x : c)
        if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return c;
}

std::optional<std::size_t> IncrementalRank::insert(std::span<const Rational> v) {
  std::vector<Integer> c = reduce(v);
  auto lead = std::find_if(c.begin(), c.end(), [](const Integer& x) { return x != 0; });
  if (lead == c.end()) return std::nullopt;
  const std::size_t p = static_cast<std::size_t>(lead - c.begin());
  Integer g = 0;
  for (const auto& x : c)
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (c[p] < 0) g = -g;
  for (auto& x : c)
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  rows_.emplace(p, std::move(c));
  return p;
}

bool IncrementalRank::contains(std::span<const Rational> v) const {
  const auto c = reduce(v);
  return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
}

std::vector<std::size_t> IncrementalRank::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------- complex LU

ComplexLogDet complex_log_abs_det(ComplexMatrix m, double singular_threshold) {
  const std::size_t n = m.size();
  ComplexLogDet out;
  if (n == 0) return out;
  double max_entry = 0.0, norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw PreconditionError("determinant of a non-square matrix");
      max_entry = std::max(max_entry, std::abs(m[i][j]));
      col += std::abs(m[i][j]);
    }
    norm1 = std::max(norm1, col);
  }
  if (max_entry == 0.0) {
    out.singular = true;
    return out;
  }
  const ComplexMatrix original = m;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  double log_abs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    if (std::abs(m[piv][k]) <= singular_threshold * max_entry) {
      out.singular = true;
      return out;
    }
    std::swap(m[piv], m[k]);
    std::swap(perm[piv], perm[k]);
    log_abs += std::log(std::abs(m[k][k]));
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto f = m[i][k] / m[k][k];
      m[i][k] = f;
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  // ||A^-1||_1 from explicit LU solves against unit vectors.
  double inv_norm1 = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = perm[i] == col ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= m[i][j] * x[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= m[i][j] * x[j];
      x[i] /= m[i][i];
    }
    double s = 0.0;
    for (const auto& xi : x) s += std::abs(xi);
    inv_norm1 = std::max(inv_norm1, s);
  }
  const double kappa = norm1 * inv_norm1;
  out.log_abs = log_abs;
  out.error = 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * kappa;
  (void)original;
  return out;
}

}  // namespace greenfield
