#include "greenfield/macaulay.hpp"

#include <random>

#include "greenfield/errors.hpp"

namespace greenfield {

namespace {

void check_square_system(const PolyMap& f) {
  for (const auto& g : f.forms())
    if (g.degree() != f.degree()) throw PreconditionError("resultant needs forms of equal degree");
}

// Resultant of F as D/D'; nullopt when the minor D' vanishes.
std::optional<Rational> quotient_formula(const PolyMap& f) {
  const MacaulayMatrix m = macaulay_matrix(f);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < m.columns.size(); ++k)
    if (!m.reduced[k]) keep.push_back(k);
  Rational minor = 1;
  if (!keep.empty()) {
    RatMatrix sub(keep.size(), std::vector<Rational>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b) sub[a][b] = m.entries[keep[a]][keep[b]];
    minor = determinant(sub);
    if (minor == 0) return std::nullopt;
  }
  return determinant(m.entries) / minor;
}

// x -> A x with A = L * U, both unitriangular with small integer entries.
PolyMap unimodular_substitution(const PolyMap& f, std::mt19937_64& rng) {
  const std::size_t n = f.nvars();
  std::uniform_int_distribution<int> dist(-3, 3);
  std::vector<std::vector<Rational>> lower(n, std::vector<Rational>(n, Rational(0)));
  std::vector<std::vector<Rational>> upper = lower;
  for (std::size_t i = 0; i < n; ++i) {
    lower[i][i] = upper[i][i] = 1;
    for (std::size_t j = 0; j < i; ++j) lower[i][j] = dist(rng);
    for (std::size_t j = i + 1; j < n; ++j) upper[i][j] = dist(rng);
  }
  std::vector<HomoForm> linear;
  for (std::size_t i = 0; i < n; ++i) {
    HomoForm li(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
      Rational a = 0;
      for (std::size_t k = 0; k < n; ++k) a += lower[i][k] * upper[k][j];
      Exponent e(n, 0);
      e[j] = 1;
      li.add_term(e, a);
    }
    linear.push_back(std::move(li));
  }
  std::vector<HomoForm> out;
  for (const auto& g : f.forms()) out.push_back(substitute(g, linear));
  return PolyMap(std::move(out));
}

// Res(F + t * (x_0^d, ..., x_N^d)) interpolated at t = 0.
Rational interpolated_resultant(const PolyMap& f) {
  const std::size_t n = f.nvars();
  const unsigned d = f.degree();
  const Integer deg_bound = Integer(n) * ipow(Integer(d), n - 1);
  if (!deg_bound.fits_ulong_p() || deg_bound > 4096) throw ResourceError("resultant interpolation too large");
  const std::size_t needed = deg_bound.get_ui() + 1;
  std::vector<Rational> ts, values;
  for (long t = 1; ts.size() < needed; ++t) {
    if (t > static_cast<long>(8 * needed + 64)) throw InternalError("no usable interpolation nodes");
    std::vector<HomoForm> shifted;
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e(n, 0);
      e[i] = d;
      shifted.push_back(f[i] + HomoForm::monomial(e, Rational(t)));
    }
    auto v = quotient_formula(PolyMap(std::move(shifted)));
    if (!v) continue;
    ts.emplace_back(t);
    values.push_back(*v);
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Rational w = values[i];
    for (std::size_t j = 0; j < ts.size(); ++j)
      if (j != i) w *= (-ts[j]) / (ts[i] - ts[j]);
    sum += w;
  }
  return sum;
}

}  // namespace

MacaulayMatrix macaulay_matrix(const PolyMap& f) {
  check_square_system(f);
  const std::size_t n = f.nvars();
  const unsigned d = f.degree();
  MacaulayMatrix m;
  m.degree = static_cast<unsigned>(n) * (d - 1) + 1;
  m.columns = monomials(n, m.degree);
  const auto index = monomial_index(m.columns);
  const std::size_t size = m.columns.size();
  m.entries.assign(size, std::vector<Rational>(size, Rational(0)));
  m.reduced.assign(size, false);
  for (std::size_t k = 0; k < size; ++k) {
    const Exponent& alpha = m.columns[k];
    std::size_t first = n, count = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (alpha[i] >= d) {
        if (first == n) first = i;
        ++count;
      }
    if (first == n) throw InternalError("Macaulay degree too small");
    m.reduced[k] = count == 1;
    Exponent mu = alpha;
    mu[first] -= d;
    for (const auto& [e, c] : f[first].terms()) {
      Exponent t = e;
      for (std::size_t i = 0; i < n; ++i) t[i] += mu[i];
      m.entries[k][index.at(t)] = c;
    }
    m.rows.emplace_back(first, std::move(mu));
  }
  return m;
}

Rational sylvester_resultant(const PolyMap& f) {
  check_square_system(f);
  if (f.nvars() != 2) throw PreconditionError("Sylvester resultant needs two forms");
  const unsigned d = f.degree();
  const std::size_t size = 2 * d;
  RatMatrix s(size, std::vector<Rational>(size, Rational(0)));
  // Columns x^(2d-1-j) y^j; rows x^(d-1-k) y^k F_i.
  for (std::size_t i = 0; i < 2; ++i)
    for (unsigned k = 0; k < d; ++k)
      for (const auto& [e, c] : f[i].terms()) s[i * d + k][e[1] + k] = c;
  return determinant(s);
}

Rational macaulay_resultant(const PolyMap& f) {
  check_square_system(f);
  if (f.nvars() == 2) return sylvester_resultant(f);
  if (auto r = quotient_formula(f)) return *r;
  std::mt19937_64 rng(0x5eed);
  for (int attempt = 0; attempt < 8; ++attempt)
    if (auto r = quotient_formula(unimodular_substitution(f, rng))) return *r;
  return interpolated_resultant(f);
}

RConvention parse_convention(std::string_view text) {
  if (text == "paper") return RConvention::Paper;
  if (text == "invariant") return RConvention::Invariant;
  throw ParseError("unknown r convention '" + std::string(text) + "'");
}

std::string to_string(RConvention c) { return c == RConvention::Paper ? "paper" : "invariant"; }

LogMag r_normalized(const Rational& resultant, unsigned d, std::size_t N, const Place& place, RConvention c) {
  if (resultant == 0) throw DomainError("not a morphism: resultant vanishes");
  if (d < 2) throw PreconditionError("r(F) needs degree at least 2");
  const LogMag l = abs_log(place, resultant);
  const Integer base = Integer(d - 1) * Integer(N + 1);
  if (c == RConvention::Paper) return l.scaled(Rational(1, 1) / Rational(base * d));
  return l.scaled(Rational(-1, 1) / Rational(base * ipow(Integer(d), N)));
}

LogMag r_normalized(const PolyMap& f, const Place& place, RConvention c) {
  return r_normalized(macaulay_resultant(f), f.degree(), f.dimension(), place, c);
}

std::vector<std::optional<std::vector<HomoForm>>> solve_certificates(const PolyMap& f,
                                                                     const std::vector<HomoForm>& targets) {
  check_square_system(f);
  if (targets.empty()) return {};
  const std::size_t n = f.nvars();
  const unsigned d = f.degree();
  const unsigned m = targets.front().degree();
  for (const auto& t : targets) {
    if (t.nvars() != n) throw PreconditionError("certificate target has the wrong number of variables");
    if (t.degree() != m) throw PreconditionError("certificate targets must share a degree");
  }
  std::vector<std::optional<std::vector<HomoForm>>> out(targets.size());
  if (m < d) return out;
  const auto rows = monomials(n, m);
  const auto row_index = monomial_index(rows);
  const auto cofactor_monomials = monomials(n, m - d);
  const std::size_t per = cofactor_monomials.size();
  RatMatrix a(rows.size(), std::vector<Rational>(n * per, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < per; ++k)
      for (const auto& [e, c] : f[i].terms()) {
        Exponent t = e;
        for (std::size_t v = 0; v < n; ++v) t[v] += cofactor_monomials[k][v];
        a[row_index.at(t)][i * per + k] = c;
      }
  auto unpack = [&](const RatMatrix& x, std::size_t col) {
    std::vector<HomoForm> eta;
    for (std::size_t i = 0; i < n; ++i) {
      HomoForm h(n, m - d);
      for (std::size_t k = 0; k < per; ++k) h.add_term(cofactor_monomials[k], x[i * per + k][col]);
      eta.push_back(std::move(h));
    }
    return eta;
  };
  RatMatrix b(rows.size(), std::vector<Rational>(targets.size(), Rational(0)));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto coeffs = targets[t].coefficients(rows, row_index);
    for (std::size_t r = 0; r < rows.size(); ++r) b[r][t] = coeffs[r];
  }
  if (auto x = solve_leftmost(a, b)) {
    for (std::size_t t = 0; t < targets.size(); ++t) out[t] = unpack(*x, t);
    return out;
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    RatMatrix bt(rows.size(), std::vector<Rational>(1));
    for (std::size_t r = 0; r < rows.size(); ++r) bt[r][0] = b[r][t];
    if (auto x = solve_leftmost(a, bt)) out[t] = unpack(*x, 0);
  }
  return out;
}

std::vector<HomoForm> elimination_certificate(const PolyMap& f, const HomoForm& phi) {
  const unsigned threshold = static_cast<unsigned>(f.nvars()) * f.degree();
  if (phi.degree() < threshold)
    throw PreconditionError("certificate degree " + std::to_string(phi.degree()) + " is below the threshold " +
                            std::to_string(threshold));
  if (macaulay_resultant(f) == 0) throw DomainError("not a morphism: resultant vanishes");
  auto sol = solve_certificates(f, {phi});
  if (!sol.front()) throw InternalError("no elimination certificate although Res != 0");
  return *sol.front();
}

HomoForm expand_certificate(const PolyMap& f, const std::vector<HomoForm>& eta) {
  if (eta.size() != f.nvars()) throw PreconditionError("certificate arity mismatch");
  HomoForm sum(f.nvars(), eta.front().degree() + f.degree());
  for (std::size_t i = 0; i < eta.size(); ++i) sum = sum + eta[i] * f[i];
  return sum;
}

}  // namespace greenfield
