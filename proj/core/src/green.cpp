#include "greenfield/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "greenfield/errors.hpp"
#include "greenfield/linalg.hpp"
#include "greenfield/parallel.hpp"

namespace greenfield {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_lifts(const BasisFamily& basis, const std::vector<ProjPoint>& lifts) {
  if (basis.elements.empty()) throw PreconditionError("empty basis");
  if (lifts.size() != basis.c())
    throw PreconditionError("expected " + std::to_string(basis.c()) + " lifts, got " + std::to_string(lifts.size()));
  const std::size_t nv = basis.elements.front().expanded.nvars();
  const bool exact = lifts.front().is_exact();
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (lifts[i].size() != nv) throw PreconditionError("lift " + std::to_string(i) + " has the wrong dimension");
    if (lifts[i].is_exact() != exact) throw PreconditionError("lifts mix exact and numeric coordinates");
  }
}

// log|det| by partial pivoting, no error estimate. -inf when singular.
double fast_log_abs_det(ComplexMatrix m) {
  const std::size_t n = m.size();
  double out = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    const double a = std::abs(m[piv][k]);
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    std::swap(m[piv], m[k]);
    out += std::log(a);
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto f = m[i][k] / m[k][k];
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return out;
}

// Uniform double in [0, 1) from the top 53 bits; the same on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Restart {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Complex> points;
  std::size_t used = 0;
};

class FeketeObjective {
 public:
  FeketeObjective(const DynSystem& system, const BasisFamily& basis) : system_(system), basis_(basis) {}

  std::vector<Complex> row(Complex z) const {
    const std::vector<Complex> x{z, Complex(1.0, 0.0)};
    std::vector<Complex> r;
    r.reserve(basis_.c());
    for (const auto& el : basis_.elements) r.push_back(el.expanded.evaluate(std::span<const Complex>(x)));
    return r;
  }

  // n * H(z, 1), the log of the row scaling that puts the lift on H = 0.
  double row_weight(Complex z) const {
    const ProjPoint p = ProjPoint::numeric({z, Complex(1.0, 0.0)});
    return static_cast<double>(basis_.n) * escape_rate(system_, Place::archimedean(), p, 1e-13).approx();
  }

 private:
  const DynSystem& system_;
  const BasisFamily& basis_;
};

Restart run_restart(const FeketeObjective& obj, std::size_t c, double radius, std::size_t budget,
                    std::uint64_t seed) {
  Restart out;
  std::mt19937_64 rng(seed);
  constexpr std::size_t kPool = 64;
  std::vector<Complex> pool;
  for (std::size_t k = 0; k < std::max(kPool, 2 * c); ++k) {
    const double r = radius * std::sqrt(unit(rng));
    const double t = 2 * std::numbers::pi * unit(rng);
    pool.push_back(std::polar(r, t));
  }
  std::vector<std::vector<Complex>> pool_rows;
  std::vector<double> pool_weight;
  for (const auto& z : pool) {
    pool_rows.push_back(obj.row(z));
    pool_weight.push_back(obj.row_weight(z));
  }

  // Leja: grow the tuple by the pool point maximizing the leading minor.
  std::vector<Complex> pts;
  std::vector<std::vector<Complex>> rows;
  std::vector<double> weights;
  std::vector<bool> taken(pool.size(), false);
  while (pts.size() < c) {
    const std::size_t m = pts.size() + 1;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t pick = pool.size();
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (taken[k]) continue;
      if (out.used >= budget) return out;
      ++out.used;
      ComplexMatrix minor(m, std::vector<Complex>(m));
      for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = 0; j < m; ++j) minor[i][j] = rows[i][j];
      for (std::size_t j = 0; j < m; ++j) minor[m - 1][j] = pool_rows[k][j];
      const double v = fast_log_abs_det(std::move(minor)) - pool_weight[k];
      if (v > best) {
        best = v;
        pick = k;
      }
    }
    if (pick == pool.size()) return out;  // every remaining minor vanished
    taken[pick] = true;
    pts.push_back(pool[pick]);
    rows.push_back(pool_rows[pick]);
    weights.push_back(pool_weight[pick]);
  }

  double wsum = 0.0;
  for (double w : weights) wsum += w;
  double current = fast_log_abs_det(rows) - wsum;
  if (!std::isfinite(current)) return out;
  out.best = current;
  out.points = pts;

  // Cyclic coordinate ascent in (arg z, log|z|), eight directions per point.
  // Moving along arg alone follows circles, which is where the optimum of a
  // rotation-invariant Julia set sits. Each point keeps its own step: doubled
  // after a move, halved after a full miss.
  std::vector<double> step(c, 0.25);
  std::vector<std::size_t> last(c, 0);
  std::vector<std::pair<double, double>> dirs;
  for (int k = 0; k < 8; ++k) dirs.emplace_back(std::cos(std::numbers::pi * k / 4), std::sin(std::numbers::pi * k / 4));
  auto moved = [&](Complex z, double h, std::size_t k) {
    return std::polar(std::abs(z) * std::exp(h * dirs[k].second), std::arg(z) + h * dirs[k].first);
  };
  while (out.used < budget && *std::max_element(step.begin(), step.end()) > 1e-10) {
    for (std::size_t i = 0; i < c && out.used < budget; ++i) {
      if (step[i] <= 1e-10) continue;
      bool hit = false;
      for (std::size_t t = 0; t < dirs.size() && out.used < budget; ++t) {
        const std::size_t k = (last[i] + t) % dirs.size();
        const Complex z = moved(pts[i], step[i], k);
        auto r = obj.row(z);
        const double w = obj.row_weight(z);
        auto trial = rows;
        trial[i] = r;
        ++out.used;
        const double v = fast_log_abs_det(std::move(trial)) - (wsum - weights[i] + w);
        if (v > current) {
          pts[i] = z;
          rows[i] = std::move(r);
          wsum += w - weights[i];
          weights[i] = w;
          current = v;
          last[i] = k;
          hit = true;
          break;
        }
      }
      step[i] = hit ? std::min(0.5, 2 * step[i]) : step[i] / 2;
      if (hit && current > out.best) {
        out.best = current;
        out.points = pts;
      }
    }
  }
  return out;
}

}  // namespace

EvalDetLog eval_det_log(const BasisFamily& basis, const std::vector<ProjPoint>& lifts, const Place& place) {
  check_lifts(basis, lifts);
  EvalDetLog out;
  out.dimension = basis.c();
  out.degree = basis.n;
  const std::size_t c = basis.c();
  if (lifts.front().is_exact()) {
    RatMatrix m(c, std::vector<Rational>(c));
    for (std::size_t i = 0; i < c; ++i) {
      const auto& x = lifts[i].exact_coords();
      for (std::size_t j = 0; j < c; ++j) m[i][j] = basis.elements[j].expanded.evaluate(std::span<const Rational>(x));
    }
    const Rational det = determinant(m);
    if (det != 0) out.value = abs_log(place, det);
    return out;
  }
  if (!place.is_archimedean()) throw PreconditionError("numeric lifts need the archimedean place");
  ComplexMatrix m(c, std::vector<Complex>(c));
  std::vector<double> col_err(c, 0.0), col_abs(c, 0.0);
  for (std::size_t i = 0; i < c; ++i) {
    const auto& x = lifts[i].numeric_coords();
    for (std::size_t j = 0; j < c; ++j) {
      const auto& f = basis.elements[j].expanded;
      m[i][j] = f.evaluate(std::span<const Complex>(x));
      col_err[j] += f.evaluate_error(std::span<const Complex>(x));
      col_abs[j] += std::abs(m[i][j]);
    }
  }
  const ComplexLogDet r = complex_log_abs_det(m);
  if (r.singular) {
    out.numeric_singular = true;
    return out;
  }
  // The estimate is 4 c eps kappa; entry errors scale it by their relative size.
  double rel = 0.0;
  for (std::size_t j = 0; j < c; ++j)
    if (col_abs[j] > 0.0) rel = std::max(rel, col_err[j] / col_abs[j]);
  const double err = r.error * (1.0 + rel / (4.0 * kEps));
  out.value = LogMag::archimedean(r.log_abs, err + 2 * ulp(r.log_abs));
  return out;
}

GreenValue green_value(const DynSystem& system, const BasisFamily& basis, const std::vector<ProjPoint>& lifts,
                       const Place& place, RConvention convention, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const EvalDetLog det = eval_det_log(basis, lifts, place);
  GreenValue out;
  if (is_minus_infinity(det.value)) {
    out.infinite = true;
    return out;
  }
  const std::size_t c = basis.c();
  const double each = tol / static_cast<double>(2 * c);
  LogMag sum;
  double err = 0.0;
  for (const auto& p : lifts) {
    const EscapeRate h = escape_rate(system, place, p, each);
    sum += h.value;
    err += h.error;
  }
  const LogMag& ld = std::get<LogMag>(det.value);
  const LogMag r = r_normalized(system.map(), place, convention);
  out.value = sum.scaled(Rational(1, c)) - ld.scaled(Rational(1, basis.n * c)) + r;
  out.error = err / static_cast<double>(c) + ld.error_bound() / static_cast<double>(basis.n * c) + r.error_bound() +
              out.value.error_bound();
  return out;
}

ExtLogMag dbn_witness(const DynSystem& system, const BasisFamily& basis, const std::vector<ProjPoint>& lifts,
                      const Place& place, double tol) {
  check_lifts(basis, lifts);
  const auto& g = system.hypersurface();
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const ProjPoint& p = lifts[i];
    if (julia_membership(system, place, p, tol) == Membership::Outside)
      throw PreconditionError("lift " + std::to_string(i) + " lies outside the filled Julia set");
    if (!g) continue;
    if (p.is_exact()) {
      if (g->evaluate(std::span<const Rational>(p.exact_coords())) != 0)
        throw PreconditionError("lift " + std::to_string(i) + " is not on the hypersurface");
    } else {
      const auto& z = p.numeric_coords();
      double top = 0.0;
      for (const auto& v : z) top = std::max(top, std::abs(v));
      const double slack = 1e-9 * std::pow(top, g->degree()) + 4 * g->evaluate_error(std::span<const Complex>(z));
      if (std::abs(g->evaluate(std::span<const Complex>(z))) > slack)
        throw PreconditionError("lift " + std::to_string(i) + " is not on the hypersurface");
    }
  }
  const EvalDetLog det = eval_det_log(basis, lifts, place);
  if (is_minus_infinity(det.value)) return MinusInfinity{};
  return std::get<LogMag>(det.value).scaled(Rational(1, basis.n * basis.c()));
}

LogMag julia_radius_log(const DynSystem& system, const Place& place) {
  const Rational inv(1, system.degree() - 1);
  if (!place.is_archimedean() && system.reduction(place).type == Reduction::Good)
    return (-coeff_sup_log(system.map(), place)).scaled(inv);
  return system.growth(place).c_lo.scaled(inv);
}

LogMag hadamard_envelope(const DynSystem& system, unsigned n, const LogMag& r_log, const Place& place) {
  if (n < 2) throw PreconditionError("the envelope needs n >= 2");
  const unsigned d = system.degree();
  const std::size_t N = system.dimension();
  const std::size_t c = c_of_n(system, n);
  // Largest J with ((2N+2)/(2N+1))^J <= n.
  unsigned t2 = 0;
  {
    Integer a = 2 * N + 2, b = 2 * N + 1;
    while (a <= Integer(n) * b) {
      ++t2;
      a *= 2 * N + 2;
      b *= 2 * N + 1;
    }
  }
  // Entries are monomial cofactors of degree < d(N+1) times at most t2
  // factors F_i^(k) raised to j <= d-1, each bounded by R on the Julia set.
  const unsigned long exponent = d * (N + 1) - 1 + static_cast<unsigned long>(t2) * (d - 1);
  LogMag out;
  if (r_log.value() > 0.0) out = r_log.scaled(Rational(Integer(c * exponent)));
  if (place.is_archimedean()) {
    const double cd = static_cast<double>(c);
    const double extra = 0.5 * cd * std::log(cd);
    out += LogMag::archimedean(extra, 4 * ulp(extra));
  }
  return out;
}

LogMag hadamard_envelope(const DynSystem& system, unsigned n, const Place& place) {
  return hadamard_envelope(system, n, julia_radius_log(system, place), place);
}

FeketeResult fekete_search(const DynSystem& system, const BasisFamily& basis, std::size_t budget,
                           std::uint64_t seed, std::size_t restarts) {
  if (system.dimension() != 1 || system.hypersurface())
    throw PreconditionError("Fekete search is implemented for P^1 systems");
  if (basis.elements.empty()) throw PreconditionError("empty basis");
  if (restarts == 0) throw PreconditionError("need at least one restart");
  const std::size_t c = basis.c();
  const double radius = std::max(1.0, std::exp(julia_radius_log(system, Place::archimedean()).value()));
  const FeketeObjective obj(system, basis);

  std::vector<Restart> runs(restarts);
  parallel_for(restarts, [&](std::size_t i) {
    const std::size_t share = budget / restarts + (i < budget % restarts ? 1 : 0);
    runs[i] = run_restart(obj, c, radius, share, seed + i);
  });

  FeketeResult out;
  std::size_t pick = restarts;
  for (std::size_t i = 0; i < restarts; ++i) {
    out.evaluations += runs[i].used;
    if (runs[i].points.empty()) continue;
    if (pick == restarts || runs[i].best > runs[pick].best) pick = i;
  }
  if (pick == restarts)
    throw ResourceError("budget of " + std::to_string(budget) + " evaluations exhausted before a nonsingular tuple");
  out.restart = pick;
  for (const auto& z : runs[pick].points) {
    const double s = std::exp(-obj.row_weight(z) / static_cast<double>(basis.n));
    out.lifts.push_back(ProjPoint::numeric({z * s, Complex(s, 0.0)}));
  }
  const EvalDetLog det = eval_det_log(basis, out.lifts, Place::archimedean());
  if (is_minus_infinity(det.value)) throw InternalError("Fekete tuple became singular on re-evaluation");
  out.witness = std::get<LogMag>(det.value).scaled(Rational(1, basis.n * c));
  return out;
}

}  // namespace greenfield
