#include "greenfield/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "greenfield/errors.hpp"
#include "greenfield/linalg.hpp"

namespace greenfield {

namespace {

// Largest J with (num/den)^J <= x, for num > den >= 1 and x >= 1.
unsigned floor_log_ratio(unsigned long num, unsigned long den, unsigned long x) {
  unsigned j = 0;
  Integer a = num, b = den;
  while (a <= Integer(x) * b) {
    ++j;
    a *= num;
    b *= den;
  }
  return j;
}

unsigned floor_t1(unsigned d, std::size_t N, unsigned n) {
  const long base = static_cast<long>(n) - static_cast<long>(d) * static_cast<long>(N + 1);
  if (base <= 1) return 0;
  return floor_log_ratio(N + 1, N, static_cast<unsigned long>(base));
}

unsigned floor_t2(std::size_t N, unsigned n) { return n < 1 ? 0 : floor_log_ratio(2 * N + 2, 2 * N + 1, n); }

unsigned ipow_u(unsigned d, unsigned k) {
  unsigned long r = 1;
  for (unsigned i = 0; i < k; ++i) r *= d;
  return static_cast<unsigned>(r);
}

std::vector<FactorTriple> factor_triples(std::size_t nvars, unsigned d, unsigned n) {
  std::vector<FactorTriple> out;
  for (std::size_t i = 0; i < nvars; ++i)
    for (unsigned k = 1; ipow_u(d, k) <= n; ++k)
      for (unsigned j = 1; j < d && j * ipow_u(d, k) <= n; ++j) out.push_back({i, k, j});
  std::sort(out.begin(), out.end());
  return out;
}

unsigned triple_degree(const FactorTriple& t, unsigned d) { return t.j * ipow_u(d, t.k); }

class FactorCache {
 public:
  explicit FactorCache(const DynSystem& system) : system_(system) {}
  const HomoForm& get(const FactorTriple& t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    HomoForm base = system_.iterate(t.k)[t.i];
    return cache_.emplace(t, base.pow(t.j)).first->second;
  }

 private:
  const DynSystem& system_;
  std::map<FactorTriple, HomoForm> cache_;
};

std::string monomial_string(const Exponent& e) { return HomoForm::monomial(e).to_string(); }

}  // namespace

std::string GenElement::describe() const {
  if (kind == Kind::Monomial) return monomial_string(monomial);
  std::string s = cofactor.to_string();
  for (const auto& t : factors)
    s += " * (F" + std::to_string(t.i) + "^[" + std::to_string(t.k) + "])^" + std::to_string(t.j);
  return s;
}

std::vector<unsigned> gen_degrees(unsigned d, unsigned nmax) {
  std::vector<unsigned> out;
  if (d < 2) throw PreconditionError("generator degrees need d >= 2");
  for (unsigned k = 1; ipow_u(d, k) <= nmax; ++k)
    for (unsigned j = 1; j < d && j * ipow_u(d, k) <= nmax; ++j) out.push_back(j * ipow_u(d, k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<unsigned> gen_degrees(const DynSystem& system, unsigned nmax) {
  return gen_degrees(system.degree(), nmax);
}

unsigned floor_G(unsigned d, std::size_t N, unsigned n) {
  if (n < d * (N + 1)) throw PreconditionError("floor_G needs n >= d(N+1)");
  unsigned best = 0;
  for (unsigned g : gen_degrees(d, n))
    if ((N + 1) * g <= n) best = g;
  return best;
}

unsigned floor_G(const DynSystem& system, unsigned n) { return floor_G(system.degree(), system.dimension(), n); }

double t1(unsigned d, std::size_t N, unsigned n) {
  const double base = std::max(1.0, static_cast<double>(n) - static_cast<double>(d * (N + 1)));
  return std::log(base) / std::log(static_cast<double>(N + 1) / static_cast<double>(N));
}

double t2(std::size_t N, unsigned n) {
  return std::log(static_cast<double>(n)) / std::log(static_cast<double>(2 * N + 2) / static_cast<double>(2 * N + 1));
}

bool keyratio_holds(unsigned d, std::size_t N, unsigned n) {
  const unsigned long gap = n - floor_G(d, N, n);
  // N n/(N+1) <= gap <= (2N+1) n/(2N+2), cleared of denominators.
  return N * n <= gap * (N + 1) && gap * (2 * N + 2) <= (2 * N + 1) * n;
}

SandwichScan keyratio_scan(unsigned d, std::size_t N, unsigned nmax) {
  SandwichScan scan;
  const unsigned start = d * static_cast<unsigned>(N + 1);
  scan.n0 = start;
  for (unsigned n = start; n <= nmax; ++n)
    if (!keyratio_holds(d, N, n)) {
      scan.last_violation = n;
      scan.n0 = n + 1;
    }
  return scan;
}

std::size_t c_of_n(const DynSystem& system, unsigned n) {
  const std::size_t nv = system.map().nvars();
  std::size_t c = count_monomials(nv, n);
  if (system.hypersurface()) {
    const unsigned g = system.hypersurface()->degree();
    if (n >= g) c -= count_monomials(nv, n - g);
  }
  return c;
}

bool enumerate_spanning(const DynSystem& system, unsigned n, bool relaxed,
                        const std::function<bool(const GenElement&)>& visit) {
  const unsigned d = system.degree();
  const std::size_t N = system.dimension();
  const std::size_t nv = N + 1;
  const unsigned cofactor_bound = d * static_cast<unsigned>(nv);  // deg eta < d(N+1)
  const unsigned lo_t1 = floor_t1(d, N, n);
  const unsigned hi_t2 = floor_t2(N, n);
  unsigned lo = relaxed ? 0 : lo_t1;
  unsigned hi = relaxed ? (lo_t1 == 0 ? 0 : lo_t1 - 1) : hi_t2;
  if (relaxed && lo_t1 == 0) return false;

  const auto triples = factor_triples(nv, d, n);
  std::vector<Exponent> cofactors;
  for (unsigned delta = 0; delta < cofactor_bound && delta <= n; ++delta)
    for (auto& e : monomials(nv, delta)) cofactors.push_back(std::move(e));

  FactorCache cache(system);
  std::vector<FactorTriple> chosen;
  bool stopped = false;

  // Lex-ordered multisets of `left` triples (indices >= from) of total degree `deg`.
  std::function<void(std::size_t, unsigned, unsigned, const HomoForm&, const Exponent&)> rec =
      [&](std::size_t from, unsigned left, unsigned deg, const HomoForm& partial, const Exponent& eta) {
        if (stopped) return;
        if (left == 0) {
          if (deg != 0) return;
          GenElement el;
          el.kind = GenElement::Kind::Product;
          el.cofactor = HomoForm::monomial(eta);
          el.factors = chosen;
          el.expanded = partial;
          if (!visit(el)) stopped = true;
          return;
        }
        if (deg < left * d) return;
        for (std::size_t t = from; t < triples.size() && !stopped; ++t) {
          const unsigned td = triple_degree(triples[t], d);
          if (td > deg) continue;
          // Remaining slots can only shrink deg by at least d each.
          if (left > 1 && deg - td < (left - 1) * d) continue;
          chosen.push_back(triples[t]);
          rec(t, left - 1, deg - td, partial * cache.get(triples[t]), eta);
          chosen.pop_back();
        }
      };

  for (unsigned count = lo; count <= hi && !stopped; ++count)
    for (const auto& eta : cofactors) {
      if (stopped) break;
      unsigned delta = 0;
      for (unsigned a : eta) delta += a;
      if (delta > n) continue;
      rec(0, count, n - delta, HomoForm::monomial(eta), eta);
    }
  return stopped;
}

std::vector<GenElement> spanning_family(const DynSystem& system, unsigned n, std::size_t limit) {
  std::vector<GenElement> out;
  const std::size_t nv = system.map().nvars();
  if (n < system.degree() * nv) {
    for (const auto& e : monomials(nv, n)) {
      if (out.size() >= limit) break;
      GenElement el;
      el.monomial = e;
      el.expanded = HomoForm::monomial(e);
      out.push_back(std::move(el));
    }
    return out;
  }
  auto collect = [&](const GenElement& el) {
    if (out.size() >= limit) return false;
    out.push_back(el);
    return out.size() < limit;
  };
  if (!enumerate_spanning(system, n, false, collect)) enumerate_spanning(system, n, true, collect);
  return out;
}

BasisFamily monomial_basis(std::size_t N, unsigned n) {
  if (n < 1) throw PreconditionError("monomial basis needs n >= 1");
  BasisFamily fam;
  fam.n = n;
  const auto mons = monomials(N + 1, n);
  for (std::size_t k = 0; k < mons.size(); ++k) {
    GenElement el;
    el.monomial = mons[k];
    el.expanded = HomoForm::monomial(mons[k]);
    fam.elements.push_back(std::move(el));
    fam.rank_profile.push_back(k);
  }
  fam.candidates_examined = mons.size();
  return fam;
}

BasisFamily special_basis(const DynSystem& system, unsigned n) {
  if (n < 1) throw PreconditionError("special basis needs n >= 1");
  const std::size_t nv = system.map().nvars();
  const auto mons = monomials(nv, n);
  const auto index = monomial_index(mons);
  const std::size_t target_c = c_of_n(system, n);
  const std::size_t cap = 50 * mons.size();

  IncrementalRank rank(mons.size());
  if (system.hypersurface() && n >= system.hypersurface()->degree()) {
    const HomoForm& g = *system.hypersurface();
    for (const auto& mu : monomials(nv, n - g.degree())) {
      const auto row = (g * HomoForm::monomial(mu)).coefficients(mons, index);
      rank.add(row);
    }
  }
  const std::size_t target = rank.rank() + target_c;

  BasisFamily fam;
  fam.n = n;
  auto consider = [&](const GenElement& el) {
    ++fam.candidates_examined;
    if (fam.candidates_examined > cap)
      throw ResourceError("spanning family cap of " + std::to_string(cap) + " candidates reached at rank " +
                          std::to_string(fam.elements.size()) + " of " + std::to_string(target_c));
    const auto row = el.expanded.coefficients(mons, index);
    if (auto pivot = rank.insert(row)) {
      fam.elements.push_back(el);
      fam.rank_profile.push_back(*pivot);
    }
    return rank.rank() < target;
  };

  if (n < system.degree() * nv) {
    for (const auto& e : mons) {
      GenElement el;
      el.monomial = e;
      el.expanded = HomoForm::monomial(e);
      if (!consider(el)) break;
    }
  } else if (!enumerate_spanning(system, n, false, consider) && rank.rank() < target) {
    fam.relaxed_t1 = true;
    enumerate_spanning(system, n, true, consider);
  }
  if (rank.rank() < target) {
    const std::string msg = "special basis reached rank " + std::to_string(fam.elements.size()) + " of " +
                            std::to_string(target_c) + " after " + std::to_string(fam.candidates_examined) +
                            " candidates";
    if (system.hypersurface()) throw ResourceError(msg);
    throw InternalError(msg);
  }
  return fam;
}

}  // namespace greenfield
