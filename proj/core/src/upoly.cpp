#include "greenfield/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>

#include "greenfield/errors.hpp"
#include "greenfield/factor.hpp"

namespace greenfield {

UPoly::UPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Integer& UPoly::lead() const {
  if (c_.empty()) throw DomainError("leading coefficient of zero");
  return c_.back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Integer> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Integer> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Integer> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::scaled(const Integer& k) const {
  std::vector<Integer> r = c_;
  for (auto& v : r) v *= k;
  return UPoly(std::move(r));
}

Integer UPoly::content() const {
  if (is_zero()) return 0;
  Integer g = 0;
  for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return sgn(lead()) < 0 ? Integer(-g) : g;
}

UPoly UPoly::primitive() const {
  if (is_zero()) return {};
  const Integer g = content();
  std::vector<Integer> r = c_;
  for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return UPoly(std::move(r));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Integer> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(r));
}

Rational UPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Integer& v = c_[i];
    if (v == 0) continue;
    const Integer a = abs(v);
    if (s.empty()) {
      if (v < 0) s += "-";
    } else {
      s += v < 0 ? " - " : " + ";
    }
    const bool unit = a == 1 && i > 0;
    if (!unit) s += a.get_str();
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

bool divides(const UPoly& b, const UPoly& a, UPoly* quotient) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) {
    if (quotient) *quotient = {};
    return true;
  }
  if (a.degree() < b.degree()) return false;
  std::vector<Integer> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Integer> q(r.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = r[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), bc.back().get_mpz_t())) return false;
    Integer t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), bc.back().get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * bc[j];
    q[k] = t;
  }
  for (std::size_t j = 0; j < db; ++j)
    if (r[j] != 0) return false;
  if (quotient) *quotient = UPoly(std::move(q));
  return true;
}

namespace {

UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
  std::vector<Integer> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  while (!r.empty() && r.size() - 1 >= db) {
    const Integer top = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& v : r) v *= bc.back();
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= top * bc[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    // Keep the coefficients from growing without bound.
    if (!r.empty()) {
      UPoly t(r);
      r = t.primitive().coeffs();
    }
  }
  return UPoly(std::move(r));
}

}  // namespace

UPoly gcd(const UPoly& a0, const UPoly& b0) {
  UPoly a = a0.primitive(), b = b0.primitive();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    UPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.primitive();
  }
  return a.primitive();
}

namespace {

// ---- polynomials over F_p, p < 2^31 -----------------------------------

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Fp {
  u64 p;
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly reduce(const UPoly& f, u64 p) {
  ModPoly r;
  const Integer P(static_cast<unsigned long>(p));
  for (const auto& c : f.coeffs()) {
    Integer m;
    mpz_fdiv_r(m.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    r.push_back(m.get_ui());
  }
  trim(r);
  return r;
}

ModPoly mp_sub(const Fp& F, const ModPoly& a, const ModPoly& b) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

ModPoly mp_mul(const Fp& F, const ModPoly& a, const ModPoly& b) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return r;
}

// a = q b + r.
void mp_divrem(const Fp& F, ModPoly a, const ModPoly& b, ModPoly* q, ModPoly* r) {
  if (b.empty()) throw InternalError("division by zero modulo p");
  const u64 inv = F.inv(b.back());
  ModPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!a.empty() && a.size() >= b.size()) {
    const u64 t = F.mul(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    quot[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = F.sub(a[shift + j], F.mul(t, b[j]));
    trim(a);
  }
  if (q) {
    trim(quot);
    *q = std::move(quot);
  }
  if (r) *r = std::move(a);
}

ModPoly mp_mod(const Fp& F, const ModPoly& a, const ModPoly& m) {
  ModPoly r;
  mp_divrem(F, a, m, nullptr, &r);
  return r;
}

ModPoly mp_monic(const Fp& F, ModPoly a) {
  if (a.empty()) return a;
  const u64 inv = F.inv(a.back());
  for (auto& v : a) v = F.mul(v, inv);
  return a;
}

ModPoly mp_gcd(const Fp& F, ModPoly a, ModPoly b) {
  while (!b.empty()) {
    ModPoly r = mp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(F, a);
}

// s, t with s a + t b = gcd(a, b) = 1 assumed.
void mp_bezout(const Fp& F, const ModPoly& a, const ModPoly& b, ModPoly* s, ModPoly* t) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    ModPoly q, r;
    mp_divrem(F, r0, r1, &q, &r);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = mp_sub(F, s0, mp_mul(F, q, s1));
    ModPoly t2 = mp_sub(F, t0, mp_mul(F, q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw InternalError("Hensel factors are not coprime modulo p");
  const u64 inv = F.inv(r0[0]);
  for (auto& v : s0) v = F.mul(v, inv);
  for (auto& v : t0) v = F.mul(v, inv);
  *s = std::move(s0);
  *t = std::move(t0);
}

ModPoly mp_powmod(const Fp& F, ModPoly base, const Integer& e, const ModPoly& m) {
  ModPoly r{1};
  base = mp_mod(F, base, m);
  for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
    r = mp_mod(F, mp_mul(F, r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), bit)) r = mp_mod(F, mp_mul(F, r, base), m);
  }
  return r;
}

ModPoly mp_derivative(const Fp& F, const ModPoly& a) {
  ModPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], i % F.p));
  trim(r);
  return r;
}

// (factor, degree of each irreducible piece), f monic squarefree.
std::vector<std::pair<ModPoly, unsigned>> distinct_degree(const Fp& F, ModPoly f) {
  std::vector<std::pair<ModPoly, unsigned>> out;
  const ModPoly x{0, 1};
  ModPoly h = x;
  const Integer P(static_cast<unsigned long>(F.p));
  for (unsigned i = 1; 2 * i <= f.size() - 1; ++i) {
    h = mp_powmod(F, h, P, f);
    ModPoly g = mp_gcd(F, f, mp_sub(F, h, x));
    if (g.size() > 1) {
      out.emplace_back(g, i);
      ModPoly q;
      mp_divrem(F, f, g, &q, nullptr);
      f = std::move(q);
      h = mp_mod(F, h, f);
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<unsigned>(f.size() - 1));
  return out;
}

void equal_degree(const Fp& F, const ModPoly& g, unsigned r, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  const std::size_t n = g.size() - 1;
  if (n == r) {
    out.push_back(g);
    return;
  }
  Integer e = 1;
  for (unsigned i = 0; i < r; ++i) e *= static_cast<unsigned long>(F.p);
  e = (e - 1) / 2;
  for (;;) {
    ModPoly a(n);
    for (auto& v : a) v = rng() % F.p;
    trim(a);
    if (a.size() < 2) continue;
    ModPoly b = mp_powmod(F, a, e, g);
    if (b.empty()) continue;
    b[0] = F.sub(b[0], 1);
    trim(b);
    ModPoly d = mp_gcd(F, g, b);
    if (d.size() > 1 && d.size() < g.size()) {
      ModPoly q;
      mp_divrem(F, g, d, &q, nullptr);
      equal_degree(F, d, r, rng, out);
      equal_degree(F, mp_monic(F, q), r, rng, out);
      return;
    }
  }
}

// ---- Hensel lifting ----------------------------------------------------

Integer smod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

UPoly smod(const UPoly& a, const Integer& m) {
  std::vector<Integer> r = a.coeffs();
  for (auto& v : r) v = smod(v, m);
  return UPoly(std::move(r));
}

UPoly lift_int(const ModPoly& a) {
  std::vector<Integer> r;
  for (u64 v : a) r.emplace_back(static_cast<unsigned long>(v));
  return UPoly(std::move(r));
}

// f = G H mod p^a with G monic, lc(H) = lc(f); g and h are the mod p seeds.
void hensel_two(const Fp& F, const UPoly& f, const ModPoly& g, const ModPoly& h, unsigned a, UPoly* G, UPoly* H) {
  ModPoly s, t;
  mp_bezout(F, g, h, &s, &t);
  const Integer p(static_cast<unsigned long>(F.p));
  UPoly Gi = lift_int(g);
  std::vector<Integer> hc = lift_int(h).coeffs();
  hc.back() = f.lead();
  UPoly Hi(hc);
  Integer pk = p;
  for (unsigned k = 1; k < a; ++k) {
    const Integer next = pk * p;
    UPoly e = smod(f - Gi * Hi, next);
    std::vector<Integer> ec = e.coeffs();
    for (auto& v : ec) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pk.get_mpz_t());
    const ModPoly em = reduce(UPoly(ec), F.p);
    const ModPoly tau = mp_mod(F, mp_mul(F, t, em), g);
    ModPoly sigma, rem;
    mp_divrem(F, mp_sub(F, em, mp_mul(F, tau, h)), g, &sigma, &rem);
    if (!rem.empty()) throw InternalError("Hensel step lost exactness");
    Gi = smod(Gi + lift_int(tau).scaled(pk), next);
    Hi = smod(Hi + lift_int(sigma).scaled(pk), next);
    pk = next;
  }
  *G = Gi;
  *H = Hi;
}

// Monic lifts of the mod p factors of f (lc(f) invertible mod p).
std::vector<UPoly> hensel_all(const Fp& F, UPoly f, std::vector<ModPoly> factors, unsigned a) {
  const Integer p(static_cast<unsigned long>(F.p));
  Integer m = 1;
  for (unsigned i = 0; i < a; ++i) m *= p;
  std::vector<UPoly> out;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    ModPoly rest{1};
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = mp_mul(F, rest, factors[j]);
    const ModPoly fm = reduce(f, F.p);
    rest = mp_mul(F, rest, ModPoly{fm.back()});
    UPoly G, H;
    hensel_two(F, f, factors[i], rest, a, &G, &H);
    out.push_back(G);
    f = H;
  }
  // The last factor is f / lc(f) mod p^a.
  Integer inv;
  if (!mpz_invert(inv.get_mpz_t(), f.lead().get_mpz_t(), m.get_mpz_t()))
    throw InternalError("leading coefficient not invertible modulo p^a");
  out.push_back(smod(f.scaled(inv), m));
  return out;
}

Integer mignotte_bound(const UPoly& f) {
  Integer s = 0;
  for (const auto& c : f.coeffs()) s += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), s.get_mpz_t());
  root += 1;
  Integer two_n = 1;
  mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), static_cast<unsigned long>(f.degree()));
  return abs(f.lead()) * two_n * root;
}

// Irreducible factors of a primitive squarefree f with positive lead.
std::vector<UPoly> factor_squarefree(const UPoly& f) {
  if (f.degree() <= 1) return {f};
  // Among the first few suitable primes keep the one with fewest factors.
  u64 best_p = 0;
  std::size_t best_count = 0;
  std::vector<std::pair<ModPoly, unsigned>> best_ddf;
  std::size_t tried = 0;
  for (u64 p = 3; tried < 5 && p < (1u << 20); p += 2) {
    if (!is_prime(Integer(static_cast<unsigned long>(p)))) continue;
    const Fp F{p};
    const ModPoly fm = reduce(f, p);
    if (fm.size() != f.coeffs().size()) continue;  // p divides the lead
    if (mp_gcd(F, fm, mp_derivative(F, fm)).size() != 1) continue;
    ++tried;
    auto ddf = distinct_degree(F, mp_monic(F, fm));
    std::size_t count = 0;
    for (const auto& [g, d] : ddf) count += (g.size() - 1) / d;
    if (best_p == 0 || count < best_count) {
      best_p = p;
      best_count = count;
      best_ddf = std::move(ddf);
    }
    if (count == 1) break;
  }
  if (best_p == 0) throw InternalError("no suitable prime for factorization");
  if (best_count == 1) return {f};
  const Fp F{best_p};
  std::mt19937_64 rng(0x5eed);
  std::vector<ModPoly> mods;
  for (const auto& [g, d] : best_ddf) equal_degree(F, g, d, rng, mods);
  std::sort(mods.begin(), mods.end(), [](const ModPoly& a, const ModPoly& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });

  const Integer bound = 2 * mignotte_bound(f) + 1;
  const Integer p(static_cast<unsigned long>(best_p));
  unsigned a = 1;
  Integer m = p;
  while (m <= bound) {
    m *= p;
    ++a;
  }
  std::vector<UPoly> lifted = hensel_all(F, f, mods, a);

  // Recombination over subsets of increasing size.
  std::vector<UPoly> out;
  UPoly rest = f;
  std::vector<bool> used(lifted.size(), false);
  std::size_t remaining = lifted.size();
  for (std::size_t size = 1; 2 * size <= remaining; ++size) {
    bool found = true;
    while (found && 2 * size <= remaining) {
      found = false;
      std::vector<std::size_t> live;
      for (std::size_t i = 0; i < lifted.size(); ++i)
        if (!used[i]) live.push_back(i);
      std::vector<std::size_t> pick(size);
      for (std::size_t i = 0; i < size; ++i) pick[i] = i;
      for (;;) {
        UPoly cand = UPoly::constant(rest.lead());
        for (std::size_t i : pick) cand = smod(cand * lifted[live[i]], m);
        cand = cand.primitive();
        UPoly q;
        if (divides(cand, rest, &q)) {
          out.push_back(cand);
          rest = q;
          for (std::size_t i : pick) used[live[i]] = true;
          remaining -= size;
          found = true;
          break;
        }
        // Next size-subset of live indices in lex order.
        std::size_t k = size;
        while (k > 0 && pick[k - 1] == live.size() - size + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < size; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  if (rest.degree() > 0) out.push_back(rest.primitive());
  return out;
}

}  // namespace

UFactorization factor_over_q(const UPoly& f) {
  if (f.is_zero()) throw DomainError("factorization of the zero polynomial");
  UFactorization out;
  out.unit = f.content();
  UPoly g = f.primitive();
  if (g.degree() == 0) return out;

  // Yun's squarefree decomposition.
  std::vector<std::pair<UPoly, unsigned>> parts;
  UPoly d0 = g.derivative();
  UPoly a = gcd(g, d0);
  UPoly b, c;
  divides(a, g, &b);
  divides(a, d0, &c);
  UPoly d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    UPoly ai = d.is_zero() ? b.primitive() : gcd(b, d);
    if (ai.degree() > 0) parts.emplace_back(ai, i);
    UPoly nb, nc;
    divides(ai, b, &nb);
    divides(ai, d, &nc);
    b = nb;
    d = nc - b.derivative();
  }
  for (const auto& [part, mult] : parts)
    for (auto& irr : factor_squarefree(part.primitive())) out.factors.push_back({irr.primitive(), mult});
  std::sort(out.factors.begin(), out.factors.end(), [](const UFactor& x, const UFactor& y) {
    if (x.poly.degree() != y.poly.degree()) return x.poly.degree() < y.poly.degree();
    if (x.poly.coeffs() != y.poly.coeffs()) return x.poly.coeffs() < y.poly.coeffs();
    return x.multiplicity < y.multiplicity;
  });
  return out;
}

}  // namespace greenfield
