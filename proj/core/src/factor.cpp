#include "greenfield/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "greenfield/errors.hpp"

namespace greenfield {

namespace {

constexpr unsigned kTrialBound = 1u << 16;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_base(const Integer& n, const Integer& d, unsigned long s, unsigned long base) {
  const Integer nm1 = n - 1;
  Integer x;
  Integer a = base;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

// ---- modular arithmetic back ends ----

// Arbitrary-size residues as plain mpz values in [0, n).
class MpzArith {
 public:
  using T = Integer;
  explicit MpzArith(const Integer& n) : n_(n) {}
  T from(const Integer& x) const {
    T r = x % n_;
    if (r < 0) r += n_;
    return r;
  }
  T mul(const T& a, const T& b) const {
    T r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
    return r;
  }
  T add(const T& a, const T& b) const {
    T r = a + b;
    if (r >= n_) r -= n_;
    return r;
  }
  T sub(const T& a, const T& b) const {
    T r = a - b;
    if (r < 0) r += n_;
    return r;
  }
  // Any representative with the same gcd against n.
  Integer gcd_rep(const T& a) const { return a; }
  const Integer& modulus() const { return n_; }

 private:
  Integer n_;
};

using u64 = std::uint64_t;
using u128 = unsigned __int128;

Integer to_integer(u128 v) {
  Integer r = static_cast<unsigned long>(v >> 64);
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<u64>(v));
  return r;
}

u128 to_u128(const Integer& z) {
  Integer hi = z >> 64;
  Integer lo = z - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

// Montgomery residues for odd n < 2^127, R = 2^128.
class Mont128 {
 public:
  using T = u128;
  explicit Mont128(const Integer& n) : n_(to_u128(n)), big_n_(n) {
    u128 inv = n_;  // Newton iteration for n^-1 mod 2^128
    for (int i = 0; i < 7; ++i) inv *= 2 - n_ * inv;
    ninv_ = -inv;
    Integer r2 = Integer(1) << 256;
    r2 %= n;
    r2_ = to_u128(r2);
  }
  T from(const Integer& x) const {
    Integer r = x % big_n_;
    if (r < 0) r += big_n_;
    return mul(to_u128(r), r2_);
  }
  T mul(T a, T b) const {
    u128 hi, lo;
    mul_full(a, b, hi, lo);
    const u128 m = lo * ninv_;
    u128 mhi, mlo;
    mul_full(m, n_, mhi, mlo);
    u128 r = hi + mhi + (lo != 0 ? 1 : 0);
    if (r >= n_) r -= n_;
    return r;
  }
  T add(T a, T b) const {
    u128 r = a + b;
    if (r >= n_) r -= n_;
    return r;
  }
  T sub(T a, T b) const { return a >= b ? a - b : a + n_ - b; }
  Integer gcd_rep(T a) const { return to_integer(a); }
  const Integer& modulus() const { return big_n_; }

 private:
  static void mul_full(u128 a, u128 b, u128& hi, u128& lo) {
    const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    lo = (mid << 64) | static_cast<u64>(p00);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }

  u128 n_;
  u128 ninv_;
  u128 r2_;
  Integer big_n_;
};

Integer gcd_with(const Integer& a, const Integer& n) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return g;
}

const std::vector<bool>& prime_sieve(unsigned long bound) {
  static std::mutex mutex;
  static std::map<unsigned long, std::vector<bool>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<bool> is_p(bound + 1, true);
  is_p[0] = false;
  if (bound >= 1) is_p[1] = false;
  for (unsigned long i = 2; i * i <= bound; ++i)
    if (is_p[i])
      for (unsigned long j = i * i; j <= bound; j += i) is_p[j] = false;
  return cache.emplace(bound, std::move(is_p)).first->second;
}

// ---- elliptic-curve method on Montgomery curves, x-only arithmetic ----

template <class A>
class Curve {
 public:
  using T = typename A::T;
  struct XZ {
    T x, z;
  };

  Curve(const A& ar, T a24) : ar_(ar), a24_(a24) {}

  XZ dbl(const XZ& p) const {
    T s = ar_.add(p.x, p.z);
    T d = ar_.sub(p.x, p.z);
    s = ar_.mul(s, s);
    d = ar_.mul(d, d);
    const T t = ar_.sub(s, d);
    return {ar_.mul(s, d), ar_.mul(t, ar_.add(d, ar_.mul(a24_, t)))};
  }

  XZ add(const XZ& p, const XZ& q, const XZ& diff) const {
    const T u = ar_.mul(ar_.sub(p.x, p.z), ar_.add(q.x, q.z));
    const T v = ar_.mul(ar_.add(p.x, p.z), ar_.sub(q.x, q.z));
    const T s = ar_.add(u, v);
    const T d = ar_.sub(u, v);
    return {ar_.mul(diff.z, ar_.mul(s, s)), ar_.mul(diff.x, ar_.mul(d, d))};
  }

  // Returns (kP, (k+1)P) for k >= 1.
  std::pair<XZ, XZ> ladder(unsigned long k, const XZ& p) const {
    XZ r0 = p, r1 = dbl(p);
    const int bits = 64 - __builtin_clzl(k);
    for (int b = bits - 2; b >= 0; --b) {
      if ((k >> b) & 1) {
        r0 = add(r1, r0, p);
        r1 = dbl(r1);
      } else {
        r1 = add(r0, r1, p);
        r0 = dbl(r0);
      }
    }
    return {r0, r1};
  }

 private:
  const A& ar_;
  T a24_;
};

// One ECM curve (Suyama parametrization). Returns a nontrivial factor or 0.
template <class A>
Integer ecm_curve(const A& ar, unsigned long sigma_value, unsigned long b1, unsigned long b2) {
  const Integer& n = ar.modulus();
  const Integer sigma = sigma_value;
  Integer u = (sigma * sigma - 5) % n;
  Integer v = (4 * sigma) % n;
  Integer x0 = u * u % n * u % n;
  Integer z0 = v * v % n * v % n;
  Integer vu = v - u;
  Integer num = vu * vu % n * vu % n * ((3 * u + v) % n) % n;
  Integer den = 16 * x0 % n * v % n;
  if (den < 0) den += n;
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t()) == 0) {
    Integer g = gcd_with(den, n);
    return (g != 1 && g != n) ? g : Integer(0);
  }
  Integer a24 = num * inv % n;
  if (a24 < 0) a24 += n;
  using C = Curve<A>;
  using XZ = typename C::XZ;
  C curve(ar, ar.from(a24));

  XZ q{ar.from(x0), ar.from(z0)};
  const auto& sieve = prime_sieve(b2 + 2310);
  for (unsigned long p = 2; p <= b1; ++p) {
    if (!sieve[p]) continue;
    unsigned long pe = p;
    while (pe <= b1 / p) pe *= p;
    q = curve.ladder(pe, q).first;
  }
  Integer g = gcd_with(ar.gcd_rep(q.z), n);
  if (g == n) return 0;
  if (g != 1) return g;

  // Stage 2: baby steps j*Q (j odd, coprime to D), giant steps m*D*Q.
  constexpr unsigned long D = 210;
  std::vector<unsigned long> js;
  std::vector<XZ> baby;
  {
    const XZ q2 = curve.dbl(q);
    XZ prev = q, cur = curve.add(q2, q, q);  // Q, 3Q
    std::vector<XZ> odd{q, cur};
    for (unsigned long j = 5; j < D / 2; j += 2) {
      XZ next = curve.add(cur, q2, prev);
      prev = cur;
      cur = next;
      odd.push_back(cur);
    }
    for (unsigned long j = 1, idx = 0; j < D / 2; j += 2, ++idx) {
      if (std::gcd(j, D) != 1) continue;
      js.push_back(j);
      baby.push_back(odd[idx]);
    }
  }
  const XZ giant_step = curve.ladder(D, q).first;
  unsigned long m = std::max<unsigned long>(1, b1 / D);
  auto [gm, gnext] = curve.ladder(m, giant_step);
  XZ gprev{};
  bool have_prev = false;
  auto acc = ar.from(Integer(1));
  for (;; ++m) {
    const unsigned long center = m * D;
    if (center > b2 + D) break;
    for (std::size_t t = 0; t < js.size(); ++t) {
      const unsigned long lo = center - js[t], hi = center + js[t];
      const bool want = (lo > b1 && lo <= b2 && sieve[lo]) || (hi > b1 && hi <= b2 && sieve[hi]);
      if (!want) continue;
      acc = ar.mul(acc, ar.sub(ar.mul(gm.x, baby[t].z), ar.mul(baby[t].x, gm.z)));
    }
    XZ next = have_prev ? curve.add(gm, giant_step, gprev) : gnext;
    have_prev = true;
    gprev = gm;
    gm = next;
  }
  g = gcd_with(ar.gcd_rep(acc), n);
  if (g != 1 && g != n) return g;
  return 0;
}

template <class A>
Integer pollard_brent(const A& ar, unsigned long c_value, unsigned long max_iter) {
  using T = typename A::T;
  const Integer& n = ar.modulus();
  const T c = ar.from(Integer(c_value));
  T y = ar.from(Integer(2)), x = y, ys = y, q = ar.from(Integer(1));
  Integer g = 1;
  unsigned long r = 1;
  constexpr unsigned long m = 128;
  unsigned long iter = 0;
  auto step = [&](T v) { return ar.add(ar.mul(v, v), c); };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      const unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        y = step(y);
        q = ar.mul(q, ar.sub(x, y));
      }
      g = gcd_with(ar.gcd_rep(q), n);
      k += lim;
      iter += lim;
    }
    r *= 2;
    if (iter > max_iter) break;
  }
  if (g == n) {
    // Backtrack one step at a time.
    do {
      ys = step(ys);
      g = gcd_with(ar.gcd_rep(ar.sub(x, ys)), n);
    } while (g == 1);
  }
  if (g == 1 || g == n) return 0;
  return g;
}

template <class A>
Integer split_with(const A& ar) {
  for (unsigned long c = 1; c <= 3; ++c)
    if (Integer d = pollard_brent(ar, c, 1ul << 13); d != 0) return d;
  unsigned long sigma = 6;
  for (unsigned long b1 = 2000; b1 <= 250000; b1 = b1 * 5 / 2)
    for (int curve = 0; curve < 60; ++curve, ++sigma)
      if (Integer d = ecm_curve(ar, sigma, b1, 100 * b1); d != 0) return d;
  throw ResourceError("factorization failed for " + ar.modulus().get_str());
}

Integer split(const Integer& n) {
  // Perfect powers first; rho and ECM are weak on them.
  for (unsigned long k = 2; k <= 64; ++k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
    if (root < 2) break;
  }
  if (mpz_even_p(n.get_mpz_t())) return 2;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) < 127) return split_with(Mont128(n));
  return split_with(MpzArith(n));
}

void factor_rec(const Integer& n, std::map<Integer, unsigned long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = split(n);
  Integer e = n / d;
  factor_rec(d, out);
  factor_rec(e, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  static const Integer deterministic_bound("3317044064679887385961981", 10);
  if (n < deterministic_bound) {
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul})
      if (!miller_rabin_base(n, d, s, a)) return false;
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<PrimePower> factor(const Integer& n_in) {
  if (n_in == 0) throw DomainError("factorization of zero");
  Integer n = n_in < 0 ? Integer(-n_in) : n_in;
  std::map<Integer, unsigned long> found;
  for (unsigned p : small_primes()) {
    if (Integer(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned long e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      found[Integer(p)] += e;
    }
  }
  factor_rec(n, found);
  std::vector<PrimePower> out;
  out.reserve(found.size());
  for (auto& [p, e] : found) out.push_back({p, e});
  return out;
}

std::vector<Integer> prime_support(const Rational& q) {
  if (q == 0) throw DomainError("support of zero");
  std::vector<Integer> out;
  for (auto& pp : factor(q.get_num())) out.push_back(pp.prime);
  for (auto& pp : factor(q.get_den())) out.push_back(pp.prime);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace greenfield
