#include "greenfield/homopoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "greenfield/errors.hpp"

namespace greenfield {

namespace {

unsigned exponent_sum(const Exponent& e) {
  unsigned s = 0;
  for (unsigned a : e) s += a;
  return s;
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// Neumaier summation of one real component.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

class FormParser {
 public:
  FormParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  HomoForm run(int degree_hint) {
    std::vector<std::pair<Exponent, Rational>> terms;
    skip_ws();
    if (pos_ == text_.size()) fail("empty form");
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      terms.emplace_back(std::move(e), sign * c);
      skip_ws();
    }
    int degree = degree_hint;
    for (const auto& [e, c] : terms) {
      if (c == 0) continue;
      const int s = static_cast<int>(exponent_sum(e));
      if (degree < 0) degree = s;
      if (s != degree) throw ParseError("inhomogeneous form: term degrees differ", 1, 1);
    }
    if (degree < 0) throw ParseError("zero form needs an explicit degree", 1, 1);
    HomoForm f(nvars_, static_cast<unsigned>(degree));
    for (const auto& [e, c] : terms)
      if (c != 0) f.add_term(e, c);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'", 1,
                     pos_ + 1);
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::pair<Exponent, Rational> term() {
    Exponent e(nvars_, 0);
    Rational c = 1;
    for (;;) {
      skip_ws();
      factor(e, c);
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return {e, c};
  }

  void factor(Exponent& e, Rational& c) {
    const char ch = peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) fail("missing denominator");
        Rational q(Integer(num, 10), Integer(den, 10));
        if (q.get_den() == 0) fail("zero denominator");
        q.canonicalize();
        c *= q;
      } else {
        c *= Rational(Integer(num, 10));
      }
      return;
    }
    std::size_t var = 0;
    if (ch == 'x' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      var = std::stoul(digits());
    } else if (nvars_ <= 4 && (ch == 'x' || ch == 'y' || ch == 'z' || ch == 'w')) {
      var = ch == 'x' ? 0 : ch == 'y' ? 1 : ch == 'z' ? 2 : 3;
      ++pos_;
    } else {
      fail(ch == '\0' ? "unexpected end of form" : std::string("unexpected character '") + ch + "'");
    }
    if (var >= nvars_) fail("variable index out of range");
    unsigned power = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::string p = digits();
      if (p.empty()) fail("missing exponent");
      power = static_cast<unsigned>(std::stoul(p));
    }
    e[var] += power;
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------- HomoForm

HomoForm::HomoForm(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
  if (nvars == 0) throw PreconditionError("form needs at least one variable");
}

HomoForm HomoForm::monomial(const Exponent& e, const Rational& c) {
  HomoForm f(e.size(), exponent_sum(e));
  f.add_term(e, c);
  return f;
}

HomoForm HomoForm::variable(std::size_t nvars, std::size_t i) {
  Exponent e(nvars, 0);
  e.at(i) = 1;
  return monomial(e);
}

HomoForm HomoForm::constant(std::size_t nvars, const Rational& c) { return monomial(Exponent(nvars, 0), c); }

HomoForm HomoForm::parse(std::string_view text, std::size_t nvars, int degree_hint) {
  return FormParser(text, nvars).run(degree_hint);
}

Rational HomoForm::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomoForm::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw PreconditionError("exponent length does not match variable count");
  if (exponent_sum(e) != degree_) throw PreconditionError("term degree does not match form degree");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void HomoForm::check_compatible(const HomoForm& o) const {
  if (nvars_ != o.nvars_) throw PreconditionError("forms in different numbers of variables");
}

HomoForm HomoForm::operator+(const HomoForm& o) const {
  check_compatible(o);
  if (degree_ != o.degree_ && !o.is_zero() && !is_zero()) throw PreconditionError("sum of forms of different degree");
  if (is_zero()) return o;
  HomoForm r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

HomoForm HomoForm::operator-(const HomoForm& o) const { return *this + (-o); }

HomoForm HomoForm::operator-() const {
  HomoForm r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

HomoForm HomoForm::operator*(const HomoForm& o) const {
  check_compatible(o);
  HomoForm r(nvars_, degree_ + o.degree_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
  return r;
}

HomoForm HomoForm::scaled(const Rational& c) const {
  if (c == 0) return HomoForm(nvars_, degree_);
  HomoForm r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

HomoForm HomoForm::pow(unsigned e) const {
  HomoForm result = constant(nvars_, 1);
  HomoForm base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Rational HomoForm::evaluate(std::span<const Rational> x) const {
  if (x.size() != nvars_) throw PreconditionError("point dimension does not match form");
  std::vector<std::vector<Rational>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].reserve(degree_ + 1);
    powers[i].emplace_back(1);
    for (unsigned k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * x[i]);
  }
  Rational sum = 0;
  Rational t;
  for (const auto& [e, c] : terms_) {
    t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= powers[i][e[i]];
    sum += t;
  }
  return sum;
}

Complex HomoForm::evaluate(std::span<const Complex> x) const {
  if (x.size() != nvars_) throw PreconditionError("point dimension does not match form");
  CompensatedSum re, im;
  for (const auto& [e, c] : terms_) {
    Complex t = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    re.add(t.real());
    im.add(t.imag());
  }
  return {re.value(), im.value()};
}

double HomoForm::evaluate_error(std::span<const Complex> x) const {
  double magnitude = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = std::fabs(c.get_d());
    for (std::size_t i = 0; i < nvars_; ++i) t *= std::pow(std::abs(x[i]), e[i]);
    magnitude += t;
  }
  const double unit = std::numeric_limits<double>::epsilon();
  return 8.0 * static_cast<double>(std::max<std::size_t>(terms_.size(), 1) + degree_) * unit * magnitude;
}

std::vector<Rational> HomoForm::coefficients(const std::vector<Exponent>& list,
                                             const std::map<Exponent, std::size_t>& index) const {
  std::vector<Rational> v(list.size(), Rational(0));
  for (const auto& [e, c] : terms_) {
    auto it = index.find(e);
    if (it == index.end()) throw PreconditionError("form has a term outside the monomial list");
    v[it->second] = c;
  }
  return v;
}

std::string HomoForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string body;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (!body.empty()) body += "*";
      body += "x" + std::to_string(i);
      if (e[i] > 1) body += "^" + std::to_string(e[i]);
    }
    if (body.empty())
      out += greenfield::to_string(mag);
    else if (mag == 1)
      out += body;
    else
      out += greenfield::to_string(mag) + "*" + body;
  }
  return out;
}

// ---------------------------------------------------------------- monomials

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::size_t count_monomials(std::size_t nvars, unsigned degree) {
  const Integer b = binomial(degree + nvars - 1, nvars - 1);
  if (!b.fits_ulong_p()) throw ResourceError("monomial count overflows");
  return b.get_ui();
}

std::vector<Exponent> monomials(std::size_t nvars, unsigned degree) {
  std::vector<Exponent> out;
  out.reserve(count_monomials(nvars, degree));
  Exponent e(nvars, 0);
  // Recursive fill, first variable takes the most.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      e[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, degree);
  return out;
}

std::map<Exponent, std::size_t> monomial_index(const std::vector<Exponent>& list) {
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < list.size(); ++i) idx.emplace(list[i], i);
  return idx;
}

Division divide(const HomoForm& a, const HomoForm& b) {
  if (b.is_zero()) throw DomainError("division by the zero form");
  if (a.nvars() != b.nvars()) throw PreconditionError("forms in different numbers of variables");
  if (a.degree() < b.degree()) return {HomoForm(a.nvars(), 0), a};
  const unsigned qdeg = a.degree() - b.degree();
  HomoForm q(a.nvars(), qdeg);
  HomoForm rem(a.nvars(), a.degree());
  HomoForm r = a;
  const auto& [lb, lc] = *b.terms().begin();
  while (!r.is_zero()) {
    const auto [le, c] = *r.terms().begin();
    bool divisible = true;
    Exponent qe(a.nvars());
    for (std::size_t i = 0; i < qe.size(); ++i) {
      if (le[i] < lb[i]) {
        divisible = false;
        break;
      }
      qe[i] = le[i] - lb[i];
    }
    if (divisible) {
      const HomoForm t = HomoForm::monomial(qe, c / lc);
      q = q + t;
      r = r - t * b;
    } else {
      rem.add_term(le, c);
      r.add_term(le, -c);
    }
  }
  return {q, rem};
}

// ---------------------------------------------------------------- PolyMap

PolyMap::PolyMap(std::vector<HomoForm> forms) : forms_(std::move(forms)) {
  if (forms_.size() < 2) throw PreconditionError("a map needs at least two forms");
  bool any = false;
  std::optional<unsigned> deg;
  for (const auto& f : forms_) {
    if (f.nvars() != forms_.size())
      throw PreconditionError("form variable count must equal the number of forms");
    if (deg && f.degree() != *deg) throw PreconditionError("forms have different degrees");
    deg = f.degree();
    any = any || !f.is_zero();
  }
  if (!any) throw PreconditionError("all forms are zero");
  degree_ = *deg;
  if (degree_ < 1) throw PreconditionError("map degree must be at least 1");
}

PolyMap PolyMap::identity(std::size_t nvars) {
  std::vector<HomoForm> f;
  for (std::size_t i = 0; i < nvars; ++i) f.push_back(HomoForm::variable(nvars, i));
  return PolyMap(std::move(f));
}

PolyMap PolyMap::parse(const std::vector<std::string>& forms) {
  const std::size_t n = forms.size();
  std::vector<HomoForm> parsed;
  int degree = -1;
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      parsed.push_back(HomoForm::parse(forms[i], n, -1));
      if (degree < 0) degree = static_cast<int>(parsed.back().degree());
    } catch (const ParseError& e) {
      if (std::string(e.what()).starts_with("zero form")) {
        parsed.emplace_back();
        zeros.push_back(i);
      } else {
        throw ParseError("form " + std::to_string(i) + ": " + e.what(), e.line(), e.column());
      }
    }
  }
  if (degree < 0) throw ParseError("all forms are zero");
  for (std::size_t i : zeros) parsed[i] = HomoForm(n, static_cast<unsigned>(degree));
  return PolyMap(std::move(parsed));
}

std::size_t PolyMap::term_count() const {
  std::size_t t = 0;
  for (const auto& f : forms_) t += f.size();
  return t;
}

std::vector<Rational> PolyMap::apply(std::span<const Rational> x) const {
  std::vector<Rational> out;
  out.reserve(forms_.size());
  for (const auto& f : forms_) out.push_back(f.evaluate(x));
  return out;
}

std::vector<Complex> PolyMap::apply(std::span<const Complex> x) const {
  std::vector<Complex> out;
  out.reserve(forms_.size());
  for (const auto& f : forms_) out.push_back(f.evaluate(x));
  return out;
}

PolyMap PolyMap::scaled(const Rational& c) const {
  if (c == 0) throw DomainError("scaling a map by zero");
  std::vector<HomoForm> f;
  for (const auto& g : forms_) f.push_back(g.scaled(c));
  return PolyMap(std::move(f));
}

std::vector<std::string> PolyMap::to_strings() const {
  std::vector<std::string> out;
  for (const auto& f : forms_) out.push_back(f.to_string());
  return out;
}

// ---------------------------------------------------------------- composition

namespace {

HomoForm capped_product(const HomoForm& a, const HomoForm& b, std::size_t cap) {
  const std::size_t dense = count_monomials(a.nvars(), a.degree() + b.degree());
  const double naive = static_cast<double>(a.size()) * static_cast<double>(b.size());
  if (std::min<double>(naive, static_cast<double>(dense)) > static_cast<double>(cap))
    throw ResourceError("composition exceeds the term cap of " + std::to_string(cap));
  return a * b;
}

}  // namespace

HomoForm substitute(const HomoForm& f, const std::vector<HomoForm>& g, std::size_t term_cap) {
  if (g.size() != f.nvars()) throw PreconditionError("substitution arity mismatch");
  const std::size_t nv = g.front().nvars();
  const unsigned e = g.front().degree();
  for (const auto& gi : g)
    if (gi.nvars() != nv || gi.degree() != e) throw PreconditionError("substituted forms must share shape");
  // Horner in the first variable: f = sum_a x0^a * f_a(x1..xN) evaluated as
  // ((f_top * g0 + f_next) * g0 + ...), with powers of the others cached.
  std::vector<std::vector<HomoForm>> powers(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) powers[i].push_back(HomoForm::constant(nv, 1));
  auto power = [&](std::size_t i, unsigned k) -> const HomoForm& {
    while (powers[i].size() <= k) powers[i].push_back(capped_product(powers[i].back(), g[i], term_cap));
    return powers[i][k];
  };
  std::map<unsigned, HomoForm, std::greater<unsigned>> slices;  // x0-exponent -> coefficient form
  for (const auto& [ex, c] : f.terms()) {
    HomoForm t = HomoForm::constant(nv, c);
    for (std::size_t i = 1; i < ex.size(); ++i)
      if (ex[i]) t = capped_product(t, power(i, ex[i]), term_cap);
    auto it = slices.find(ex[0]);
    if (it == slices.end())
      slices.emplace(ex[0], std::move(t));
    else
      it->second = it->second + t;
  }
  HomoForm result(nv, f.degree() * e);
  if (slices.empty()) return result;
  HomoForm acc;
  bool started = false;
  unsigned level = slices.begin()->first;
  for (auto it = slices.begin(); it != slices.end(); ++it) {
    if (started)
      for (; level > it->first; --level) acc = capped_product(acc, g[0], term_cap);
    acc = started ? acc + it->second : it->second;
    started = true;
    level = it->first;
  }
  for (; level > 0; --level) acc = capped_product(acc, g[0], term_cap);
  if (acc.size() > term_cap) throw ResourceError("composition exceeds the term cap");
  return acc.is_zero() ? result : acc;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner, std::size_t term_cap) {
  if (outer.nvars() != inner.nvars()) throw PreconditionError("composition of maps of different dimension");
  std::vector<HomoForm> out;
  for (const auto& f : outer.forms()) out.push_back(substitute(f, inner.forms(), term_cap));
  return PolyMap(std::move(out));
}

PolyMap iterate(const PolyMap& f, unsigned k, std::size_t term_cap) {
  if (k == 0) throw PreconditionError("iterate needs k >= 1");
  std::optional<PolyMap> acc;
  PolyMap base = f;
  while (k) {
    if (k & 1) acc = acc ? compose(*acc, base, term_cap) : base;
    k >>= 1;
    if (k) base = compose(base, base, term_cap);
  }
  return *acc;
}

LogMag coeff_sup_log(const HomoForm& f, const Place& place) {
  if (f.is_zero()) throw DomainError("coefficient norm of the zero form");
  if (place.is_archimedean()) {
    Rational best = 0;
    for (const auto& [e, c] : f.terms()) best = std::max(best, abs(c));
    return abs_log(place, best);
  }
  long best = std::numeric_limits<long>::max();
  for (const auto& [e, c] : f.terms()) best = std::min(best, place.valuation(c));
  return LogMag::log_prime(place.prime(), Rational(-best));
}

LogMag coeff_sup_log(const PolyMap& f, const Place& place) {
  if (place.is_archimedean()) {
    Rational m = 0;
    for (const auto& g : f.forms())
      for (const auto& [e, c] : g.terms()) m = std::max(m, abs(c));
    return abs_log(place, m);
  }
  long lowest = std::numeric_limits<long>::max();
  for (const auto& g : f.forms())
    for (const auto& [e, c] : g.terms()) lowest = std::min(lowest, place.valuation(c));
  return LogMag::log_prime(place.prime(), Rational(-lowest));
}

// ---------------------------------------------------------------- ProjPoint

ProjPoint ProjPoint::exact(std::vector<Rational> coords) {
  if (coords.empty()) throw PreconditionError("empty point");
  if (std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q == 0; }))
    throw DomainError("zero lift");
  ProjPoint p;
  p.coords_ = std::move(coords);
  return p;
}

ProjPoint ProjPoint::numeric(std::vector<Complex> coords) {
  if (coords.empty()) throw PreconditionError("empty point");
  if (std::all_of(coords.begin(), coords.end(), [](const Complex& z) { return z == 0.0; }))
    throw DomainError("zero lift");
  for (const auto& z : coords)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("non-finite coordinate");
  ProjPoint p;
  p.coords_ = std::move(coords);
  return p;
}

ProjPoint ProjPoint::parse(std::string_view text) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view tok = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    try {
      coords.push_back(parse_rational(tok));
    } catch (const ParseError& e) {
      throw ParseError(std::string("point coordinate: ") + e.what(), 1, start + 1);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coords.size() < 2) throw ParseError("a point needs at least two coordinates");
  return exact(std::move(coords));
}

std::size_t ProjPoint::size() const {
  return std::visit([](const auto& v) { return v.size(); }, coords_);
}

const std::vector<Rational>& ProjPoint::exact_coords() const {
  if (!is_exact()) throw PreconditionError("exact coordinates requested from a numeric point");
  return std::get<std::vector<Rational>>(coords_);
}

const std::vector<Complex>& ProjPoint::numeric_coords() const {
  if (is_exact()) throw PreconditionError("numeric coordinates requested from an exact point");
  return std::get<std::vector<Complex>>(coords_);
}

std::vector<Complex> ProjPoint::as_complex() const {
  if (!is_exact()) return numeric_coords();
  std::vector<Complex> out;
  for (const auto& q : exact_coords()) out.emplace_back(q.get_d(), 0.0);
  return out;
}

ProjPoint ProjPoint::scaled(const Rational& c) const {
  if (c == 0) throw DomainError("zero lift");
  if (is_exact()) {
    auto v = exact_coords();
    for (auto& q : v) q *= c;
    return exact(std::move(v));
  }
  auto v = numeric_coords();
  for (auto& z : v) z *= c.get_d();
  return numeric(std::move(v));
}

bool ProjPoint::projectively_equal(const ProjPoint& o) const {
  if (size() != o.size()) return false;
  if (is_exact() && o.is_exact()) {
    const auto& a = exact_coords();
    const auto& b = o.exact_coords();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
  }
  const auto a = as_complex();
  const auto b = o.as_complex();
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (std::abs(a[i] * b[j] - a[j] * b[i]) > 1e-12 * scale * scale) return false;
  return true;
}

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  if (is_exact()) {
    const auto& v = exact_coords();
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << greenfield::to_string(v[i]);
  } else {
    os.precision(17);
    const auto& v = numeric_coords();
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << "(" << v[i].real() << "," << v[i].imag() << ")";
  }
  return os.str();
}

Rational evaluate_exact(const HomoForm& f, const ProjPoint& p) { return f.evaluate(p.exact_coords()); }

ProjPoint apply(const PolyMap& f, const ProjPoint& p) {
  if (p.is_exact()) return ProjPoint::exact(f.apply(std::span<const Rational>(p.exact_coords())));
  return ProjPoint::numeric(f.apply(std::span<const Complex>(p.numeric_coords())));
}

}  // namespace greenfield
