#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "greenfield/basis.hpp"
#include "greenfield/elliptic.hpp"
#include "greenfield/errors.hpp"
#include "greenfield/experiments.hpp"
#include "greenfield/green.hpp"
#include "greenfield/heights.hpp"
#include "greenfield/macaulay.hpp"

namespace greenfield::cli {

namespace {

// ---- argument helpers -------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t k = s.find(sep, start);
    out.push_back(s.substr(start, k == std::string::npos ? std::string::npos : k - start));
    if (k == std::string::npos) break;
    start = k + 1;
  }
  return out;
}

std::vector<unsigned> parse_uint_list(const std::string& s, const std::string& what) {
  std::vector<unsigned> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
      throw ParseError(what + ": '" + tok + "' is not a nonnegative integer");
    out.push_back(static_cast<unsigned>(std::stoul(tok)));
  }
  return out;
}

std::pair<Rational, Rational> parse_pair(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw ParseError(what + " needs two comma-separated rationals");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

// "a,b;c,d;..."
std::vector<ProjPoint> parse_points(const std::string& s) {
  std::vector<ProjPoint> out;
  for (const auto& tok : split(s, ';')) out.push_back(ProjPoint::parse(tok));
  return out;
}

Json complex_coords(const ProjPoint& p) {
  Json j = Json::array();
  for (const auto& z : p.as_complex()) j.push_back(Json::array({z.real(), z.imag()}));
  return j;
}

Json exact_coords(const ProjPoint& p) {
  Json j = Json::array();
  for (const auto& q : p.exact_coords()) j.push_back(to_string(q));
  return j;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string num(double v) { return Json(v).dump(); }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
    out += "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

// ---- shared options ---------------------------------------------------

struct Options {
  std::string system_path;
  std::string n = "";
  double tol = 0.0;  // 0 means "from the config"
  long long budget = 20000;
  long long seed = -1;
  std::string place = "inf";
  std::string out;
  std::string convention;
  std::string format = "json";
  std::string point;
  std::string points;
  std::string curve;
  std::string depths = "0,1,2";
};

struct Emit {
  Json json;
  Table table;
  std::string text;  // plain output when set and --format text
};

void write_output(const Options& o, const Emit& e, std::ostream& out) {
  std::string body;
  if (o.format == "csv")
    body = render_csv(e.table);
  else if (o.format == "text" && !e.text.empty())
    body = e.text;
  else
    body = e.json.dump(2) + "\n";
  if (o.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw PreconditionError("cannot write " + o.out);
  f << body;
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

struct Loaded {
  SystemConfig cfg;
  DynSystem system;
};

Loaded load(const Options& o) {
  SystemConfig cfg = load_system_config(o.system_path);
  if (!o.convention.empty()) cfg.convention = parse_convention(o.convention);
  if (o.tol > 0.0) cfg.tol = o.tol;
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  DynSystem system = cfg.build();
  return {std::move(cfg), std::move(system)};
}

Json place_json(const Place& v) { return v.to_string(); }

std::string padic_text(const LogMag& v) {
  std::string s;
  for (const auto& [p, q] : v.padic()) s += (s.empty() ? "" : " ") + to_string(q) + "*log" + p.get_str();
  return s;
}

// ---- subcommands ------------------------------------------------------

Emit cmd_resultant(const Options& o) {
  const SystemConfig cfg = load_system_config(o.system_path);
  const PolyMap map = PolyMap::parse(cfg.forms);
  const Rational res = macaulay_resultant(map);
  Emit e;
  e.json = header("resultant");
  e.json["forms"] = map.to_strings();
  e.json["resultant"] = to_string(res);
  e.json["morphism"] = res != 0;
  e.table.header = {"resultant"};
  e.table.rows.push_back({to_string(res)});
  e.text = to_string(res) + "\n";
  return e;
}

Emit cmd_height(const Options& o) {
  const Loaded l = load(o);
  if (o.point.empty()) throw ParseError("--point is required");
  const ProjPoint p = ProjPoint::parse(o.point);
  const HeightValue h = canonical_height(l.system, p, l.cfg.tol);
  const HeightValue w = weil_height(p);
  Emit e;
  e.json = header("height");
  e.json["system"] = to_json(l.cfg, l.system);
  e.json["point"] = exact_coords(p);
  e.json["tol"] = l.cfg.tol;
  e.json["value"] = h.value;
  e.json["error"] = h.error;
  e.json["total"] = to_json(h.total);
  Json prof = Json::array();
  e.table.header = {"place", "value", "error", "padic"};
  for (const auto& [v, lm] : h.local_profile) {
    Json r = to_json(lm);
    r["place"] = place_json(v);
    prof.push_back(r);
    e.table.rows.push_back({v.to_string(), num(lm.value()), num(lm.error_bound()), padic_text(lm)});
  }
  e.json["local_profile"] = prof;
  e.json["weil"] = {{"value", w.value}, {"error", w.error}, {"total", to_json(w.total)}};
  e.table.rows.push_back({"total", num(h.value), num(h.error), padic_text(h.total)});
  return e;
}

Emit cmd_escape(const Options& o) {
  const Loaded l = load(o);
  if (o.point.empty()) throw ParseError("--point is required");
  const ProjPoint p = ProjPoint::parse(o.point);
  const Place v = Place::parse(o.place);
  const EscapeRate r = escape_rate(l.system, v, p, l.cfg.tol);
  const Membership m = julia_membership(l.system, v, p, l.cfg.tol);
  Emit e;
  e.json = header("escape");
  e.json["system"] = to_json(l.cfg, l.system);
  e.json["point"] = exact_coords(p);
  e.json["place"] = place_json(v);
  e.json["reduction"] = v.is_archimedean() ? "archimedean" : to_string(l.system.reduction(v).type);
  e.json["escape_rate"] = to_json(r.value);
  e.json["error"] = r.error;
  e.json["iterations"] = r.iterations;
  e.json["membership"] = to_string(m);
  e.table.header = {"place", "value", "error", "iterations", "membership"};
  e.table.rows.push_back({v.to_string(), num(r.approx()), num(r.error), std::to_string(r.iterations), to_string(m)});
  return e;
}

Emit cmd_basis(const Options& o) {
  const Loaded l = load(o);
  if (o.n.empty()) throw ParseError("--n is required");
  Emit e;
  e.json = header("basis");
  e.json["system"] = to_json(l.cfg, l.system);
  Json fams = Json::array();
  e.table.header = {"n", "index", "pivot", "provenance", "expanded"};
  for (unsigned n : parse_uint_list(o.n, "--n")) {
    const BasisFamily b = special_basis(l.system, n);
    Json f;
    f["n"] = n;
    f["c"] = b.c();
    f["relaxed_t1"] = b.relaxed_t1;
    f["candidates_examined"] = b.candidates_examined;
    Json els = Json::array();
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      const auto& el = b.elements[i];
      els.push_back({{"provenance", el.describe()}, {"expanded", el.expanded.to_string()}, {"pivot", b.rank_profile[i]}});
      e.table.rows.push_back({std::to_string(n), std::to_string(i), std::to_string(b.rank_profile[i]), el.describe(),
                              el.expanded.to_string()});
    }
    f["elements"] = els;
    fams.push_back(f);
  }
  e.json["families"] = fams;
  return e;
}

Emit cmd_green(const Options& o) {
  const Loaded l = load(o);
  if (o.n.empty()) throw ParseError("--n is required");
  if (o.points.empty()) throw ParseError("--points is required (\"a,b;c,d;...\")");
  const std::vector<ProjPoint> lifts = parse_points(o.points);
  const Place v = Place::parse(o.place);
  Emit e;
  e.json = header("green");
  e.json["system"] = to_json(l.cfg, l.system);
  e.json["place"] = place_json(v);
  e.json["convention"] = to_string(l.cfg.convention);
  Json rows = Json::array();
  e.table.header = {"n", "place", "green_value", "error", "logdet", "witness_logd", "envelope_logd"};
  for (unsigned n : parse_uint_list(o.n, "--n")) {
    const BasisFamily b = special_basis(l.system, n);
    const GreenValue g = green_value(l.system, b, lifts, v, l.cfg.convention, l.cfg.tol);
    const EvalDetLog det = eval_det_log(b, lifts, v);
    Json r;
    r["n"] = n;
    r["c"] = b.c();
    r["place"] = place_json(v);
    r["green_value"] = g.infinite ? Json("+inf") : to_json(g.value);
    r["error"] = g.error;
    r["logdet"] = to_json(det.value);
    Json wit = nullptr;
    std::string wit_text = "";
    try {
      const ExtLogMag w = dbn_witness(l.system, b, lifts, v, l.cfg.tol);
      wit = to_json(w);
      wit_text = is_minus_infinity(w) ? "-inf" : num(std::get<LogMag>(w).value());
    } catch (const PreconditionError& ex) {
      r["witness_rejected"] = ex.what();
    }
    r["witness_logd"] = wit;
    Json env = nullptr;
    std::string env_text = "";
    if (n >= 2) {
      const LogMag en = hadamard_envelope(l.system, n, v).scaled(Rational(1, n * b.c()));
      env = to_json(en);
      env_text = num(en.value());
    }
    r["envelope_logd"] = env;
    r["tuple"] = Json::array();
    for (const auto& p : lifts) r["tuple"].push_back(exact_coords(p));
    rows.push_back(r);
    e.table.rows.push_back({std::to_string(n), v.to_string(), g.infinite ? "+inf" : num(g.approx()), num(g.error),
                            is_minus_infinity(det.value) ? "-inf" : num(std::get<LogMag>(det.value).value()), wit_text,
                            env_text});
  }
  e.json["rows"] = rows;
  return e;
}

Emit cmd_fekete(const Options& o) {
  const Loaded l = load(o);
  if (o.n.empty()) throw ParseError("--n is required");
  if (o.budget <= 0) throw PreconditionError("--budget must be positive");
  Emit e;
  e.json = header("fekete");
  e.json["system"] = to_json(l.cfg, l.system);
  e.json["budget"] = o.budget;
  e.json["seed"] = l.cfg.seed;
  Json rows = Json::array();
  e.table.header = {"n", "place", "witness_logd", "envelope_logd", "evaluations"};
  for (unsigned n : parse_uint_list(o.n, "--n")) {
    const BasisFamily b = special_basis(l.system, n);
    const FeketeResult f = fekete_search(l.system, b, static_cast<std::size_t>(o.budget), l.cfg.seed);
    Json r;
    r["n"] = n;
    r["c"] = b.c();
    r["place"] = "inf";
    r["witness_logd"] = to_json(f.witness);
    Json env = nullptr;
    std::string env_text;
    if (n >= 2) {
      const LogMag en = hadamard_envelope(l.system, n, Place::archimedean()).scaled(Rational(1, n * b.c()));
      env = to_json(en);
      env_text = num(en.value());
    }
    r["envelope_logd"] = env;
    r["evaluations"] = f.evaluations;
    r["restart"] = f.restart;
    r["tuple"] = Json::array();
    for (const auto& p : f.lifts) r["tuple"].push_back(complex_coords(p));
    rows.push_back(r);
    e.table.rows.push_back({std::to_string(n), "inf", num(f.witness.value()), env_text, std::to_string(f.evaluations)});
  }
  e.json["rows"] = rows;
  return e;
}

Emit cmd_adelic(const Options& o) {
  const Loaded l = load(o);
  const std::vector<unsigned> ns = parse_uint_list(o.n.empty() ? "4,8,16,32" : o.n, "--n");
  if (o.budget <= 0) throw PreconditionError("--budget must be positive");
  const AdelicReport rep = adelic_report(l.system, ns, static_cast<std::size_t>(o.budget), l.cfg.seed);
  Emit e;
  e.json = header("adelic-report");
  e.json["system"] = to_json(l.cfg, l.system);
  e.json["budget"] = o.budget;
  e.json["seed"] = l.cfg.seed;
  e.json["c_fit"] = rep.c_fit;
  e.json["c_spread"] = rep.c_spread;
  e.json["decreasing"] = rep.decreasing;
  Json rows = Json::array();
  e.table.header = {"n", "c", "place", "good", "r_log", "envelope_logd", "witness_logd", "witness_source", "reference"};
  for (const auto& row : rep.rows) {
    Json r;
    r["n"] = row.n;
    if (!row.error.empty()) {
      r["error"] = row.error;
      rows.push_back(r);
      e.table.rows.push_back({std::to_string(row.n), "", "", "", "", "", "", "error: " + row.error, ""});
      continue;
    }
    r["c"] = row.c;
    r["sum_envelope_logd"] = row.sum_envelope_logd;
    r["sum_witness_logd"] = row.sum_witness_logd ? Json(*row.sum_witness_logd) : Json(nullptr);
    r["reference"] = row.reference;
    Json places = Json::array();
    for (const auto& b : row.places) {
      Json pb;
      pb["place"] = place_json(b.place);
      pb["good"] = b.good;
      pb["r_log"] = to_json(b.r_log);
      pb["envelope"] = to_json(b.envelope);
      pb["envelope_logd"] = to_json(b.envelope_logd);
      pb["witness_logd"] = b.witness_logd ? to_json(*b.witness_logd) : Json(nullptr);
      pb["witness_source"] = b.witness_source;
      places.push_back(pb);
      e.table.rows.push_back({std::to_string(row.n), std::to_string(row.c), b.place.to_string(), b.good ? "1" : "0",
                              num(b.r_log.value()), num(b.envelope_logd.value()),
                              b.witness_logd ? num(b.witness_logd->value()) : "", b.witness_source, num(row.reference)});
    }
    r["places"] = places;
    rows.push_back(r);
  }
  e.json["rows"] = rows;
  return e;
}

struct CurveInput {
  EllipticCurve curve;
  CurvePoint point;
};

CurveInput curve_input(const Options& o) {
  if (o.curve.empty() || o.point.empty()) throw ParseError("--curve a,b and --point x0,y0 are required");
  const auto [a, b] = parse_pair(o.curve, "--curve");
  const auto [x, y] = parse_pair(o.point, "--point");
  CurveInput in{EllipticCurve(a, b), CurvePoint::affine(x, y)};
  if (!in.curve.contains(in.point)) throw PreconditionError("point is not on the curve");
  return in;
}

Emit cmd_multiples(const Options& o) {
  const CurveInput in = curve_input(o);
  if (o.n.empty()) throw ParseError("--n is required");
  std::optional<Loaded> l;
  if (!o.system_path.empty()) l = load(o);
  const LattesSystem lattes(in.curve, in.point);
  const DynSystem& system = l ? l->system : lattes.system;
  if (system.map().nvars() != 2) throw PreconditionError("multiples works on P^1");
  Emit e;
  e.json = header("multiples");
  e.json["curve"] = {to_string(in.curve.a()), to_string(in.curve.b())};
  e.json["point"] = {to_string(in.point.x), to_string(in.point.y)};
  if (l) e.json["system"] = to_json(l->cfg, l->system);
  Json rows = Json::array();
  e.table.header = {"n", "c", "bound", "indices", "determinant"};
  for (unsigned n : parse_uint_list(o.n, "--n")) {
    const std::size_t c = n + 1;
    const std::size_t bound = 2 * n + c;
    const auto orbit = translation_orbit(in.curve, in.point, bound);
    const MultiplesResult m = multiples_search(system, orbit, n);
    Json r;
    r["n"] = n;
    r["c"] = m.c;
    r["bound"] = m.bound;
    r["indices"] = m.indices;
    r["determinant"] = to_string(m.determinant);
    rows.push_back(r);
    std::string idx;
    for (auto i : m.indices) idx += (idx.empty() ? "" : " ") + std::to_string(i);
    e.table.rows.push_back({std::to_string(n), std::to_string(m.c), std::to_string(m.bound), idx, to_string(m.determinant)});
  }
  e.json["rows"] = rows;
  return e;
}

Emit cmd_lehmer(const Options& o) {
  const CurveInput in = curve_input(o);
  const double tol = o.tol > 0.0 ? o.tol : 1e-9;
  const LattesSystem lattes(in.curve, in.point);
  const LehmerScan s = lehmer_scan(lattes, parse_uint_list(o.depths, "--depths"), tol);
  Emit e;
  e.json = header("lehmer-scan");
  e.json["curve"] = {to_string(in.curve.a()), to_string(in.curve.b())};
  e.json["point"] = {to_string(in.point.x), to_string(in.point.y)};
  e.json["lattes"] = lattes.system.map().to_strings();
  e.json["tol"] = tol;
  e.json["base_height"] = s.base_height;
  e.json["base_error"] = s.base_error;
  e.json["min_lehmer_value"] = s.min_lehmer_value;
  Json rows = Json::array();
  e.table.header = {"depth", "D", "multiplicity", "height", "lehmer_value", "factor"};
  for (const auto& r : s.rows) {
    rows.push_back({{"depth", r.depth},
                    {"D", r.degree},
                    {"multiplicity", r.multiplicity},
                    {"height", r.height},
                    {"lehmer_value", r.lehmer_value},
                    {"factor", r.factor}});
    e.table.rows.push_back({std::to_string(r.depth), std::to_string(r.degree), std::to_string(r.multiplicity),
                            num(r.height), num(r.lehmer_value), r.factor});
  }
  e.json["rows"] = rows;
  return e;
}

// ---- selftest ---------------------------------------------------------

struct Check {
  std::string name;
  std::function<std::string()> body;  // empty string on success
};

std::string near(double got, double want, double tol) {
  if (std::fabs(got - want) <= tol) return "";
  std::ostringstream s;
  s.precision(17);
  s << "got " << got << ", want " << want;
  return s.str();
}

Emit cmd_selftest(const Options&, bool* all_passed) {
  const double ln2 = std::log(2.0);
  const std::vector<Check> checks = {
      {"resultant of (x^2, y^2) is 1",
       [] { return macaulay_resultant(PolyMap::parse({"x^2", "y^2"})) == 1 ? "" : "wrong value"; }},
      {"resultant of (2x^2, y^2) is 4",
       [] { return macaulay_resultant(PolyMap::parse({"2*x^2", "y^2"})) == 4 ? "" : "wrong value"; }},
      {"resultant of (x^2, y^2, z^2) is 1",
       [] { return macaulay_resultant(PolyMap::parse({"x^2", "y^2", "z^2"})) == 1 ? "" : "wrong value"; }},
      {"product formula on -360/49",
       [] {
         const Rational x(-360, 49);
         const LogMag s = product_formula_sum(x);
         for (const auto& [p, ord] : rational_log_expansion(x))
           if (s.padic_coefficient(p) != -ord) return "p-adic part at " + p.get_str() + " is off";
         return near(s.value(), 0.0, 1e-12);
       }},
      {"canonical height of [2:1] under z^2",
       [&] {
         const DynSystem f(PolyMap::parse({"x^2", "y^2"}));
         return near(canonical_height(f, ProjPoint::parse("2,1"), 1e-12).value, ln2, 1e-12);
       }},
      {"Chebyshev height of [3:1]",
       [] {
         const DynSystem f(PolyMap::parse({"x^2-2*y^2", "y^2"}));
         return near(canonical_height(f, ProjPoint::parse("3,1"), 1e-10).value, std::log((3 + std::sqrt(5.0)) / 2), 1e-9);
       }},
      {"functional equation at [1/3:1] for x^2 + y^2/2",
       [] {
         const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
         const ProjPoint p = ProjPoint::parse("1/3,1");
         const double a = canonical_height(f, apply(f.map(), p), 1e-10).value;
         const double b = canonical_height(f, p, 1e-10).value;
         return near(a, 2 * b, 2e-10);
       }},
      {"green function sums to zero over inf and 2",
       [] {
         const DynSystem f(PolyMap::parse({"x^2", "y^2"}));
         const BasisFamily b = monomial_basis(1, 1);
         const std::vector<ProjPoint> lifts{ProjPoint::parse("1,1"), ProjPoint::parse("-1,1")};
         const GreenValue g1 = green_value(f, b, lifts, Place::archimedean(), RConvention::Invariant, 1e-12);
         const GreenValue g2 = green_value(f, b, lifts, Place::prime(2), RConvention::Invariant, 1e-12);
         return near((g1.value + g2.value).value(), 0.0, 1e-12);
       }},
      {"envelope is 35 log 2 at n = 4",
       [&] {
         const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
         return near(hadamard_envelope(f, 4, LogMag::log_prime(2, 1), Place::prime(2)).value(), 35 * ln2, 1e-12);
       }},
      {"ratio sandwich for d = 2, N = 1 up to 200",
       [] { return keyratio_scan(2, 1, 200).last_violation ? "sandwich fails" : ""; }},
      {"duplication on y^2 = x^3 - 2 matches the Lattes map",
       [] {
         const EllipticCurve e(0, -2);
         const CurvePoint p = CurvePoint::affine(3, 5);
         return apply(e.lattes_map(), x_coordinate(p)).projectively_equal(x_coordinate(e.dbl(p))) ? "" : "mismatch";
       }},
  };
  Emit e;
  e.json = header("selftest");
  Json rows = Json::array();
  e.table.header = {"check", "pass", "detail"};
  *all_passed = true;
  for (const auto& c : checks) {
    std::string detail;
    try {
      detail = c.body();
    } catch (const std::exception& ex) {
      detail = std::string("threw: ") + ex.what();
    }
    const bool pass = detail.empty();
    *all_passed = *all_passed && pass;
    rows.push_back({{"check", c.name}, {"pass", pass}, {"detail", detail}});
    e.table.rows.push_back({c.name, pass ? "1" : "0", detail});
  }
  e.json["checks"] = rows;
  e.json["passed"] = *all_passed;
  return e;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic dynamics toolkit: resultants, heights, Green functions, Fekete search"};
  app.name(args.empty() ? "greenfield" : args[0]);
  app.require_subcommand(1);
  Options o;

  auto with_system = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("system", o.system_path, "system config (JSON)");
    if (required) opt->required();
  };
  auto with_format = [&](CLI::App* s) {
    s->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    s->add_option("--out", o.out, "write the report to this file");
  };

  auto* resultant = app.add_subcommand("resultant", "exact Macaulay resultant");
  with_system(resultant);
  with_format(resultant);
  o.format = "json";

  auto* height = app.add_subcommand("height", "canonical height with per-place profile");
  with_system(height);
  height->add_option("--point", o.point, "\"a/b,c/d,...\"")->required();
  height->add_option("--tol", o.tol);
  with_format(height);

  auto* escape = app.add_subcommand("escape", "local escape rate and filled Julia set membership");
  with_system(escape);
  escape->add_option("--point", o.point)->required();
  escape->add_option("--place", o.place, "inf or p=<prime>");
  escape->add_option("--tol", o.tol);
  with_format(escape);

  auto* basis = app.add_subcommand("basis", "special basis in degree n");
  with_system(basis);
  basis->add_option("--n", o.n, "comma list")->required();
  with_format(basis);

  auto* green = app.add_subcommand("green", "Green function, determinant witness and envelope");
  with_system(green);
  green->add_option("--n", o.n)->required();
  green->add_option("--points", o.points, "\"a,b;c,d;...\"")->required();
  green->add_option("--place", o.place);
  green->add_option("--convention", o.convention)->check(CLI::IsMember({"paper", "invariant"}));
  green->add_option("--tol", o.tol);
  with_format(green);

  auto* fekete = app.add_subcommand("fekete", "archimedean Fekete search");
  with_system(fekete);
  fekete->add_option("--n", o.n)->required();
  fekete->add_option("--budget", o.budget);
  fekete->add_option("--seed", o.seed);
  with_format(fekete);

  auto* adelic = app.add_subcommand("adelic-report", "per-place envelopes and witnesses");
  with_system(adelic);
  adelic->add_option("--n", o.n);
  adelic->add_option("--budget", o.budget);
  adelic->add_option("--seed", o.seed);
  with_format(adelic);

  auto* multiples = app.add_subcommand("multiples", "greedy independent multiples x(kP)");
  with_system(multiples, false);
  multiples->add_option("--curve", o.curve, "a,b for y^2 = x^3 + a x + b")->required();
  multiples->add_option("--point", o.point, "x0,y0")->required();
  multiples->add_option("--n", o.n)->required();
  with_format(multiples);

  auto* lehmer = app.add_subcommand("lehmer-scan", "heights and degrees of Lattes preimages");
  lehmer->add_option("--curve", o.curve)->required();
  lehmer->add_option("--point", o.point)->required();
  lehmer->add_option("--depths", o.depths);
  lehmer->add_option("--tol", o.tol);
  with_format(lehmer);

  auto* selftest = app.add_subcommand("selftest", "embedded invariant checks");
  with_format(selftest);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "greenfield: " << e.what() << "\n";
    return kParse;
  }

  try {
    Emit e;
    int code = kOk;
    if (resultant->parsed()) {
      if (resultant->count("--format") == 0) o.format = "text";
      e = cmd_resultant(o);
    } else if (height->parsed()) {
      e = cmd_height(o);
    } else if (escape->parsed()) {
      e = cmd_escape(o);
    } else if (basis->parsed()) {
      e = cmd_basis(o);
    } else if (green->parsed()) {
      e = cmd_green(o);
    } else if (fekete->parsed()) {
      e = cmd_fekete(o);
    } else if (adelic->parsed()) {
      e = cmd_adelic(o);
    } else if (multiples->parsed()) {
      e = cmd_multiples(o);
    } else if (lehmer->parsed()) {
      e = cmd_lehmer(o);
    } else if (selftest->parsed()) {
      bool passed = false;
      e = cmd_selftest(o, &passed);
      code = passed ? kOk : kPrecondition;
    }
    write_output(o, e, out);
    return code;
  } catch (const ParseError& e) {
    err << "greenfield: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    err << "greenfield: precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const DomainError& e) {
    err << "greenfield: domain: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ResourceError& e) {
    err << "greenfield: resource: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "greenfield: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace greenfield::cli
