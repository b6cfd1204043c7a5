#include "config.hpp"

#include <fstream>
#include <sstream>

#include "greenfield/errors.hpp"

namespace greenfield::cli {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

namespace {

// Offset of the opening quote of the top-level key, or npos. Keys are found
// by a plain scan that skips over string literals.
std::size_t find_key(const std::string& text, const std::string& key) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '{' || ch == '[') ++depth;
    if (ch == '}' || ch == ']') --depth;
    if (ch != '"') continue;
    std::size_t j = i + 1;
    while (j < text.size() && text[j] != '"') j += text[j] == '\\' ? 2 : 1;
    if (depth == 1 && text.compare(i + 1, j - i - 1, key) == 0) {
      std::size_t k = j + 1;
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k < text.size() && text[k] == ':') return i;
    }
    i = j;
  }
  return std::string::npos;
}

// Offset of the first character inside the index-th string of the array
// following `key`, or the key itself when it cannot be found.
std::size_t find_array_string(const std::string& text, const std::string& key, std::size_t index) {
  const std::size_t k = find_key(text, key);
  if (k == std::string::npos) return 0;
  std::size_t i = text.find('[', k);
  if (i == std::string::npos) return k;
  std::size_t seen = 0;
  for (++i; i < text.size() && text[i] != ']'; ++i) {
    if (text[i] != '"') continue;
    if (seen == index) return i + 1;
    ++i;
    while (i < text.size() && text[i] != '"') i += text[i] == '\\' ? 2 : 1;
    ++seen;
  }
  return k;
}

std::size_t find_key_string(const std::string& text, const std::string& key) {
  const std::size_t k = find_key(text, key);
  if (k == std::string::npos) return 0;
  const std::size_t q = text.find('"', text.find(':', k));
  return q == std::string::npos ? k : q + 1;
}

[[noreturn]] void fail_at(const std::string& text, std::size_t offset, const std::string& what) {
  const auto [line, col] = line_column(text, offset);
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what, line, col);
}

[[noreturn]] void fail_key(const std::string& text, const std::string& key, const std::string& what) {
  const std::size_t k = find_key(text, key);
  fail_at(text, k == std::string::npos ? 0 : k, what);
}

}  // namespace

SystemConfig parse_system_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail_at(text, e.byte > 0 ? e.byte - 1 : 0, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail_at(text, 0, "system config must be a JSON object");

  static const char* known[] = {"N", "d", "forms", "hypersurface", "r_convention", "tolerances", "seeds"};
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) fail_key(text, k, "unknown field '" + k + "'");
  }

  SystemConfig cfg;
  if (!j.contains("forms")) fail_at(text, 0, "missing field 'forms'");
  if (!j["forms"].is_array() || j["forms"].empty()) fail_key(text, "forms", "'forms' must be a nonempty array of strings");
  for (std::size_t i = 0; i < j["forms"].size(); ++i) {
    if (!j["forms"][i].is_string()) fail_at(text, find_array_string(text, "forms", i), "form must be a string");
    cfg.forms.push_back(j["forms"][i].get<std::string>());
  }
  cfg.N = cfg.forms.size() - 1;
  if (j.contains("N")) {
    if (!j["N"].is_number_unsigned()) fail_key(text, "N", "'N' must be a nonnegative integer");
    if (j["N"].get<std::size_t>() != cfg.N)
      fail_key(text, "N", "'N' is " + std::to_string(j["N"].get<std::size_t>()) + " but there are " +
                              std::to_string(cfg.forms.size()) + " forms");
  }
  int degree = -1;
  if (j.contains("d")) {
    if (!j["d"].is_number_unsigned()) fail_key(text, "d", "'d' must be a positive integer");
    degree = j["d"].get<int>();
  }
  for (std::size_t i = 0; i < cfg.forms.size(); ++i) {
    try {
      const HomoForm f = HomoForm::parse(cfg.forms[i], cfg.N + 1, degree);
      if (f.is_zero()) continue;
      if (degree < 0) degree = static_cast<int>(f.degree());
      if (static_cast<int>(f.degree()) != degree)
        fail_at(text, find_array_string(text, "forms", i),
                "form " + std::to_string(i) + " has degree " + std::to_string(f.degree()) + ", expected " +
                    std::to_string(degree));
    } catch (const ParseError& e) {
      if (e.line() > 1 || std::string(e.what()).starts_with("line ")) throw;
      const std::size_t base = find_array_string(text, "forms", i);
      fail_at(text, base + (e.column() > 0 ? e.column() - 1 : 0), "form " + std::to_string(i) + ": " + e.what());
    }
  }
  if (degree < 0) fail_key(text, "forms", "all forms are zero and 'd' is missing");
  cfg.d = static_cast<unsigned>(degree);

  if (j.contains("hypersurface") && !j["hypersurface"].is_null()) {
    if (!j["hypersurface"].is_string()) fail_key(text, "hypersurface", "'hypersurface' must be a string or null");
    cfg.hypersurface = j["hypersurface"].get<std::string>();
    try {
      HomoForm::parse(*cfg.hypersurface, cfg.N + 1);
    } catch (const ParseError& e) {
      const std::size_t base = find_key_string(text, "hypersurface");
      fail_at(text, base + (e.column() > 0 ? e.column() - 1 : 0), std::string("hypersurface: ") + e.what());
    }
  }
  if (j.contains("r_convention")) {
    if (!j["r_convention"].is_string()) fail_key(text, "r_convention", "'r_convention' must be a string");
    try {
      cfg.convention = parse_convention(j["r_convention"].get<std::string>());
    } catch (const std::exception& e) {
      fail_at(text, find_key_string(text, "r_convention"), e.what());
    }
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) fail_key(text, "tolerances", "'tolerances' must be an object");
    if (t.contains("tol")) {
      if (!t["tol"].is_number() || !(t["tol"].get<double>() > 0.0))
        fail_key(text, "tolerances", "'tolerances.tol' must be a positive number");
      cfg.tol = t["tol"].get<double>();
    }
  }
  if (j.contains("seeds")) {
    const auto& s = j["seeds"];
    if (!s.is_object()) fail_key(text, "seeds", "'seeds' must be an object");
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) fail_key(text, "seeds", "'seeds.seed' must be a nonnegative integer");
      cfg.seed = s["seed"].get<std::uint64_t>();
    }
  }
  return cfg;
}

SystemConfig load_system_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_system_config(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

DynSystem SystemConfig::build() const {
  std::vector<HomoForm> parsed;
  for (const auto& f : forms) parsed.push_back(HomoForm::parse(f, N + 1, static_cast<int>(d)));
  std::optional<HomoForm> g;
  if (hypersurface) g = HomoForm::parse(*hypersurface, N + 1);
  return DynSystem(PolyMap(std::move(parsed)), std::move(g));
}

Json to_json(const SystemConfig& cfg, const DynSystem& system) {
  Json j;
  j["N"] = system.dimension();
  j["d"] = system.degree();
  j["forms"] = system.map().to_strings();
  j["hypersurface"] = system.hypersurface() ? Json(system.hypersurface()->to_string()) : Json(nullptr);
  j["r_convention"] = to_string(cfg.convention);
  j["tolerances"] = {{"tol", cfg.tol}};
  j["seeds"] = {{"seed", cfg.seed}};
  return j;
}

Json to_json(const LogMag& v) {
  Json j;
  j["value"] = v.value();
  j["error"] = v.error_bound();
  j["arch"] = v.arch();
  Json padic = Json::object();
  for (const auto& [p, q] : v.padic()) padic[p.get_str()] = to_string(q);
  j["padic"] = padic;
  return j;
}

Json to_json(const ExtLogMag& v) {
  if (is_minus_infinity(v)) return Json("-inf");
  return to_json(std::get<LogMag>(v));
}

}  // namespace greenfield::cli
