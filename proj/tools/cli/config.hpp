#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "greenfield/dynsys.hpp"
#include "greenfield/macaulay.hpp"

namespace greenfield::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "greenfield-report/1";

struct SystemConfig {
  std::size_t N = 1;
  unsigned d = 2;
  std::vector<std::string> forms;
  std::optional<std::string> hypersurface;
  RConvention convention = RConvention::Invariant;
  double tol = 1e-9;
  std::uint64_t seed = 7;

  DynSystem build() const;
};

// ParseError carries the 1-based line and column in `text`.
SystemConfig parse_system_config(const std::string& text);
SystemConfig load_system_config(const std::string& path);

// Canonical forms, so the output parses back to the same map.
Json to_json(const SystemConfig& cfg, const DynSystem& system);

Json to_json(const LogMag& v);
Json to_json(const ExtLogMag& v);

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset);

}  // namespace greenfield::cli
