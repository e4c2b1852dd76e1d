#pragma once

// Scenario configuration files.
//
// A config is a JSON object with at most one level of nesting:
//   {
//     "scenario": "amplifier",
//     "seed": 7,
//     "parameters": {"kappa": 1.0, "Gamma": 0.25, "eta": 1.0},
//     "grid": {"omega_min": -5, "omega_max": 5, "points": 401},
//     "output": {"name": "amp", "format": "csv"}
//   }
// Unknown keys are rejected at both levels. Rates are in units of kappa.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace nonrecip::app {

using Json = nlohmann::json;

struct GridSpec {
  double omega_min = -5.0;
  double omega_max = 5.0;
  std::size_t points = 401;
};

struct ScenarioConfig {
  std::string scenario;
  std::string name;
  std::uint64_t seed = 0;
  Json parameters = Json::object();
  std::optional<GridSpec> grid;
  /// The document as read, echoed into the metadata.
  Json source;
};

const std::vector<std::string>& scenario_names();

/// Top-level validation; `default_name` is used when output.name is absent.
ScenarioConfig parse_config(const Json& doc, const std::string& default_name);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Typed access to a flat parameter object that remembers which keys were read.
class ParamReader {
 public:
  ParamReader(const Json& obj, std::string where);

  bool has(const std::string& key) const;
  double number(const std::string& key);
  double number_or(const std::string& key, double fallback);
  std::size_t count_or(const std::string& key, std::size_t fallback);
  std::string choice_or(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed);
  std::vector<std::size_t> dims_or(const std::string& key, std::vector<std::size_t> fallback);
  /// Nested object (one level only).
  const Json& object(const std::string& key);
  /// Raw value, marked as read.
  const Json& raw(const std::string& key);

  /// Throws ValidationError naming any key that was never read.
  void finish() const;

 private:
  const Json& value(const std::string& key);

  const Json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

}  // namespace nonrecip::app
