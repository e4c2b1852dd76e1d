#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nonrecip/errors.hpp"

namespace nonrecip::app {

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"directionality", "ff-equivalence", "trajectories", "cascaded",
                                              "amplifier",      "nonmarkovian",   "optomech"};
  return names;
}

ParamReader::ParamReader(const Json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
  if (!obj_.is_object()) throw ValidationError(where_ + " must be a JSON object");
}

bool ParamReader::has(const std::string& key) const { return obj_.contains(key); }

const Json& ParamReader::value(const std::string& key) {
  used_.insert(key);
  return obj_.at(key);
}

double ParamReader::number(const std::string& key) {
  if (!has(key)) throw ValidationError(where_ + ": missing required key '" + key + "'");
  const Json& v = value(key);
  if (!v.is_number()) throw ValidationError(where_ + ": '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(where_ + ": '" + key + "' must be finite");
  return d;
}

double ParamReader::number_or(const std::string& key, double fallback) {
  return has(key) ? number(key) : fallback;
}

std::size_t ParamReader::count_or(const std::string& key, std::size_t fallback) {
  if (!has(key)) return fallback;
  const Json& v = value(key);
  if (!v.is_number_unsigned()) throw ValidationError(where_ + ": '" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string ParamReader::choice_or(const std::string& key, const std::string& fallback,
                                   const std::vector<std::string>& allowed) {
  if (!has(key)) return fallback;
  const Json& v = value(key);
  if (!v.is_string()) throw ValidationError(where_ + ": '" + key + "' must be a string");
  const auto s = v.get<std::string>();
  if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ValidationError(where_ + ": '" + key + "' must be one of " + list);
  }
  return s;
}

std::vector<std::size_t> ParamReader::dims_or(const std::string& key, std::vector<std::size_t> fallback) {
  if (!has(key)) return fallback;
  const Json& v = value(key);
  if (!v.is_array() || v.empty()) throw ValidationError(where_ + ": '" + key + "' must be a non-empty array");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    if (!e.is_number_unsigned() || e.get<std::size_t>() < 2) {
      throw ValidationError(where_ + ": '" + key + "' entries must be integers >= 2");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

const Json& ParamReader::object(const std::string& key) {
  const Json& v = value(key);
  if (!v.is_object()) throw ValidationError(where_ + ": '" + key + "' must be a JSON object");
  return v;
}

const Json& ParamReader::raw(const std::string& key) { return value(key); }

void ParamReader::finish() const {
  for (const auto& [key, _] : obj_.items()) {
    if (!used_.contains(key)) throw ValidationError(where_ + ": unknown key '" + key + "'");
  }
}

ScenarioConfig parse_config(const Json& doc, const std::string& default_name) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  ScenarioConfig cfg;
  cfg.source = doc;
  cfg.name = default_name;

  ParamReader top(doc, "config");
  if (!top.has("scenario")) throw ValidationError("config: missing required key 'scenario'");
  cfg.scenario = top.choice_or("scenario", "", scenario_names());
  if (top.has("seed")) {
    const Json& s = top.raw("seed");
    if (!s.is_number_unsigned()) throw ValidationError("config: 'seed' must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (!top.has("parameters")) throw ValidationError("config: missing required key 'parameters'");
  cfg.parameters = top.object("parameters");
  for (const auto& [key, v] : cfg.parameters.items()) {
    if (v.is_object()) throw ValidationError("parameters: '" + key + "' nests too deeply");
  }
  if (top.has("grid")) {
    ParamReader g(top.object("grid"), "grid");
    GridSpec grid;
    grid.omega_min = g.number_or("omega_min", grid.omega_min);
    grid.omega_max = g.number_or("omega_max", grid.omega_max);
    grid.points = g.count_or("points", grid.points);
    g.finish();
    if (!(grid.omega_max > grid.omega_min)) throw ValidationError("grid: omega_max must exceed omega_min");
    if (grid.points < 2) throw ValidationError("grid: points must be >= 2");
    cfg.grid = grid;
  }
  if (top.has("output")) {
    ParamReader o(top.object("output"), "output");
    if (o.has("name")) {
      const Json& n = o.raw("name");
      if (!n.is_string() || n.get<std::string>().empty()) throw ValidationError("output: 'name' must be a string");
      cfg.name = n.get<std::string>();
      if (cfg.name.find('/') != std::string::npos) throw ValidationError("output: 'name' must not contain '/'");
    }
    o.choice_or("format", "csv", {"csv"});
    o.finish();
  }
  top.finish();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc, path.stem().string());
}

}  // namespace nonrecip::app
