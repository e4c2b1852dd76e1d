#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace nonrecip::app {

struct SweepResult {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  /// Scalar results for the metadata file.
  Json scalars = Json::object();

  void add_column(std::string name, std::vector<double> values);
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Reads and validates every scenario parameter, returning the deferred run.
/// Validation failures throw before anything executes.
std::function<SweepResult()> prepare_scenario(const ScenarioConfig& cfg);

}  // namespace nonrecip::app
