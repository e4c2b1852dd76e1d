#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "nonrecip/models.hpp"

namespace nonrecip::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Applied to every amplifier system the battery builds. Used by the mutation
/// fixture to confirm the directionality criterion can fail.
using SystemMutation = std::function<void(models::LinearSystem&)>;

struct AcceptanceOptions {
  /// Substring of the criterion name; empty runs everything.
  std::string filter;
  std::uint64_t seed = 20240611;
  std::size_t workers = 0;
  SystemMutation amplifier_mutation;
};

struct Criterion {
  int id = 0;
  std::string name;
  std::function<CriterionResult(const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& criteria();

/// Runs the selected criteria in order. Numerical failures inside a criterion
/// mark it failed. Each result is echoed to `log` as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* log = nullptr);

std::string format_result(const CriterionResult& r);

/// Flips the sign of eta in the second amplifier reservoir.
void flip_second_reservoir_sign(models::LinearSystem& system);

}  // namespace nonrecip::app
