#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "scenarios.hpp"

namespace nonrecip::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Header line plus one row per sample, 17 significant digits.
std::string to_csv(const SweepResult& result);

Json metadata(const ScenarioConfig& cfg, const SweepResult& result, double runtime_seconds);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
};

/// Loads, validates and executes one scenario, then writes <name>.csv and
/// <name>.meta.json into the output directory. Nothing is written unless the
/// scenario completes. Diagnostics go to `err`.
int run_command(const std::filesystem::path& config_path, const RunOptions& opts, std::ostream& out,
                std::ostream& err);

/// Acceptance battery; exit 0 iff every selected criterion passes.
int verify_command(const std::string& filter, std::optional<std::uint64_t> seed, std::ostream& out,
                   std::ostream& err);

}  // namespace nonrecip::app
