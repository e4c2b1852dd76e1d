#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "app/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Non-reciprocal interaction simulator: scenario runs and acceptance checks"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out_dir, "Directory for result files");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one scenario config and write <name>.csv and <name>.meta.json");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();

  std::string filter;
  auto* verify = app.add_subcommand("verify", "Run the acceptance battery");
  verify->add_option("--filter", filter, "Only criteria whose name contains this text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nonrecip::app::kExitValidation;
  }

  if (*run) {
    nonrecip::app::RunOptions opts;
    opts.seed = seed;
    opts.out_dir = out_dir;
    return nonrecip::app::run_command(config_path, opts, std::cout, std::cerr);
  }
  return nonrecip::app::verify_command(filter, seed, std::cout, std::cerr);
}
