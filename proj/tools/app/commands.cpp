#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "acceptance.hpp"
#include "nonrecip/errors.hpp"

#ifndef NONRECIP_VERSION
#define NONRECIP_VERSION "unknown"
#endif

namespace nonrecip::app {

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << contents;
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::string s;
  for (std::size_t c = 0; c < result.names.size(); ++c) {
    if (c) s += ',';
    s += result.names[c];
  }
  s += '\n';
  char buf[40];
  for (std::size_t row = 0; row < result.rows(); ++row) {
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
      if (c) s += ',';
      std::snprintf(buf, sizeof buf, "%.17g", result.columns[c][row]);
      s += buf;
    }
    s += '\n';
  }
  return s;
}

Json metadata(const ScenarioConfig& cfg, const SweepResult& result, double runtime_seconds) {
  Json meta;
  meta["name"] = cfg.name;
  meta["scenario"] = cfg.scenario;
  meta["seed"] = cfg.seed;
  meta["config"] = cfg.source;
  meta["version"] = NONRECIP_VERSION;
  meta["units"] = "rates and frequencies in units of kappa (kappa = 1 by convention); hbar = 1";
  meta["columns"] = result.names;
  meta["rows"] = result.rows();
  meta["results"] = result.scalars;
  meta["runtime_seconds"] = runtime_seconds;
  return meta;
}

int run_command(const std::filesystem::path& config_path, const RunOptions& opts, std::ostream& out,
                std::ostream& err) {
  try {
    ScenarioConfig cfg = load_config(config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    const auto run = prepare_scenario(cfg);

    const auto start = std::chrono::steady_clock::now();
    const SweepResult result = run();
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string csv = to_csv(result);
    const std::string meta = metadata(cfg, result, runtime).dump(2) + "\n";
    std::filesystem::create_directories(opts.out_dir);
    const auto csv_path = opts.out_dir / (cfg.name + ".csv");
    const auto meta_path = opts.out_dir / (cfg.name + ".meta.json");
    write_file(csv_path, csv);
    write_file(meta_path, meta);
    out << "wrote " << csv_path.string() << " and " << meta_path.string() << "\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int verify_command(const std::string& filter, std::optional<std::uint64_t> seed, std::ostream& out,
                   std::ostream& err) {
  AcceptanceOptions opts;
  opts.filter = filter;
  if (seed) opts.seed = *seed;
  const auto results = run_acceptance(opts, &out);
  if (results.empty()) {
    err << "no criterion matches filter '" << filter << "'\n";
    return kExitValidation;
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  out << passed << "/" << results.size() << " criteria passed\n";
  return passed == results.size() ? kExitOk : kExitFailure;
}

}  // namespace nonrecip::app
