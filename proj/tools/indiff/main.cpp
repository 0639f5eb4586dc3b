#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "indiff/core/error.hpp"
#include "indiff/scenario/config.hpp"
#include "indiff/scenario/report.hpp"
#include "indiff/scenario/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitModel = 3;
constexpr int kExitIo = 4;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  out = os.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace indiff::scenario;

  CLI::App app{"Indifference pricing scenarios: prices, positions, limits and equilibria"};
  std::string config_path, out_path, format;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", config_path, "Scenario file (YAML)")->required();
  auto* seed_opt = app.add_option("--seed", seed, "Random seed, overrides the scenario");
  app.add_option("--out", out_path, "Output file, '-' for stdout; overrides the scenario");
  app.add_option("--format", format, "Output format, overrides the scenario")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--threads", threads, "Worker threads, overrides the scenario")
      ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  std::string text;
  if (!read_file(config_path, text)) {
    std::fprintf(stderr, "indiff: cannot read config '%s'\n", config_path.c_str());
    return kExitIo;
  }
  ScenarioConfig config;
  try {
    config = parse_config(text);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "indiff: config error in %s: %s\n", config_path.c_str(), e.what());
    return kExitConfig;
  }
  if (*seed_opt) config.seed = seed;
  if (threads > 0) config.threads = threads;
  if (!format.empty()) config.format = format == "csv" ? Format::csv : Format::jsonl;
  if (!out_path.empty()) config.output_path = out_path;
  const bool to_stdout = config.output_path.empty() || config.output_path == "-";

  Manifest manifest;
  manifest.scenario_id = config.id;
  manifest.task = std::string(to_string(config.task));
  manifest.config_path = config_path;
  manifest.config_hash = fnv1a_hex(text);
  manifest.output_path = to_stdout ? "-" : config.output_path;
  manifest.format = std::string(to_string(config.format));
  manifest.seed = config.seed;
  manifest.threads = config.threads;

  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  int status = 0;
  try {
    run_scenario(config, report);
  } catch (const indiff::Error& e) {
    std::fprintf(stderr, "indiff: %s\n", e.what());
    manifest.error = e.what();
    status = kExitModel;
  }
  manifest.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (status == 0) {
    if (to_stdout) {
      write_report(report, config.format, std::cout);
      std::cout.flush();
    } else {
      std::ofstream out(config.output_path, std::ios::binary);
      if (out) write_report(report, config.format, out);
      if (!out) {
        std::fprintf(stderr, "indiff: io: cannot write '%s'\n", config.output_path.c_str());
        return kExitIo;
      }
    }
    manifest.rows = static_cast<long>(report.rows().size());
    manifest.records = report.records();
  }
  manifest.exit_status = status;
  if (!to_stdout) {
    std::ofstream m(config.output_path + ".manifest.json", std::ios::binary);
    m << manifest_json(manifest);
    if (!m) {
      std::fprintf(stderr, "indiff: io: cannot write manifest for '%s'\n",
                   config.output_path.c_str());
      return status != 0 ? status : kExitIo;
    }
  }
  return status;
}
