#pragma once

#include <memory>
#include <string>

#include "indiff/core/market_model.hpp"
#include "indiff/scenario/config.hpp"
#include "indiff/scenario/report.hpp"

namespace indiff::scenario {

// The configured model with the scenario's seed and thread count applied.
std::unique_ptr<MarketSequenceModel> build_model(const ScenarioConfig& config);

// Appends the scenario's records to the report in index order. Model failures propagate as
// indiff::Error.
void run_scenario(const ScenarioConfig& config, Report& report);

struct Manifest {
  std::string scenario_id;
  std::string task;
  std::string config_path;
  std::string config_hash;
  std::string output_path;
  std::string format;
  std::uint64_t seed = 0;
  int threads = 1;
  long rows = 0;
  long records = 0;
  double wall_time_s = 0.0;
  int exit_status = 0;
  std::string error;
};

std::string manifest_json(const Manifest& m);

}  // namespace indiff::scenario
