#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "indiff/core/schedule.hpp"
#include "indiff/models/basis_risk.hpp"
#include "indiff/models/default_bond.hpp"
#include "indiff/models/gaussian.hpp"
#include "indiff/models/transaction_cost.hpp"

namespace indiff::scenario {

// Schema violation. field is the dotted path; line is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class Task { price, curve, limit, rates, position, equilibrium, pde, sweep };
enum class Format { csv, jsonl };

std::string_view to_string(Task task) noexcept;
std::string_view to_string(Format format) noexcept;

struct BasisRiskSpec {
  models::BasisRiskParams params;
  models::BasisRiskModel::Method method = models::BasisRiskModel::Method::quadrature;
};

using ModelParams = std::variant<models::GaussianResidualParams, BasisRiskSpec,
                                 models::DefaultBondParams, models::TransCostParams>;

struct InvestorConfig {
  RiskAversionSchedule a = RiskAversionSchedule::constant(1.0);
  Sequence b = 0.0;
};

struct Tolerances {
  double position = 1e-9;
  double cauchy = 1e-4;
  double equilibrium = 1e-10;
  double validation = 1e-10;
};

struct ScenarioConfig;

struct SweepConfig {
  std::string parameter;  // key inside the model section
  std::vector<std::string> values;
  std::vector<ScenarioConfig> runs;  // one fully validated scenario per value
};

struct ScenarioConfig {
  std::string id;
  std::string family;
  ModelParams model;
  Task task = Task::price;
  std::vector<long> index;
  std::optional<RateSchedule> rate;
  std::optional<RiskAversionSchedule> risk_aversion;
  std::optional<Sequence> p_tilde;
  std::vector<double> q_grid;    // price, curve
  bool q_scaled = false;         // price: q_grid holds l and q = l r_n
  std::vector<double> ell_grid;  // limit
  std::vector<double> b_values;  // pde
  std::vector<double> spots;     // pde, empty means the model's spot
  bool validate_curves = true;   // curve
  InvestorConfig investor1, investor2;
  std::optional<SweepConfig> sweep;
  Format format = Format::csv;
  std::string output_path;
  std::uint64_t seed = 42;
  int threads = 1;
  Tolerances tol;
};

// Parses and validates a scenario. Unknown keys, missing fields and malformed expressions
// raise ConfigError naming the field and line.
ScenarioConfig parse_config(const std::string& yaml_text);
ScenarioConfig load_config(const std::string& path);

}  // namespace indiff::scenario
