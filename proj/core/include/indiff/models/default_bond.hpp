#pragma once

#include <string>

#include "indiff/core/market_model.hpp"
#include "indiff/core/schedule.hpp"

namespace indiff::models {

// Which fixed point defines the optimal jump control φ̂:
//   as_printed:            φ̂ e^{φ̂} = λₙ e^{aq} e^{μ/σ²} / H
//   first_order_condition: φ̂ e^{φ̂} = λₙ e^{aq} e^{μ/σ²} / (σ² H)
enum class FixedPointVariant { as_printed, first_order_condition };

// Stock dS/S = μdt + σdW that defaults at rate λₙ; claim pays 1 at T on survival.
struct DefaultBondParams {
  double mu = 0.05;
  double sigma = 0.2;
  Sequence lambda = 0.01;
  double T = 1.0;
  int steps = 2000;
  FixedPointVariant fixed_point = FixedPointVariant::as_printed;
  IndexRange range{};
};

// log Fⁿ(t; q), integrating the value-function ODE backward from F(T; q) = e^{-aq}.
// Throws positivity_lost if F reaches 0 (step count too small).
double default_bond_log_F(const DefaultBondParams& p, long n, double a, double q, int steps,
                          double t = 0.0);
double default_bond_F(const DefaultBondParams& p, long n, double a, double q, int steps,
                      double t = 0.0);

// −(1/(aq))·log(F(0; q)/F(0; 0)); centered difference with h = 1e-4 at q = 0.
double default_bond_price(const DefaultBondParams& p, long n, double a, double q);

class DefaultBondModel final : public MarketSequenceModel {
 public:
  explicit DefaultBondModel(DefaultBondParams params);

  PriceCurve curve(long n, double a) const override;
  IndexRange index_range() const override { return params_.range; }
  // rₙ = −log λₙ
  RateSchedule default_rate() const override;
  RiskAversionSchedule default_risk_aversion() const override;
  std::string family() const override { return "default_bond"; }

  const DefaultBondParams& params() const noexcept { return params_; }

 private:
  DefaultBondParams params_;
};

}  // namespace indiff::models
