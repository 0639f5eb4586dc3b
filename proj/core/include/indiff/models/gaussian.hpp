#pragma once

#include <string>

#include "indiff/core/market_model.hpp"
#include "indiff/core/schedule.hpp"

namespace indiff::models {

// Residual risk Yₙ ~ N(0, γₙ²) with marginal price dₙ. gamma2 stores the variance.
struct GaussianResidualParams {
  Sequence d;
  Sequence gamma2;
  IndexRange range{};
};

// dₙ - ½·a·q·γₙ²
double gaussian_price(const GaussianResidualParams& p, long n, double a, double q);

// -(p̃ - dₙ)/(a·γₙ²)
double gaussian_optimal_position(const GaussianResidualParams& p, long n, double a, double p_tilde);

class GaussianModel final : public MarketSequenceModel {
 public:
  explicit GaussianModel(GaussianResidualParams params);

  PriceCurve curve(long n, double a) const override;
  IndexRange index_range() const override { return params_.range; }
  // rₙ = 1/γₙ²
  RateSchedule default_rate() const override;
  RiskAversionSchedule default_risk_aversion() const override;
  std::string family() const override { return "gaussian"; }

  const GaussianResidualParams& params() const noexcept { return params_; }

 private:
  GaussianResidualParams params_;
};

}  // namespace indiff::models
