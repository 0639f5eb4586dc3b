#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "indiff/core/market_model.hpp"
#include "indiff/core/price_curve.hpp"
#include "indiff/core/schedule.hpp"
#include "indiff/models/coefficient.hpp"

namespace indiff::models {

enum class PathSampling {
  automatic,  // exact when coefficients are constant, Euler otherwise
  exact,
  euler,
};

struct MonteCarloConfig {
  long paths = 100000;  // total paths, antithetic partners included
  int time_steps = 0;   // Euler steps; 0 means round(252·T)
  std::uint64_t seed = 42;
  bool antithetic = true;
  PathSampling sampling = PathSampling::automatic;
  int threads = 1;
};

// Traded asset dS/S = μ(Y)dt + σ(Y)dW̃, factor dY = b(Y)dt + a_Y(Y)dW with d⟨W,W̃⟩ = ρₙ dt.
// Claim B(Y_T). λ = μ/σ.
struct BasisRiskParams {
  Coefficient mu = 0.0;
  Coefficient sigma = 1.0;
  Coefficient b = 0.0;
  Coefficient a_y = 1.0;
  Sequence rho = 0.0;
  double T = 1.0;
  double y0 = 0.0;
  std::function<double(double)> payoff = [](double) { return 0.0; };
  // ess inf / ess sup of B(Y_T) when known; used as the arbitrage-free price bounds
  std::optional<double> payoff_lower;
  std::optional<double> payoff_upper;
  MonteCarloConfig mc{};
  int quadrature_order = 64;
  IndexRange range{};

  bool constant_coefficients() const noexcept {
    return mu.is_constant() && sigma.is_constant() && b.is_constant() && a_y.is_constant();
  }
};

// Frozen Monte Carlo sample of (log w, B) pairs at a fixed correlation. Evaluation is
// deterministic, so optimizers see a consistent curve.
class BasisRiskSample {
 public:
  // Price −(1/c)·log(E[w e^{−cB}]/E[w]) with c = a·q/rₙ, and E[wB]/E[w] at c = 0.
  PriceSample price_at(double c) const;
  long samples() const noexcept { return static_cast<long>(log_w_.size()) / members_; }
  int members() const noexcept { return members_; }

 private:
  friend BasisRiskSample simulate_basis_risk(const BasisRiskParams&, double, const MonteCarloConfig&);

  int members_ = 2;  // paths per independent sample (2 with antithetics)
  std::vector<double> log_w_;  // members_ entries per sample, flattened
  std::vector<double> payoff_;
};

// Simulates weights w = exp(−ρ∫λdW − ½∫λ²dt) and payoffs under ℙ. Throws
// model_assumption_violated if a path produces non-finite values.
BasisRiskSample simulate_basis_risk(const BasisRiskParams& p, double rho, const MonteCarloConfig& mc);

// (1 − ρₙ²)^{-1}
double basis_risk_rate(const BasisRiskParams& p, long n);

PriceSample basis_risk_price_mc(const BasisRiskParams& p, long n, double a, double q);

// Constant coefficients only: W_T ~ N(−ρλT, T) under the normalized weight.
double basis_risk_price_quadrature(const BasisRiskParams& p, long n, double a, double q);

// p∞(ℓ) = −(1/(aℓ))·log E^ℚ[e^{−aℓB(Y_T)}], p∞(0) = E^ℚ[B(Y_T)].
// Quadrature for constant coefficients, Monte Carlo (ρ = 1) otherwise.
double basis_risk_limit(const BasisRiskParams& p, double a, double ell);

class BasisRiskModel final : public MarketSequenceModel {
 public:
  enum class Method { monte_carlo, quadrature };

  BasisRiskModel(BasisRiskParams params, Method method);

  PriceCurve curve(long n, double a) const override;
  IndexRange index_range() const override { return params_->range; }
  RateSchedule default_rate() const override;
  RiskAversionSchedule default_risk_aversion() const override;
  std::string family() const override { return "basis_risk"; }

  Method method() const noexcept { return method_; }
  const BasisRiskParams& params() const noexcept { return *params_; }

 private:
  std::shared_ptr<const BasisRiskParams> params_;
  Method method_;
};

}  // namespace indiff::models
