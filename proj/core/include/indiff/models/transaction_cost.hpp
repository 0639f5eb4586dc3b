#pragma once

#include <memory>
#include <string>
#include <vector>

#include "indiff/core/limit_curve.hpp"
#include "indiff/core/market_model.hpp"
#include "indiff/core/schedule.hpp"
#include "indiff/numerics/interpolation.hpp"

namespace indiff::models {

struct PdeConfig {
  // Upper end of the log-spot grid is K·s_max_mult (lower end K/s_max_mult), but never
  // narrower than six standard deviations.
  double s_max_mult = 2980.9579870417283;  // e^8
  int space_points = 2001;
  int time_steps = 1000;  // graded toward maturity: τ_k = (T−t)(k/M)²
  double clamp_lo = -1e12;  // range for the S-argument b²s²Ψ_ss
  double clamp_hi = 1e12;
  int max_newton = 40;
  int max_refinements = 8;  // step halvings allowed when Newton stalls
  double newton_tol = 1e-10;
};

struct TransCostParams {
  double sigma = 0.2;
  double K = 100.0;
  double T = 1.0;
  double s = 100.0;
  double t = 0.0;
  Sequence lambda = 0.01;  // proportional cost λₙ ∈ (0, 1)
  PdeConfig pde{};
  int b_grid_points = 41;  // limit-curve cache, uniform in b^{2/3}
  double ell_max = 100.0;  // largest aℓ covered by the cache
  int threads = 1;
  IndexRange range{};
};

// Ψ(·, t; b) on the log-spot grid at the valuation time.
struct PsiSurface {
  double b = 0.0;
  double t = 0.0;
  std::vector<double> x;  // log spot, uniform
  std::vector<double> values;
  int newton_iterations = 0;
  int refinements = 0;

  double spot(std::size_t i) const;
  // Cubic interpolation in log spot.
  double at(double s) const;
};

// Solves Ψ_t + ½σ²s²Ψ_ss(1 + S(b²s²Ψ_ss)) = 0, Ψ(s, T) = (s − K)⁺, by backward Euler with
// Newton iterations on a log-spot grid (boundaries 0 and s − K).
PsiSurface transaction_psi(const TransCostParams& p, double b, const PdeConfig& grid);
PsiSurface transaction_psi(const TransCostParams& p, double b);

// Ask curve ℓ ↦ Ψ(s, t; √(aℓ)) for ℓ ∈ (0, ell_max/a], interpolated from cached solves.
LimitCurve transaction_limit_curve(const TransCostParams& p, double a);

// Cached Ψ(s, t; b) over the b-grid, shared by curves built from it.
class PsiCache {
 public:
  explicit PsiCache(const TransCostParams& p);

  // Ψ at the valuation point for aℓ = v, v ∈ [0, ell_max]; clamps beyond ell_max.
  double operator()(double a_ell) const;
  double black_scholes_node() const noexcept { return values_.front(); }
  const std::vector<double>& b_grid() const noexcept { return b_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double ell_max() const noexcept { return ell_max_; }

 private:
  std::vector<double> b_, values_;
  numerics::MonotoneCubic interp_;  // in u = (aℓ)^{1/3}
  double ell_max_;
};

LimitCurve transaction_limit_curve(const std::shared_ptr<const PsiCache>& cache,
                                   const TransCostParams& p, double a);

class TransactionCostModel final : public MarketSequenceModel {
 public:
  explicit TransactionCostModel(TransCostParams params);

  // Ask curve q ↦ Ψ(s, t; √(a q/rₙ)) on q ≥ 0.
  PriceCurve curve(long n, double a) const override;
  IndexRange index_range() const override { return params_.range; }
  // rₙ = λₙ^{-2}
  RateSchedule default_rate() const override;
  RiskAversionSchedule default_risk_aversion() const override;
  std::string family() const override { return "transaction"; }

  LimitCurve limit_curve(double a) const;
  const TransCostParams& params() const noexcept { return params_; }
  const PsiCache& cache() const noexcept { return *cache_; }

 private:
  TransCostParams params_;
  std::shared_ptr<const PsiCache> cache_;
};

}  // namespace indiff::models
