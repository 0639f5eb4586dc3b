#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "indiff/core/limit_curve.hpp"
#include "indiff/core/market_model.hpp"
#include "indiff/core/schedule.hpp"

namespace indiff::asymptotics {

struct ConvergenceDiagnostic {
  std::vector<long> n;
  std::vector<double> values;
  std::vector<double> std_errors;  // zero for deterministic evaluators
  std::vector<double> gaps;        // values[i+1] − values[i]
  double limit = 0.0;              // Aitken Δ² when the gaps shrink monotonically, else last value
  double limit_error = 0.0;        // |Aitken − last| or |last gap|
  bool aitken_used = false;
  double tol = 0.0;                // tolerance the Cauchy test used
  bool cauchy_ok = false;          // last ⌈k/3⌉ gaps all below tol
};

// Builds the diagnostic from a finished sequence. With standard errors, the effective
// tolerance is max(tol, 3·largest tail standard error).
ConvergenceDiagnostic diagnose_sequence(std::vector<long> n, std::vector<double> values, double tol,
                                        std::vector<double> std_errors = {});

struct Options {
  double cauchy_tol = 1e-4;
  double position_tol = 1e-9;  // optimizer tolerance on q
  int threads = 1;
};

// pⁿ_{aₙ}(ℓ·rₙ) over the index list.
ConvergenceDiagnostic scaled_price_sequence(const MarketSequenceModel& model,
                                            const RiskAversionSchedule& ra,
                                            const RateSchedule& rate, double ell,
                                            std::span<const long> n_list, const Options& opt = {});

struct LimitCurveEstimate {
  LimitCurve curve;
  std::vector<double> ell;     // convergent grid points, ascending (includes 0)
  std::vector<double> values;  // estimated p∞ at those points
  std::vector<ConvergenceDiagnostic> diagnostics;  // one per grid point, in grid order
  std::vector<double> grid;                        // full grid, ascending
  std::vector<double> excluded;  // grid points with cauchy_ok = false or outside the model domain
  double continuity_gap_minus = 0.0;  // |p∞(ℓ₋) − d| at the closest negative convergent point
  double continuity_gap_plus = 0.0;
  bool monotone_ok = true;
  bool concave_ok = true;
};

// p∞ on the convergent part of the grid around 0, PCHIP-interpolated in ℓ.
// Throws domain error when ℓ = 0 itself does not converge.
LimitCurveEstimate estimate_limit_curve(const MarketSequenceModel& model, const Schedules& sched,
                                        std::span<const double> ell_grid,
                                        std::span<const long> n_list, const Options& opt = {});

struct DeltaEstimate {
  double delta_minus = 0.0;
  double delta_plus = 0.0;
  bool empty = false;  // no convergent ℓ (warning)
};

// Largest convergent contiguous run of the grid around 0.
DeltaEstimate probe_delta(const MarketSequenceModel& model, const Schedules& sched,
                          std::span<const double> ell_grid, std::span<const long> n_list,
                          const Options& opt = {});

enum class Verdict { consistent_long, consistent_short, degenerate, inconsistent };

std::string_view to_string(Verdict v) noexcept;

struct RateVerdict {
  std::vector<long> n;
  std::vector<double> p_tilde, d_n, r, a, q_hat, ratio, price_at_optimum;
  double liminf_proxy = 0.0;  // min of the ratio over the last third of the list
  double limsup_proxy = 0.0;  // max over the same tail
  Verdict verdict = Verdict::inconsistent;
  std::optional<double> ell_star;  // extrapolated limit of the ratios when they converge
  ConvergenceDiagnostic ratio_diagnostic;
  std::string proxy_definition = "min/max of q_hat/r_n over the last ceil(k/3) indices";
};

// q̂ₙ(p̃ⁿ)/rₙ over the index list with a verdict against the sign law.
RateVerdict rate_ratio_sequence(const MarketSequenceModel& model, const Schedules& sched,
                                const Sequence& p_tilde, std::span<const long> n_list,
                                const Options& opt = {});

// ℓ* = argmin_ℓ (ℓ·p̃ − ℓ·p∞(ℓ)); requires strict concavity of ℓ·p∞(ℓ).
double corollary_limit(const LimitCurve& curve, double p_tilde, double tol = 1e-12);

// Every second difference of ℓ·p∞(ℓ) on the grid is below −tol.
bool check_strict_concavity(const LimitCurve& curve, std::span<const double> ell_grid,
                            double tol = 1e-10);

}  // namespace indiff::asymptotics
