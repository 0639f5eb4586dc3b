#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "indiff/core/limit_curve.hpp"
#include "indiff/core/price_curve.hpp"
#include "indiff/numerics/minimize.hpp"

namespace indiff::position {

struct CurveValidationReport {
  bool monotone_ok = true;
  bool concave_ok = true;  // concave total for bid curves, convex for ask curves
  bool bounds_ok = true;
  double worst_monotone = 0.0;  // largest violation magnitude, 0 if none
  double worst_concave = 0.0;
  double worst_bounds = 0.0;
  std::vector<double> grid;

  bool ok() const noexcept { return monotone_ok && concave_ok && bounds_ok; }
};

// Monotonicity of the price, concavity of q·p(q) by second differences and bound
// containment on a grid of ≥ 3 points. Monte Carlo curves get 3-standard-error slack.
CurveValidationReport validate_price_curve(const PriceCurve& curve, std::span<const double> q_grid,
                                           double tol);

enum class Side { long_position, short_position, zero };

std::string_view to_string(Side side) noexcept;

struct OptimalPositionResult {
  double q_hat = 0.0;
  double objective = 0.0;  // q̂·p̃ − q̂·p(q̂) for bids; q̂·p(q̂) − q̂·p̃ for asks
  Side side = Side::zero;
  numerics::Bracket bracket{0.0, 0.0};
  int evaluations = 0;
  double tol_achieved = 0.0;
  bool certificate_ok = true;  // objective(q̂) ≤ objective(q̂ ± tol·max(1,|q̂|))
};

// argmin_q (q·p̃ − q·p(q)). Long iff p̃ < dₙ − tol, short iff p̃ > dₙ + tol, zero otherwise.
// Ask curves are forwarded to optimal_sale_quantity.
OptimalPositionResult optimal_position(const PriceCurve& curve, double p_tilde, double tol);

// argmax_{q>0} (q·p̃ − q·ask(q)) for ask curves, solved as the flipped minimization. q̂ is the
// quantity sold and the side is reported as short.
OptimalPositionResult optimal_sale_quantity(const PriceCurve& ask_curve, double p_tilde, double tol);
OptimalPositionResult optimal_sale_quantity(const LimitCurve& ask_curve, double p_tilde, double tol);

// Grid argmin of the bid objective on n_grid equally spaced points of [q_lo, q_hi].
// Ties go to the smallest |q|, then the smallest q.
double brute_force_position(const PriceCurve& curve, double p_tilde, double q_lo, double q_hi,
                            long n_grid);

// Grid argmin of ℓ·ask(ℓ) − ℓ·p̃ on n_grid equally spaced points of [l_lo, l_hi].
double brute_force_sale_quantity(const LimitCurve& ask_curve, double p_tilde, double l_lo,
                                 double l_hi, long n_grid);

}  // namespace indiff::position
