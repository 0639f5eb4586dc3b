#pragma once

#include <functional>
#include <optional>
#include <utility>

namespace indiff::models {

// Good rate function I : R -> [0, ∞] (+∞ allowed outside the effective domain).
struct RateFunction {
  std::function<double(double)> eval;
  // {I = 0}; the limit curve is continuous at 0 when this is the single point 0
  double zero_lo = 0.0;
  double zero_hi = 0.0;
  bool convex = true;
  // Search window for the grid-scan fallback used when I is not declared convex.
  std::pair<double, double> scan_range{-50.0, 50.0};
  int scan_points = 20001;
};

// p∞(ℓ) = d − (1/(aℓ))·sup_y(−aℓ·y − I(y)),  p∞(0) = d.
// Throws ell_outside_domain when the supremum is +∞.
double ldp_limit_price(double d, double a, const RateFunction& I, double ell);

}  // namespace indiff::models
