#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "indiff/core/price_curve.hpp"

namespace indiff {

// ℓ -> p∞(ℓ) on (δ₋, δ⁺). Infinite endpoints use ±infinity.
class LimitCurve {
 public:
  using Fn = std::function<double(double)>;

  struct Domain {
    double delta_minus = -std::numeric_limits<double>::infinity();
    double delta_plus = std::numeric_limits<double>::infinity();
  };

  LimitCurve(Fn fn, double d, Domain domain, Orientation orientation = Orientation::bid,
             std::optional<double> limit_at_infinity = std::nullopt);

  // Throws ell_outside_domain when ℓ is outside [δ₋, δ⁺] (closed ends are accepted when finite,
  // since estimated curves are only known on grids).
  double operator()(double ell) const;

  double d() const noexcept { return d_; }
  double delta_minus() const noexcept { return domain_.delta_minus; }
  double delta_plus() const noexcept { return domain_.delta_plus; }
  Orientation orientation() const noexcept { return orientation_; }
  // Value approached as ℓ -> +∞ (ask curves: the upper end of the sellable range).
  const std::optional<double>& limit_at_infinity() const noexcept { return limit_inf_; }
  double limit_at_zero() const noexcept { return d_; }

  bool contains(double ell) const noexcept {
    return ell >= domain_.delta_minus && ell <= domain_.delta_plus;
  }

 private:
  Fn fn_;
  double d_;
  Domain domain_;
  Orientation orientation_;
  std::optional<double> limit_inf_;
};

}  // namespace indiff
