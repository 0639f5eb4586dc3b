#pragma once

#include <functional>
#include <optional>
#include <string_view>

namespace indiff {

enum class EvalMode { closed_form, quadrature, monte_carlo, ode, pde_limit };

std::string_view to_string(EvalMode mode) noexcept;

// Bid curves are the buyer's indifference prices (non-increasing in q, defined on the whole
// line). Ask curves are seller's prices over q > 0 (non-decreasing, convex total).
enum class Orientation { bid, ask };

struct PriceSample {
  double price = 0.0;
  double std_error = 0.0;  // zero for deterministic evaluators
};

// Arbitrage-free interval (B̲ₙ, B̄ₙ); an empty optional means the side is unbounded.
struct PriceBounds {
  std::optional<double> lower;
  std::optional<double> upper;

  bool contains(double p) const noexcept {
    return (!lower || p > *lower) && (!upper || p < *upper);
  }
};

struct CurveInfo {
  long n = 1;
  double a = 1.0;
  double d_n = 0.0;
  PriceBounds bounds;
  EvalMode mode = EvalMode::closed_form;
  Orientation orientation = Orientation::bid;
};

// q -> pⁿ_a(q). Cheap to copy; the evaluator is shared and must be pure.
class PriceCurve {
 public:
  using Evaluator = std::function<PriceSample(double)>;

  PriceCurve(CurveInfo info, Evaluator eval);

  PriceSample sample(double q) const;
  double operator()(double q) const { return sample(q).price; }

  long n() const noexcept { return info_.n; }
  double a() const noexcept { return info_.a; }
  double d_n() const noexcept { return info_.d_n; }
  const PriceBounds& bounds() const noexcept { return info_.bounds; }
  EvalMode mode() const noexcept { return info_.mode; }
  Orientation orientation() const noexcept { return info_.orientation; }
  bool stochastic() const noexcept { return info_.mode == EvalMode::monte_carlo; }
  const CurveInfo& info() const noexcept { return info_; }

 private:
  CurveInfo info_;
  Evaluator eval_;
};

// q · p(q); exactly 0 at q = 0.
double total_price(const PriceCurve& curve, double q);

}  // namespace indiff
