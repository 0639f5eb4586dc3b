#include "indiff/core/price_curve.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "indiff/core/error.hpp"

namespace indiff {

std::string_view to_string(EvalMode mode) noexcept {
  switch (mode) {
    case EvalMode::closed_form: return "closed_form";
    case EvalMode::quadrature: return "quadrature";
    case EvalMode::monte_carlo: return "monte_carlo";
    case EvalMode::ode: return "ode";
    case EvalMode::pde_limit: return "pde_limit";
  }
  return "unknown";
}

PriceCurve::PriceCurve(CurveInfo info, Evaluator eval) : info_(info), eval_(std::move(eval)) {
  if (!eval_) raise(ErrorKind::domain, "price curve needs an evaluator");
  if (!(info_.a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
}

PriceSample PriceCurve::sample(double q) const {
  if (!std::isfinite(q)) raise(ErrorKind::domain, "position must be finite");
  if (info_.orientation == Orientation::ask && q < 0.0) {
    std::ostringstream os;
    os << "ask curve is defined for q >= 0 only, got q=" << q;
    raise(ErrorKind::domain, os.str());
  }
  return eval_(q);
}

double total_price(const PriceCurve& curve, double q) {
  if (q == 0.0) return 0.0;
  return q * curve(q);
}

}  // namespace indiff
