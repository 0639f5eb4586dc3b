#include "indiff/models/ldp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "indiff/core/error.hpp"
#include "indiff/numerics/minimize.hpp"

namespace indiff::models {

double ldp_limit_price(double d, double a, const RateFunction& I, double ell) {
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  if (!I.eval) raise(ErrorKind::domain, "rate function has no evaluator");
  if (ell == 0.0) return d;
  const double c = a * ell;
  auto objective = [&](double y) {
    const double v = I.eval(y);
    if (std::isnan(v) || v < 0.0) raise(ErrorKind::domain, "rate function must be >= 0");
    return c * y + v;
  };

  double inf_value;  // inf_y (c·y + I(y)) = −sup_y(−c·y − I(y))
  if (I.convex) {
    try {
      const numerics::Bracket hint{I.zero_lo - 1.0, I.zero_hi + 1.0};
      inf_value = numerics::minimize_unimodal(objective, hint, 1e-10).fx;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::unbounded_objective) throw;
      std::ostringstream os;
      os << "sup over y is unbounded at l=" << ell;
      raise(ErrorKind::ell_outside_domain, os.str());
    }
  } else {
    const auto [lo, hi] = I.scan_range;
    const int m = std::max(I.scan_points, 10);
    inf_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      inf_value = std::min(inf_value, objective(lo + (hi - lo) * i / (m - 1)));
    }
  }
  if (!std::isfinite(inf_value)) {
    raise(ErrorKind::ell_outside_domain, "rate function is infinite on the search range");
  }
  return d + inf_value / c;
}

}  // namespace indiff::models
