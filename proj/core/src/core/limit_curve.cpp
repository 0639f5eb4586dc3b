#include "indiff/core/limit_curve.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "indiff/core/error.hpp"

namespace indiff {

LimitCurve::LimitCurve(Fn fn, double d, Domain domain, Orientation orientation,
                       std::optional<double> limit_at_infinity)
    : fn_(std::move(fn)),
      d_(d),
      domain_(domain),
      orientation_(orientation),
      limit_inf_(limit_at_infinity) {
  if (!fn_) raise(ErrorKind::domain, "limit curve needs an evaluator");
  if (!(domain_.delta_minus <= 0.0 && domain_.delta_plus >= 0.0)) {
    raise(ErrorKind::domain, "limit-curve domain must contain 0");
  }
}

double LimitCurve::operator()(double ell) const {
  if (std::isnan(ell) || !contains(ell)) {
    std::ostringstream os;
    os << "l=" << ell << " outside [" << domain_.delta_minus << ", " << domain_.delta_plus << "]";
    raise(ErrorKind::ell_outside_domain, os.str());
  }
  if (ell == 0.0) return d_;
  return fn_(ell);
}

}  // namespace indiff
