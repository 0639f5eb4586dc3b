#include "indiff/models/gaussian.hpp"

#include "indiff/core/error.hpp"

namespace indiff::models {
namespace {

double checked_gamma2(const GaussianResidualParams& p, long n) {
  const double g2 = p.gamma2(n);
  if (!(g2 > 0.0)) raise(ErrorKind::domain, "gamma^2 must be positive at n=" + std::to_string(n));
  return g2;
}

}  // namespace

double gaussian_price(const GaussianResidualParams& p, long n, double a, double q) {
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  return p.d(n) - 0.5 * a * q * checked_gamma2(p, n);
}

double gaussian_optimal_position(const GaussianResidualParams& p, long n, double a,
                                 double p_tilde) {
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  return -(p_tilde - p.d(n)) / (a * checked_gamma2(p, n));
}

GaussianModel::GaussianModel(GaussianResidualParams params) : params_(std::move(params)) {}

PriceCurve GaussianModel::curve(long n, double a) const {
  check_index(n);
  const double d = params_.d(n);
  const double g2 = checked_gamma2(params_, n);
  CurveInfo info{n, a, d, {}, EvalMode::closed_form, Orientation::bid};
  return PriceCurve(info, [d, g2, a](double q) { return PriceSample{d - 0.5 * a * q * g2, 0.0}; });
}

RateSchedule GaussianModel::default_rate() const {
  auto p = params_;
  return RateSchedule([p](long n) { return 1.0 / checked_gamma2(p, n); }, "1/gamma2");
}

RiskAversionSchedule GaussianModel::default_risk_aversion() const {
  return RiskAversionSchedule::constant(1.0);
}

}  // namespace indiff::models
