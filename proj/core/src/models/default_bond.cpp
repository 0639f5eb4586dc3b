#include "indiff/models/default_bond.hpp"

#include <cmath>
#include <sstream>

#include "indiff/core/error.hpp"
#include "indiff/numerics/lambert.hpp"
#include "indiff/numerics/ode.hpp"

namespace indiff::models {
namespace {

constexpr double kZeroStep = 1e-4;

void check_params(const DefaultBondParams& p) {
  if (!(p.sigma > 0.0)) raise(ErrorKind::domain, "sigma must be positive");
  if (!(p.T > 0.0)) raise(ErrorKind::domain, "horizon T must be positive");
}

double checked_lambda(const DefaultBondParams& p, long n) {
  const double lam = p.lambda(n);
  if (!(lam > 0.0)) raise(ErrorKind::domain, "default intensity must be positive");
  return lam;
}

// log H(t) for H = F·e^{aq}, which solves H' = H·[(λ + c) − ½σ²φ̂² − κφ̂], H(T) = 1,
// κ = 1 (as printed) or σ² (first-order condition).
double log_h(const DefaultBondParams& p, double lam, double a, double q, int steps, double t) {
  if (steps < 1) raise(ErrorKind::domain, "ODE needs at least one step");
  if (t > p.T || t < 0.0) raise(ErrorKind::domain, "time outside [0, T]");
  if (t == p.T) return 0.0;
  const double s2 = p.sigma * p.sigma;
  const double c = p.mu * p.mu / (2.0 * s2);
  const bool foc = p.fixed_point == FixedPointVariant::first_order_condition;
  const double kappa = foc ? s2 : 1.0;
  const double log_j = std::log(lam) + a * q + p.mu / s2 - (foc ? std::log(s2) : 0.0);
  auto rhs = [&](double, double h) {
    if (!(h > 0.0)) return std::nan("");
    const double phi = numerics::solve_x_exp_x_log(log_j - std::log(h));
    return h * ((lam + c) - 0.5 * s2 * phi * phi - kappa * phi);
  };
  const double dt = (t - p.T) / steps;
  double h = 1.0;
  for (int i = 0; i < steps; ++i) {
    h = numerics::rk4_step(rhs, p.T + i * dt, h, dt);
    if (!(h > 0.0)) {
      std::ostringstream os;
      os << "F <= 0 after " << i + 1 << " of " << steps << " steps (q=" << q << ")";
      raise(ErrorKind::positivity_lost, os.str());
    }
    if (!std::isfinite(h)) raise(ErrorKind::ode_blow_up, "non-finite F");
  }
  return std::log(h);
}

}  // namespace

double default_bond_log_F(const DefaultBondParams& p, long n, double a, double q, int steps,
                          double t) {
  check_params(p);
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  return -a * q + log_h(p, checked_lambda(p, n), a, q, steps, t);
}

double default_bond_F(const DefaultBondParams& p, long n, double a, double q, int steps,
                      double t) {
  return std::exp(default_bond_log_F(p, n, a, q, steps, t));
}

double default_bond_price(const DefaultBondParams& p, long n, double a, double q) {
  check_params(p);
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  const double lam = checked_lambda(p, n);
  if (q == 0.0) {
    const double up = log_h(p, lam, a, kZeroStep, p.steps, 0.0);
    const double dn = log_h(p, lam, a, -kZeroStep, p.steps, 0.0);
    return 1.0 - (up - dn) / (2.0 * a * kZeroStep);
  }
  const double base = log_h(p, lam, a, 0.0, p.steps, 0.0);
  return 1.0 - (log_h(p, lam, a, q, p.steps, 0.0) - base) / (a * q);
}

DefaultBondModel::DefaultBondModel(DefaultBondParams params) : params_(std::move(params)) {
  check_params(params_);
}

PriceCurve DefaultBondModel::curve(long n, double a) const {
  check_index(n);
  const double lam = checked_lambda(params_, n);
  const double d = default_bond_price(params_, n, a, 0.0);
  const double base = log_h(params_, lam, a, 0.0, params_.steps, 0.0);
  CurveInfo info{n, a, d, PriceBounds{0.0, 1.0}, EvalMode::ode, Orientation::bid};
  auto p = params_;
  return PriceCurve(info, [p, lam, a, d, base](double q) {
    if (q == 0.0) return PriceSample{d, 0.0};
    return PriceSample{1.0 - (log_h(p, lam, a, q, p.steps, 0.0) - base) / (a * q), 0.0};
  });
}

RateSchedule DefaultBondModel::default_rate() const {
  auto p = params_;
  return RateSchedule([p](long n) { return -std::log(checked_lambda(p, n)); }, "-log(lambda)");
}

RiskAversionSchedule DefaultBondModel::default_risk_aversion() const {
  return RiskAversionSchedule::constant(1.0);
}

}  // namespace indiff::models
