#include "indiff/models/black_scholes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "indiff/core/error.hpp"

namespace indiff::models {
namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

double black_scholes_price(double s, double t, double sigma, double K, double T) {
  if (!(s > 0.0) || !(K > 0.0) || !(sigma >= 0.0)) {
    raise(ErrorKind::domain, "Black-Scholes needs s > 0, K > 0, sigma >= 0");
  }
  if (t > T) raise(ErrorKind::domain, "valuation time after maturity");
  const double tau = T - t;
  if (tau == 0.0 || sigma == 0.0) return std::max(s - K, 0.0);
  const double v = sigma * std::sqrt(tau);
  const double d1 = (std::log(s / K) + 0.5 * v * v) / v;
  return s * norm_cdf(d1) - K * norm_cdf(d1 - v);
}

}  // namespace indiff::models
