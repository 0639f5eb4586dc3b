#include "indiff/numerics/lambert.hpp"

#include <algorithm>
#include <cmath>

#include "indiff/core/error.hpp"

namespace indiff::numerics {
namespace {

// Root of h(x) = x + ln x - L on x > 0 (equivalent to x eˣ = e^L), for large L.
double solve_log_form(double L, double tol) {
  double lo = 0.0, hi = std::max(1.0, L + 1.0);
  double x = std::max(L - std::log(std::max(L, 1.0)), 0.5);
  for (int it = 0; it < 200; ++it) {
    const double h = x + std::log(x) - L;
    if (h > 0.0) hi = x; else lo = x;
    double next = x - h / (1.0 + 1.0 / x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol * std::max(1.0, x)) return next;
    x = next;
  }
  return x;
}

}  // namespace

double solve_x_exp_x(double c, double tol) {
  if (std::isnan(c) || c < 0.0) raise(ErrorKind::domain, "x exp(x) = c needs c >= 0");
  if (!(tol > 0.0)) raise(ErrorKind::domain, "tolerance must be positive");
  if (c == 0.0) return 0.0;
  if (std::isinf(c)) raise(ErrorKind::domain, "x exp(x) = c needs finite c");
  if (c > 1e6) return solve_log_form(std::log(c), tol);

  double lo = 0.0, hi = std::max(1.0, std::log1p(c) + 1.0);
  double x = std::log1p(c);
  for (int it = 0; it < 200; ++it) {
    const double ex = std::exp(x);
    const double g = x * ex - c;
    if (g > 0.0) hi = x; else lo = x;
    double next = x - g / ((x + 1.0) * ex);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol * std::max(1.0, x)) return next;
    x = next;
  }
  return x;
}

double solve_x_exp_x_log(double log_c, double tol) {
  if (std::isnan(log_c)) raise(ErrorKind::domain, "log c is NaN");
  if (log_c == -INFINITY) return 0.0;
  if (log_c < std::log(1e6)) return solve_x_exp_x(std::exp(log_c), tol);
  return solve_log_form(log_c, tol);
}

}  // namespace indiff::numerics
