#include "indiff/numerics/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "indiff/core/error.hpp"

namespace indiff::numerics {

double hermite_cubic(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

void limit_monotone_slopes(const std::vector<double>& x, const std::vector<double>& y,
                           std::vector<double>& d) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    if (delta == 0.0) {
      d[i] = 0.0;
      d[i + 1] = 0.0;
      continue;
    }
    if (d[i] / delta < 0.0) d[i] = 0.0;
    if (d[i + 1] / delta < 0.0) d[i + 1] = 0.0;
    const double alpha = d[i] / delta, beta = d[i + 1] / delta;
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d[i] = tau * alpha * delta;
      d[i + 1] = tau * beta * delta;
    }
  }
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) raise(ErrorKind::domain, "interpolation needs >= 2 matching points");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) raise(ErrorKind::domain, "interpolation knots must increase");
  }
  d_.assign(n, 0.0);
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double del0, double del1) {
    double d = ((2 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0) {
      d = 0.0;
    } else if (del0 * del1 <= 0.0 && std::abs(d) > std::abs(3 * del0)) {
      d = 3 * del0;
    }
    return d;
  };
  d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return hermite_cubic(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
}

}  // namespace indiff::numerics
