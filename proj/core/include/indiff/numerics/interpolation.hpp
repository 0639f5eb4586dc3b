#pragma once

#include <vector>

namespace indiff::numerics {

// Cubic Hermite interpolant on [x0, x1] with end values y and end slopes d.
double hermite_cubic(double x0, double x1, double y0, double y1, double d0, double d1, double x);

// Fritsch-Carlson limiter: rescales slopes in place so the Hermite interpolant through
// monotone data stays monotone.
void limit_monotone_slopes(const std::vector<double>& x, const std::vector<double>& y,
                           std::vector<double>& slopes);

// Shape-preserving piecewise cubic (PCHIP). Extrapolation clamps to the end values.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, d_;
};

}  // namespace indiff::numerics
