#pragma once

#include <cmath>
#include <sstream>

#include "indiff/core/error.hpp"

namespace indiff::numerics {

// One classical Runge-Kutta step of size h (negative h integrates backward).
template <class F>
double rk4_step(F&& f, double t, double y, double h) {
  const double k1 = f(t, y);
  const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = f(t + h, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// y(t1) for y' = f(t, y), y(t0) = y0, with `steps` equal steps. t1 < t0 is allowed.
template <class F>
double rk4_integrate(F&& f, double t0, double t1, double y0, int steps) {
  if (steps < 1) raise(ErrorKind::domain, "rk4 needs at least one step");
  const double h = (t1 - t0) / steps;
  double y = y0;
  for (int i = 0; i < steps; ++i) {
    const double t = (i + 1 == steps) ? t1 - h : t0 + i * h;
    y = rk4_step(f, t, y, h);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "non-finite state after step " << i + 1 << " at t=" << t + h;
      raise(ErrorKind::ode_blow_up, os.str());
    }
  }
  return y;
}

}  // namespace indiff::numerics
