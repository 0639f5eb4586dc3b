#include "indiff/numerics/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "indiff/core/error.hpp"

namespace indiff::numerics {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

struct Counted {
  const std::function<double(double)>& f;
  int calls = 0;

  double operator()(double x) {
    ++calls;
    const double v = f(x);
    if (std::isnan(v)) {
      std::ostringstream os;
      os << "objective is NaN at x=" << x;
      raise(ErrorKind::domain, os.str());
    }
    return v;
  }
};

}  // namespace

MinimizeResult minimize_unimodal(const std::function<double(double)>& f, Bracket hint, double tol,
                                 const MinimizeOptions& options) {
  if (!(tol > 0.0)) raise(ErrorKind::domain, "tolerance must be positive");
  if (!(hint.lo < hint.hi) || !std::isfinite(hint.lo) || !std::isfinite(hint.hi)) {
    raise(ErrorKind::domain, "bracket hint must satisfy lo < hi");
  }
  Counted fc{f};
  double a = hint.lo, b = hint.hi;
  double fa = fc(a), fb = fc(b);
  double m = 0.5 * (a + b), fm = fc(m);

  MinimizeResult res;
  int moves = 0;
  while (!(fm < fa && fm < fb)) {
    if (moves == options.max_doublings) {
      std::ostringstream os;
      os << "no bracket after " << moves << " expansions, last interval [" << a << ", " << b
         << "]";
      raise(ErrorKind::unbounded_objective, os.str());
    }
    ++moves;
    const double w = b - a;
    switch (options.expansion) {
      case Expansion::both:
        // Double the width toward the lower end value; the kept end becomes the midpoint.
        if (fa < fb) {
          m = a, fm = fa;
          a -= w, fa = fc(a);
        } else {
          m = b, fm = fb;
          b += w, fb = fc(b);
        }
        break;
      case Expansion::upper_only:
        if (fm >= fa) {
          b = m, fb = fm;
          m = 0.5 * (a + b), fm = fc(m);
        } else {
          m = b, fm = fb;
          b += w, fb = fc(b);
        }
        break;
      case Expansion::lower_only:
        if (fm >= fb) {
          a = m, fa = fm;
          m = 0.5 * (a + b), fm = fc(m);
        } else {
          m = a, fm = fa;
          a -= w, fa = fc(a);
        }
        break;
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
      raise(ErrorKind::unbounded_objective, "bracket overflowed");
    }
  }
  res.expansions = moves;
  const double outer_lo = a, outer_hi = b;

  // Golden-section search on [a, b], seeded with the bracketing midpoint as best point.
  double best_x = m, best_f = fm;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = fc(x1), f2 = fc(x2);
  int guard = 0;
  while (b - a > tol && guard++ < 400) {
    if (f1 < f2) {
      b = x2;
      x2 = x1, f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fc(x1);
    } else {
      a = x1;
      x1 = x2, f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fc(x2);
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b))) break;
  }
  for (auto [x, fx] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (fx < best_f || !(best_x >= a && best_x <= b)) best_x = x, best_f = fx;
  }
  if (!(best_x >= a && best_x <= b)) best_x = 0.5 * (a + b), best_f = fc(best_x);

  if (options.polish) {
    // Parabolic steps on shrinking stencils. A step after the first is taken only while the
    // round-off uncertainty of its vertex, h·noise/curv, stays below tol/10.
    bool first = true;
    for (double rel : {1e-3, 1e-4, 1e-6}) {
      const double h = rel * std::max(1.0, std::abs(best_x));
      const double fl = fc(best_x - h), fr = fc(best_x + h);
      if (!std::isfinite(fl) || !std::isfinite(fr)) break;
      const double curv = fl - 2.0 * best_f + fr;
      const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                           std::max({std::abs(fl), std::abs(best_f), std::abs(fr)});
      if (!(curv > 4.0 * noise)) break;
      if (!first && h * noise / curv > 0.1 * tol) break;
      const double v = best_x - 0.5 * h * (fr - fl) / curv;
      // golden section cannot resolve below the noise floor of f, so the polish may leave [a, b]
      if (!(v >= outer_lo && v <= outer_hi) || std::abs(v - best_x) > 2.0 * h) continue;
      const double fv = fc(v);
      if (fv <= best_f + 4.0 * noise) best_x = v, best_f = fv, first = false;
    }
  }

  res.x = best_x;
  res.fx = best_f;
  res.bracket = {std::min(a, best_x), std::max(b, best_x)};
  res.evaluations = fc.calls;
  res.tol_achieved = b - a;
  return res;
}

}  // namespace indiff::numerics
