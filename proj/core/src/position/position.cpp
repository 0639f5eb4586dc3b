#include "indiff/position/position.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "indiff/core/error.hpp"

namespace indiff::position {
namespace {

struct Point {
  double q, p, se;
};

// Certificate slack covering floating-point noise in the objective.
double noise(double f) { return 1e-12 * (1.0 + std::abs(f)); }

OptimalPositionResult run(const std::function<double(double)>& f, numerics::Bracket hint,
                          numerics::Expansion mode, double tol, Side side) {
  numerics::MinimizeOptions opts;
  opts.expansion = mode;
  numerics::MinimizeResult m;
  try {
    m = numerics::minimize_unimodal(f, hint, tol, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::unbounded_objective) throw;
    raise(ErrorKind::no_interior_optimum, e.what());
  }
  OptimalPositionResult r;
  r.q_hat = m.x;
  r.objective = m.fx;
  r.side = side;
  r.bracket = m.bracket;
  r.evaluations = m.evaluations;
  r.tol_achieved = m.tol_achieved;
  const double step = tol * std::max(1.0, std::abs(m.x));
  for (double q : {m.x - step, m.x + step}) {
    if ((side == Side::long_position && q <= 0.0) || (side == Side::short_position && q >= 0.0)) {
      continue;
    }
    if (f(q) < m.fx - noise(m.fx)) r.certificate_ok = false;
  }
  return r;
}

}  // namespace

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::long_position: return "long";
    case Side::short_position: return "short";
    case Side::zero: return "zero";
  }
  return "zero";
}

CurveValidationReport validate_price_curve(const PriceCurve& curve, std::span<const double> q_grid,
                                           double tol) {
  if (q_grid.size() < 3) raise(ErrorKind::domain, "validation grid needs at least 3 points");
  CurveValidationReport rep;
  rep.grid.assign(q_grid.begin(), q_grid.end());
  std::sort(rep.grid.begin(), rep.grid.end());
  rep.grid.erase(std::unique(rep.grid.begin(), rep.grid.end()), rep.grid.end());
  const bool ask = curve.orientation() == Orientation::ask;
  const double dir = ask ? -1.0 : 1.0;  // flip ask curves into bid form

  std::vector<Point> pts;
  for (double q : rep.grid) {
    const PriceSample s = curve.sample(q);
    pts.push_back({q, s.price, s.std_error});
  }
  const auto& b = curve.bounds();
  for (const Point& pt : pts) {
    const double slack = tol + 3.0 * pt.se;
    double v = 0.0;
    if (b.lower) v = std::max(v, *b.lower - pt.p - slack);
    if (b.upper) v = std::max(v, pt.p - *b.upper - slack);
    if (v > 0.0) rep.bounds_ok = false;
    rep.worst_bounds = std::max(rep.worst_bounds, v);
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double slack = tol + 3.0 * std::hypot(pts[i].se, pts[i - 1].se);
    const double rise = dir * (pts[i].p - pts[i - 1].p);
    if (rise > slack) rep.monotone_ok = false;
    rep.worst_monotone = std::max(rep.worst_monotone, std::max(0.0, rise));
  }
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Point &l = pts[i - 1], &c = pts[i], &r = pts[i + 1];
    const double hl = c.q - l.q, hr = r.q - c.q;
    // second difference of the total price scaled to a uniform-grid equivalent
    const double dl = (c.q * c.p - l.q * l.p) / hl, dr = (r.q * r.p - c.q * c.p) / hr;
    const double second = dir * (dr - dl) * 0.5 * (hl + hr);
    const double se = std::sqrt(std::pow(std::abs(l.q) * l.se, 2) + std::pow(2 * std::abs(c.q) * c.se, 2) +
                                std::pow(std::abs(r.q) * r.se, 2));
    const double slack = tol * std::max(1.0, std::abs(c.q)) + 3.0 * se;
    if (second > slack) rep.concave_ok = false;
    rep.worst_concave = std::max(rep.worst_concave, std::max(0.0, second));
  }
  return rep;
}

OptimalPositionResult optimal_position(const PriceCurve& curve, double p_tilde, double tol) {
  if (!(tol > 0.0)) raise(ErrorKind::domain, "tolerance must be positive");
  if (curve.orientation() == Orientation::ask) return optimal_sale_quantity(curve, p_tilde, tol);
  if (!curve.bounds().contains(p_tilde)) {
    std::ostringstream os;
    os << "p=" << p_tilde << " outside the arbitrage-free interval";
    raise(ErrorKind::price_not_arbitrage_free, os.str());
  }
  const double d = curve.d_n();
  auto f = [&](double q) { return q * p_tilde - total_price(curve, q); };
  if (std::abs(p_tilde - d) <= tol) {
    OptimalPositionResult r;
    r.side = Side::zero;
    r.evaluations = 0;
    return r;
  }
  if (p_tilde < d) {
    return run(f, {0.0, 1.0}, numerics::Expansion::upper_only, tol, Side::long_position);
  }
  return run(f, {-1.0, 0.0}, numerics::Expansion::lower_only, tol, Side::short_position);
}

OptimalPositionResult optimal_sale_quantity(const PriceCurve& ask_curve, double p_tilde,
                                            double tol) {
  if (!(tol > 0.0)) raise(ErrorKind::domain, "tolerance must be positive");
  if (ask_curve.orientation() != Orientation::ask) {
    raise(ErrorKind::domain, "optimal_sale_quantity needs an ask curve");
  }
  const double lo = ask_curve.d_n();
  const auto hi = ask_curve.bounds().upper;
  if (!(p_tilde > lo) || (hi && !(p_tilde < *hi))) {
    std::ostringstream os;
    os << "p=" << p_tilde << " outside (" << lo << ", " << (hi ? *hi : INFINITY) << ")";
    raise(ErrorKind::price_outside_sellable_range, os.str());
  }
  auto f = [&](double q) {
    if (q < 0.0) return std::numeric_limits<double>::infinity();
    return total_price(ask_curve, q) - q * p_tilde;
  };
  return run(f, {0.0, 1.0}, numerics::Expansion::upper_only, tol, Side::short_position);
}

OptimalPositionResult optimal_sale_quantity(const LimitCurve& ask_curve, double p_tilde,
                                            double tol) {
  if (!(tol > 0.0)) raise(ErrorKind::domain, "tolerance must be positive");
  if (ask_curve.orientation() != Orientation::ask) {
    raise(ErrorKind::domain, "optimal_sale_quantity needs an ask curve");
  }
  const double lo = ask_curve.limit_at_zero();
  const auto hi = ask_curve.limit_at_infinity();
  if (!(p_tilde > lo) || (hi && !(p_tilde < *hi))) {
    std::ostringstream os;
    os << "p=" << p_tilde << " outside (" << lo << ", " << (hi ? *hi : INFINITY) << ")";
    raise(ErrorKind::price_outside_sellable_range, os.str());
  }
  const double top = ask_curve.delta_plus();
  auto f = [&](double ell) {
    if (ell > top || ell < 0.0) return std::numeric_limits<double>::infinity();
    return ell == 0.0 ? 0.0 : ell * ask_curve(ell) - ell * p_tilde;
  };
  const double h0 = std::isfinite(top) ? std::min(1.0, top) : 1.0;
  return run(f, {0.0, h0}, numerics::Expansion::upper_only, tol, Side::short_position);
}

namespace {

double grid_argmin(const std::function<double(double)>& f, double lo, double hi, long n) {
  if (n < 10) raise(ErrorKind::domain, "brute-force grid needs at least 10 points");
  if (!(lo < hi)) raise(ErrorKind::domain, "brute-force range must satisfy lo < hi");
  double best_q = lo, best_f = std::numeric_limits<double>::infinity();
  for (long i = 0; i < n; ++i) {
    const double q = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = f(q);
    const bool better = v < best_f || (v == best_f && (std::abs(q) < std::abs(best_q) ||
                                                       (std::abs(q) == std::abs(best_q) && q < best_q)));
    if (better) best_q = q, best_f = v;
  }
  return best_q;
}

}  // namespace

double brute_force_position(const PriceCurve& curve, double p_tilde, double q_lo, double q_hi,
                            long n_grid) {
  if (curve.orientation() == Orientation::ask) {
    return grid_argmin([&](double q) { return total_price(curve, q) - q * p_tilde; },
                       std::max(q_lo, 0.0), q_hi, n_grid);
  }
  return grid_argmin([&](double q) { return q * p_tilde - total_price(curve, q); }, q_lo, q_hi,
                     n_grid);
}

double brute_force_sale_quantity(const LimitCurve& ask_curve, double p_tilde, double l_lo,
                                 double l_hi, long n_grid) {
  return grid_argmin(
      [&](double ell) { return ell == 0.0 ? 0.0 : ell * ask_curve(ell) - ell * p_tilde; }, l_lo,
      l_hi, n_grid);
}

}  // namespace indiff::position
