#include "indiff/numerics/s_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "indiff/core/error.hpp"
#include "indiff/numerics/interpolation.hpp"

namespace indiff::numerics {
namespace {

const double kSeed = std::cbrt(1.5 * 1.5);
const double kSeed2 = 0.8 * std::sqrt(std::cbrt(1.5 * 1.5));

// Integrates from x0 (value s0) to x1 with `sub` RK4 substeps; false if the denominator
// 2√(S/x) - x is not positive at some stage.
bool integrate_segment(double x0, double s0, double x1, int sub, double& out) {
  auto f = [](double x, double s, bool& ok) {
    if (x == 0.0) return kSeed;
    const double u = s / x;
    const double den = (u > 0.0) ? 2.0 * std::sqrt(u) - x : -1.0;
    if (!(den > 0.0)) {
      ok = false;
      return 0.0;
    }
    return 3.0 * (1.0 + s) / den;
  };
  const double h = (x1 - x0) / sub;
  double s = s0;
  bool ok = true;
  for (int i = 0; i < sub && ok; ++i) {
    const double x = x0 + i * h;
    const double k1 = f(x, s, ok);
    const double k2 = f(x + 0.5 * h, s + 0.5 * h * k1, ok);
    const double k3 = f(x + 0.5 * h, s + 0.5 * h * k2, ok);
    const double k4 = f(x + h, s + h * k3, ok);
    s += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  out = s;
  return ok && std::isfinite(s);
}

// Nodes x_i = i·h (i = 0..count) along one side; h carries the sign.
void integrate_side(double h, int count, std::vector<double>& s) {
  s.assign(count + 1, 0.0);
  for (int i = 0; i < count; ++i) {
    double next = 0.0;
    int sub = 8;
    while (!integrate_segment(i * h, s[i], (i + 1) * h, sub, next)) {
      sub *= 2;
      if (sub > 8192) {
        std::ostringstream os;
        os << "denominator vanished near x=" << i * h;
        raise(ErrorKind::s_table_failed, os.str());
      }
    }
    s[i + 1] = next;
  }
}

}  // namespace

double s_seed_coefficient() noexcept { return kSeed; }

double s_seed(double A) noexcept {
  const double x = std::cbrt(A);
  return kSeed * x + kSeed2 * x * x;
}

double s_ode_rhs_x(double x, double s) noexcept {
  if (x == 0.0) return kSeed;
  return 3.0 * (1.0 + s) / (2.0 * std::sqrt(s / x) - x);
}

SFunctionTable build_s_table(double a_min, double a_max, int n_points) {
  if (!(a_min < 0.0 && a_max > 0.0)) raise(ErrorKind::domain, "S table needs A_min < 0 < A_max");
  if (n_points < 5) raise(ErrorKind::domain, "S table needs at least 5 points");

  SFunctionTable t;
  t.a_min_ = a_min;
  t.a_max_ = a_max;
  t.x_min_ = std::cbrt(a_min);
  t.x_max_ = std::cbrt(a_max);
  const int intervals = n_points - 1;
  int n_neg = static_cast<int>(std::lround(intervals * (-t.x_min_) / (t.x_max_ - t.x_min_)));
  n_neg = std::clamp(n_neg, 2, intervals - 2);
  const int n_pos = intervals - n_neg;
  t.n_neg_ = n_neg;
  t.h_neg_ = -t.x_min_ / n_neg;
  t.h_pos_ = t.x_max_ / n_pos;

  std::vector<double> neg, pos;
  integrate_side(-t.h_neg_, n_neg, neg);
  integrate_side(t.h_pos_, n_pos, pos);

  t.xs_.resize(n_points);
  t.ss_.resize(n_points);
  t.ds_.resize(n_points);
  for (int i = 0; i <= n_neg; ++i) {
    const int k = n_neg - i;
    t.xs_[k] = (i == n_neg) ? t.x_min_ : -i * t.h_neg_;
    t.ss_[k] = neg[i];
  }
  for (int i = 1; i <= n_pos; ++i) {
    t.xs_[n_neg + i] = (i == n_pos) ? t.x_max_ : i * t.h_pos_;
    t.ss_[n_neg + i] = pos[i];
  }
  for (int k = 0; k < n_points; ++k) t.ds_[k] = s_ode_rhs_x(t.xs_[k], t.ss_[k]);
  limit_monotone_slopes(t.xs_, t.ss_, t.ds_);

  for (int k = 1; k < n_points; ++k) {
    if (!(t.ss_[k] > t.ss_[k - 1])) raise(ErrorKind::s_table_failed, "table is not increasing");
  }
  if (!(t.ss_.front() > -1.0)) raise(ErrorKind::s_table_failed, "table left the range (-1, inf)");

  t.c_plus_ = t.ss_.back() - a_max - std::log(a_max);
  t.c_minus_ = (1.0 + t.ss_.front()) * (-a_min);
  return t;
}

SFunctionTable::Value SFunctionTable::evaluate(double A) const {
  if (std::isnan(A)) return {A, A};
  if (A > a_max_) return {A + std::log(A) + c_plus_, A + 1.0};
  if (A < a_min_) return {-1.0 + c_minus_ / (-A), -c_minus_ / (-A)};
  if (A == 0.0) return {0.0, 0.0};
  const double x = std::cbrt(A);
  int k;
  if (x < 0.0) {
    k = n_neg_ - 1 - static_cast<int>(std::floor(-x / h_neg_));
    k = std::clamp(k, 0, n_neg_ - 1);
  } else {
    k = n_neg_ + static_cast<int>(std::floor(x / h_pos_));
    k = std::clamp(k, n_neg_, static_cast<int>(xs_.size()) - 2);
  }
  const double x0 = xs_[k], x1 = xs_[k + 1];
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double s = hermite_cubic(x0, x1, ss_[k], ss_[k + 1], ds_[k], ds_[k + 1], x);
  // derivative of the Hermite cubic in x
  const double t2 = t * t;
  const double dsdx = ((6 * t2 - 6 * t) * ss_[k] + (3 * t2 - 4 * t + 1) * h * ds_[k] +
                       (-6 * t2 + 6 * t) * ss_[k + 1] + (3 * t2 - 2 * t) * h * ds_[k + 1]) /
                      h;
  return {std::max(s, -1.0 + 1e-300), x * dsdx / 3.0};
}

double eval_s(const SFunctionTable& table, double A) { return table(A); }

double s_table_residual(const SFunctionTable& table) {
  const auto& xs = table.x_nodes();
  const auto& ss = table.s_nodes();
  double worst = 0.0;
  const int n = table.size();
  for (int k = 2; k + 2 < n; ++k) {
    const double h1 = xs[k + 1] - xs[k], h0 = xs[k] - xs[k - 1];
    const double hh2 = xs[k + 2] - xs[k + 1], hh0 = xs[k - 1] - xs[k - 2];
    // stencil must be uniform (skip the node where the two spacings meet)
    const double h = h1;
    if (std::abs(h0 - h) > 1e-9 * h || std::abs(hh2 - h) > 1e-9 * h ||
        std::abs(hh0 - h) > 1e-9 * h) {
      continue;
    }
    const double d = (-ss[k + 2] + 8 * ss[k + 1] - 8 * ss[k - 1] + ss[k - 2]) / (12 * h);
    worst = std::max(worst, std::abs(d - s_ode_rhs_x(xs[k], ss[k])));
  }
  return worst;
}

const SFunctionTable& default_s_table() {
  static const SFunctionTable table = build_s_table();
  return table;
}

}  // namespace indiff::numerics
