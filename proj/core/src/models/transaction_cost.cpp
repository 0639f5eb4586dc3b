#include "indiff/models/transaction_cost.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "indiff/core/error.hpp"
#include "indiff/core/parallel.hpp"
#include "indiff/models/black_scholes.hpp"
#include "indiff/numerics/s_function.hpp"

namespace indiff::models {
namespace {

void check_params(const TransCostParams& p) {
  if (!(p.sigma > 0.0) || !(p.K > 0.0) || !(p.s > 0.0)) {
    raise(ErrorKind::domain, "transaction model needs sigma, K, s > 0");
  }
  if (!(p.t >= 0.0 && p.t <= p.T)) raise(ErrorKind::domain, "valuation time outside [0, T]");
}

// Thomas algorithm; lower[i] couples i to i-1, upper[i] couples i to i+1. rhs is overwritten.
void solve_tridiagonal(const std::vector<double>& lower, std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

class ImplicitStepper {
 public:
  ImplicitStepper(const TransCostParams& p, double b, const PdeConfig& g, double h)
      : p_(p), b2_(b * b), g_(g), h_(h), table_(numerics::default_s_table()) {}

  // Nonlinear operator G(Γ) and its derivative.
  void g_of(double gam, double& g, double& dg) const {
    if (b2_ == 0.0) {
      g = gam, dg = 1.0;
      return;
    }
    const double A = b2_ * gam;
    if (A < g_.clamp_lo || A > g_.clamp_hi) {
      const double s = table_(std::clamp(A, g_.clamp_lo, g_.clamp_hi));
      g = gam * (1.0 + s), dg = 1.0 + s;
      return;
    }
    const auto v = table_.evaluate(A);
    g = gam * (1.0 + v.s);
    dg = 1.0 + v.s + v.a_ds;
  }

  // One backward Euler step of size dt from `old` into `w` (w holds the initial guess).
  // Returns Newton iterations used, or -1 on failure.
  int step(const std::vector<double>& old, std::vector<double>& w, double dt) const {
    const std::size_t n = w.size();
    const std::size_t m = n - 2;
    const double c = 0.5 * p_.sigma * p_.sigma * dt;
    const double ih2 = 1.0 / (h_ * h_), ih = 0.5 / h_;
    std::vector<double> lower(m), diag(m), upper(m), res(m), trial(n);

    auto residual = [&](const std::vector<double>& v, std::vector<double>* jac_diag,
                        std::vector<double>* jac_lo, std::vector<double>* jac_up,
                        std::vector<double>& r) {
      double norm = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double gam = (v[i + 1] - 2 * v[i] + v[i - 1]) * ih2 - (v[i + 1] - v[i - 1]) * ih;
        double g, dg;
        g_of(gam, g, dg);
        r[i - 1] = v[i] - old[i] - c * g;
        norm = std::max(norm, std::abs(r[i - 1]));
        if (jac_diag) {
          (*jac_diag)[i - 1] = 1.0 + c * dg * 2.0 * ih2;
          (*jac_lo)[i - 1] = -c * dg * (ih2 + ih);
          (*jac_up)[i - 1] = -c * dg * (ih2 - ih);
        }
      }
      return norm;
    };

    double norm = residual(w, &diag, &lower, &upper, res);
    for (int it = 1; it <= g_.max_newton; ++it) {
      for (auto& r : res) r = -r;
      solve_tridiagonal(lower, diag, upper, res);
      double scale = 1.0, delta_max = 0.0, wmax = 1.0;
      for (std::size_t i = 0; i < m; ++i) delta_max = std::max(delta_max, std::abs(res[i]));
      // damped update: halve until the residual does not grow
      std::vector<double> r_trial(m);
      double trial_norm = 0.0;
      for (int k = 0; k < 30; ++k) {
        trial = w;
        for (std::size_t i = 0; i < m; ++i) trial[i + 1] += scale * res[i];
        trial_norm = residual(trial, nullptr, nullptr, nullptr, r_trial);
        if (std::isfinite(trial_norm) && (trial_norm <= norm || k == 29)) break;
        scale *= 0.5;
      }
      if (!std::isfinite(trial_norm)) return -1;
      w.swap(trial);
      for (double v : w) wmax = std::max(wmax, std::abs(v));
      if (scale * delta_max <= g_.newton_tol * wmax) return it;
      norm = residual(w, &diag, &lower, &upper, res);
    }
    return -1;
  }

 private:
  const TransCostParams& p_;
  double b2_;
  const PdeConfig& g_;
  double h_;
  const numerics::SFunctionTable& table_;
};

}  // namespace

double PsiSurface::spot(std::size_t i) const { return std::exp(x[i]); }

double PsiSurface::at(double s) const {
  const double xs = std::log(s);
  const std::size_t n = x.size();
  if (!(xs >= x.front() && xs <= x.back())) {
    std::ostringstream os;
    os << "spot " << s << " outside the PDE grid";
    raise(ErrorKind::domain, os.str());
  }
  const double h = x[1] - x[0];
  const double pos = (xs - x.front()) / h;
  std::size_t i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  if (frac < 1e-12) return values[std::min(i, n - 1)];
  i = std::clamp<std::size_t>(i, 1, n - 3);
  const double u = (xs - x[i]) / h;
  // 4-point Lagrange on nodes i-1..i+2
  const double y0 = values[i - 1], y1 = values[i], y2 = values[i + 1], y3 = values[i + 2];
  return -u * (u - 1) * (u - 2) / 6.0 * y0 + (u + 1) * (u - 1) * (u - 2) / 2.0 * y1 -
         (u + 1) * u * (u - 2) / 2.0 * y2 + (u + 1) * u * (u - 1) / 6.0 * y3;
}

PsiSurface transaction_psi(const TransCostParams& p, double b) { return transaction_psi(p, b, p.pde); }

PsiSurface transaction_psi(const TransCostParams& p, double b, const PdeConfig& g) {
  check_params(p);
  if (!(b >= 0.0) || !std::isfinite(b)) raise(ErrorKind::domain, "b must be finite and >= 0");
  if (g.space_points < 5 || g.time_steps < 1) raise(ErrorKind::domain, "PDE grid too small");
  if (!(g.s_max_mult > 1.0)) raise(ErrorKind::domain, "s_max_mult must exceed 1");

  const double tau_total = p.T - p.t;
  const double half_width = std::max(6.0 * p.sigma * std::sqrt(tau_total), std::log(g.s_max_mult));
  const double x_lo = std::log(p.K) - half_width, x_hi = std::log(p.K) + half_width;
  if (std::log(p.s) <= x_lo || std::log(p.s) >= x_hi) {
    raise(ErrorKind::domain, "spot outside the PDE grid; increase s_max_mult");
  }

  PsiSurface out;
  out.b = b;
  out.t = p.t;
  const int n = g.space_points;
  out.x.resize(n);
  const double h = (x_hi - x_lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.x[i] = x_lo + i * h;
  out.x.back() = x_hi;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = std::max(std::exp(out.x[i]) - p.K, 0.0);
  v.front() = 0.0;
  const double upper_value = std::exp(x_hi) - p.K;
  v.back() = upper_value;
  if (tau_total == 0.0) {
    out.values = v;
    return out;
  }

  ImplicitStepper stepper(p, b, g, h);
  const int M = g.time_steps;
  std::vector<double> w(n);
  for (int k = 0; k < M; ++k) {
    const double t0 = tau_total * std::pow(static_cast<double>(k) / M, 2);
    const double t1 = tau_total * std::pow(static_cast<double>(k + 1) / M, 2);
    // Advance [t0, t1] in 2^level equal substeps, refining when Newton stalls.
    int level = 0;
    for (;;) {
      const int sub = 1 << level;
      const double dt = (t1 - t0) / sub;
      std::vector<double> cur = v;
      bool ok = true;
      for (int j = 0; j < sub && ok; ++j) {
        w = cur;
        const int its = stepper.step(cur, w, dt);
        if (its < 0) {
          ok = false;
        } else {
          out.newton_iterations += its;
          cur.swap(w);
        }
      }
      if (ok) {
        v.swap(cur);
        break;
      }
      if (++level > g.max_refinements) {
        std::ostringstream os;
        os << "Newton failed at time step " << k << " after " << g.max_refinements
           << " refinements (b=" << b << ")";
        raise(ErrorKind::pde_step_failure, os.str());
      }
      ++out.refinements;
    }
  }
  out.values = std::move(v);
  return out;
}

PsiCache::PsiCache(const TransCostParams& p) : ell_max_(p.ell_max) {
  check_params(p);
  if (p.b_grid_points < 3) raise(ErrorKind::domain, "b-grid needs at least 3 points");
  if (!(p.ell_max > 0.0)) raise(ErrorKind::domain, "ell_max must be positive");
  const int m = p.b_grid_points;
  const double u_max = std::cbrt(p.ell_max);
  std::vector<double> u(m);
  b_.resize(m);
  values_.resize(m);
  for (int j = 0; j < m; ++j) {
    u[j] = u_max * j / (m - 1);
    b_[j] = std::pow(u[j], 1.5);  // b = √(aℓ), u = (aℓ)^{1/3}
  }
  parallel_for(static_cast<std::size_t>(m), p.threads,
               [&](std::size_t j) { values_[j] = transaction_psi(p, b_[j]).at(p.s); });
  // monotone in b by the comparison principle; enforce against round-off
  for (int j = 1; j < m; ++j) values_[j] = std::max(values_[j], values_[j - 1]);
  interp_ = numerics::MonotoneCubic(u, values_);
}

double PsiCache::operator()(double a_ell) const {
  if (!(a_ell >= 0.0)) raise(ErrorKind::domain, "a*l must be >= 0 on the ask side");
  return interp_(std::cbrt(std::min(a_ell, ell_max_)));
}

LimitCurve transaction_limit_curve(const std::shared_ptr<const PsiCache>& cache,
                                   const TransCostParams& p, double a) {
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  LimitCurve::Domain dom{0.0, cache->ell_max() / a};
  return LimitCurve([cache, a](double ell) { return (*cache)(a * ell); }, cache->black_scholes_node(),
                    dom, Orientation::ask, p.s);
}

LimitCurve transaction_limit_curve(const TransCostParams& p, double a) {
  return transaction_limit_curve(std::make_shared<const PsiCache>(p), p, a);
}

TransactionCostModel::TransactionCostModel(TransCostParams params)
    : params_(std::move(params)), cache_(std::make_shared<const PsiCache>(params_)) {}

LimitCurve TransactionCostModel::limit_curve(double a) const {
  return transaction_limit_curve(cache_, params_, a);
}

PriceCurve TransactionCostModel::curve(long n, double a) const {
  check_index(n);
  const double r = default_rate()(n);
  const double d = cache_->black_scholes_node();
  // the discrete b = 0 solve may sit marginally below the closed form
  const double bs = black_scholes_price(params_.s, params_.t, params_.sigma, params_.K, params_.T);
  PriceBounds bounds{std::min(bs, d), params_.s};
  CurveInfo info{n, a, d, bounds, EvalMode::pde_limit, Orientation::ask};
  auto cache = cache_;
  return PriceCurve(info, [cache, a, r](double q) { return PriceSample{(*cache)(a * q / r), 0.0}; });
}

RateSchedule TransactionCostModel::default_rate() const {
  auto lam = params_.lambda;
  return RateSchedule(
      [lam](long n) {
        const double l = lam(n);
        if (!(l > 0.0 && l < 1.0)) raise(ErrorKind::domain, "transaction cost must lie in (0, 1)");
        return 1.0 / (l * l);
      },
      "lambda^-2");
}

RiskAversionSchedule TransactionCostModel::default_risk_aversion() const {
  return RiskAversionSchedule::constant(1.0);
}

}  // namespace indiff::models
