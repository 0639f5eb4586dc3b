#include "indiff/models/basis_risk.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "indiff/core/error.hpp"
#include "indiff/core/parallel.hpp"
#include "indiff/numerics/quadrature.hpp"
#include "rng.hpp"

namespace indiff::models {

Coefficient::Coefficient(double c) : constant_(c), label_(std::to_string(c)) {}

Coefficient::Coefficient(std::function<double(double)> fn, std::string label)
    : fn_(std::move(fn)), label_(std::move(label)) {
  if (!fn_) raise(ErrorKind::domain, "coefficient needs a function");
}

double Coefficient::constant_value() const {
  if (!constant_) raise(ErrorKind::quadrature_unavailable, "coefficient '" + label_ + "' is not constant");
  return *constant_;
}

namespace {

constexpr long kChunk = 2048;

double checked_rho(const BasisRiskParams& p, long n) {
  const double rho = p.rho(n);
  if (!(std::abs(rho) < 1.0)) {
    raise(ErrorKind::domain, "correlation must satisfy |rho| < 1 at n=" + std::to_string(n));
  }
  return rho;
}

int euler_steps(const BasisRiskParams& p, const MonteCarloConfig& mc) {
  return mc.time_steps > 0 ? mc.time_steps : std::max(1, static_cast<int>(std::lround(252.0 * p.T)));
}

[[noreturn]] void bad_path(long path) {
  raise(ErrorKind::model_assumption_violated,
        "non-finite weight or payoff on path " + std::to_string(path) +
            " (lambda = mu/sigma unbounded?)");
}

struct Stats {
  double mean_x = 0, mean_y = 0, var_x = 0, var_y = 0, cov = 0;
};

// Two-pass moments of paired samples.
template <class FX, class FY>
Stats moments(long n, FX&& fx, FY&& fy) {
  Stats s;
  for (long i = 0; i < n; ++i) s.mean_x += fx(i), s.mean_y += fy(i);
  s.mean_x /= n;
  s.mean_y /= n;
  for (long i = 0; i < n; ++i) {
    const double dx = fx(i) - s.mean_x, dy = fy(i) - s.mean_y;
    s.var_x += dx * dx;
    s.var_y += dy * dy;
    s.cov += dx * dy;
  }
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  s.var_x /= denom;
  s.var_y /= denom;
  s.cov /= denom;
  return s;
}

double lambda_of(const BasisRiskParams& p, double y) {
  const double sig = p.sigma(y);
  if (!(sig > 0.0)) raise(ErrorKind::model_assumption_violated, "sigma(y) must be positive");
  return p.mu(y) / sig;
}

// Tilted-measure quadrature: returns E[g(W_T)] for W_T ~ N(−ρλT, T).
double tilted_log_mgf(const BasisRiskParams& p, double rho, double c, int order) {
  const double lam = p.mu.constant_value() / p.sigma.constant_value();
  const double drift = p.b.constant_value();
  const double ay = p.a_y.constant_value();
  const numerics::GaussHermiteRule rule = numerics::gauss_hermite_rule(order);
  const double mean = -rho * lam * p.T, sd = std::sqrt(p.T);
  std::vector<double> e(rule.nodes.size());
  double emax = -INFINITY;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double y = p.y0 + drift * p.T + ay * (mean + sd * rule.nodes[i]);
    const double B = p.payoff(y);
    if (!std::isfinite(B)) raise(ErrorKind::domain, "payoff not finite at a quadrature node");
    e[i] = -c * B;
    emax = std::max(emax, e[i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) acc += rule.weights[i] * std::exp(e[i] - emax);
  return std::log(acc) + emax;
}

double tilted_mean_payoff(const BasisRiskParams& p, double rho, int order) {
  const double lam = p.mu.constant_value() / p.sigma.constant_value();
  const double drift = p.b.constant_value();
  const double ay = p.a_y.constant_value();
  return numerics::gauss_hermite_expectation(
      [&](double w) { return p.payoff(p.y0 + drift * p.T + ay * w); }, -rho * lam * p.T, p.T,
      order);
}

double quadrature_price(const BasisRiskParams& p, double rho, double c) {
  if (!p.constant_coefficients()) {
    raise(ErrorKind::quadrature_unavailable, "coefficients are not constant");
  }
  if (c == 0.0) return tilted_mean_payoff(p, rho, p.quadrature_order);
  return -tilted_log_mgf(p, rho, c, p.quadrature_order) / c;
}

}  // namespace

BasisRiskSample simulate_basis_risk(const BasisRiskParams& p, double rho,
                                    const MonteCarloConfig& mc) {
  if (mc.paths < 2) raise(ErrorKind::domain, "Monte Carlo needs at least 2 paths");
  if (!(p.T > 0.0)) raise(ErrorKind::domain, "horizon T must be positive");
  const bool exact = mc.sampling == PathSampling::exact ||
                     (mc.sampling == PathSampling::automatic && p.constant_coefficients());
  if (exact && !p.constant_coefficients()) {
    raise(ErrorKind::domain, "exact sampling needs constant coefficients");
  }

  BasisRiskSample out;
  out.members_ = mc.antithetic ? 2 : 1;
  const long samples = mc.antithetic ? mc.paths / 2 : mc.paths;
  out.log_w_.assign(samples * out.members_, 0.0);
  out.payoff_.assign(samples * out.members_, 0.0);

  const long chunks = (samples + kChunk - 1) / kChunk;
  const int steps = euler_steps(p, mc);
  const double dt = p.T / steps, sqdt = std::sqrt(dt);

  auto run_chunk = [&](std::size_t chunk) {
    const long first = static_cast<long>(chunk) * kChunk;
    const long last = std::min(samples, first + kChunk);
    std::vector<double> z(exact ? 1 : steps);
    for (long i = first; i < last; ++i) {
      detail::SplitMix64 gen(mc.seed, static_cast<std::uint64_t>(i));
      std::normal_distribution<double> normal;
      for (double& zi : z) zi = normal(gen);
      for (int m = 0; m < out.members_; ++m) {
        const double sign = m == 0 ? 1.0 : -1.0;
        double log_w = 0.0, y = 0.0;
        if (exact) {
          const double lam = p.mu.constant_value() / p.sigma.constant_value();
          const double w_T = sign * z[0] * std::sqrt(p.T);
          log_w = -rho * lam * w_T - 0.5 * lam * lam * p.T;
          y = p.y0 + p.b.constant_value() * p.T + p.a_y.constant_value() * w_T;
        } else {
          y = p.y0;
          for (int k = 0; k < steps; ++k) {
            const double dw = sign * z[k] * sqdt;
            const double lam = lambda_of(p, y);
            log_w += -rho * lam * dw - 0.5 * lam * lam * dt;
            y += p.b(y) * dt + p.a_y(y) * dw;
          }
        }
        const double B = p.payoff(y);
        if (!std::isfinite(log_w) || !std::isfinite(B)) bad_path(i);
        out.log_w_[i * out.members_ + m] = log_w;
        out.payoff_[i * out.members_ + m] = B;
      }
    }
  };
  parallel_for(static_cast<std::size_t>(chunks), mc.threads, run_chunk);
  return out;
}

PriceSample BasisRiskSample::price_at(double c) const {
  const long n = samples();
  const int m = members_;
  const double inv_m = 1.0 / m;
  double wmax = -INFINITY;
  for (double lw : log_w_) wmax = std::max(wmax, lw);
  auto y_of = [&](long i) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += std::exp(log_w_[i * m + k] - wmax);
    return acc * inv_m;
  };

  if (c == 0.0) {
    auto z_of = [&](long i) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += std::exp(log_w_[i * m + k] - wmax) * payoff_[i * m + k];
      return acc * inv_m;
    };
    const Stats s = moments(n, z_of, y_of);
    const double d = s.mean_x / s.mean_y;
    // Var(Z − dY) = Var Z − 2d Cov + d² Var Y
    const double v = std::max(0.0, s.var_x - 2 * d * s.cov + d * d * s.var_y);
    return {d, std::sqrt(v / n) / s.mean_y};
  }

  double emax = -INFINITY;
  for (std::size_t j = 0; j < log_w_.size(); ++j) emax = std::max(emax, log_w_[j] - c * payoff_[j]);
  auto x_of = [&](long i) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += std::exp(log_w_[i * m + k] - c * payoff_[i * m + k] - emax);
    return acc * inv_m;
  };
  const Stats s = moments(n, x_of, y_of);
  const double log_ratio = std::log(s.mean_x) + emax - std::log(s.mean_y) - wmax;
  const double var_log = s.var_x / (s.mean_x * s.mean_x) + s.var_y / (s.mean_y * s.mean_y) -
                         2.0 * s.cov / (s.mean_x * s.mean_y);
  const double se = std::sqrt(std::max(0.0, var_log) / n) / std::abs(c);
  return {-log_ratio / c, se};
}

double basis_risk_rate(const BasisRiskParams& p, long n) {
  const double rho = checked_rho(p, n);
  return 1.0 / (1.0 - rho * rho);
}

PriceSample basis_risk_price_mc(const BasisRiskParams& p, long n, double a, double q) {
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  const double rho = checked_rho(p, n);
  const BasisRiskSample sample = simulate_basis_risk(p, rho, p.mc);
  return sample.price_at(a * q / basis_risk_rate(p, n));
}

double basis_risk_price_quadrature(const BasisRiskParams& p, long n, double a, double q) {
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  const double rho = checked_rho(p, n);
  return quadrature_price(p, rho, a * q / basis_risk_rate(p, n));
}

double basis_risk_limit(const BasisRiskParams& p, double a, double ell) {
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  if (p.constant_coefficients()) return quadrature_price(p, 1.0, a * ell);
  return simulate_basis_risk(p, 1.0, p.mc).price_at(a * ell).price;
}

BasisRiskModel::BasisRiskModel(BasisRiskParams params, Method method)
    : params_(std::make_shared<const BasisRiskParams>(std::move(params))), method_(method) {
  if (method_ == Method::quadrature && !params_->constant_coefficients()) {
    raise(ErrorKind::quadrature_unavailable, "quadrature needs constant coefficients");
  }
}

PriceCurve BasisRiskModel::curve(long n, double a) const {
  check_index(n);
  const double rho = checked_rho(*params_, n);
  const double r = 1.0 / (1.0 - rho * rho);
  PriceBounds bounds{params_->payoff_lower, params_->payoff_upper};
  if (method_ == Method::quadrature) {
    auto p = params_;
    const double d = quadrature_price(*p, rho, 0.0);
    CurveInfo info{n, a, d, bounds, EvalMode::quadrature, Orientation::bid};
    return PriceCurve(info, [p, rho, r, a](double q) {
      return PriceSample{quadrature_price(*p, rho, a * q / r), 0.0};
    });
  }
  auto sample = std::make_shared<const BasisRiskSample>(simulate_basis_risk(*params_, rho, params_->mc));
  const double d = sample->price_at(0.0).price;
  CurveInfo info{n, a, d, bounds, EvalMode::monte_carlo, Orientation::bid};
  return PriceCurve(info, [sample, r, a](double q) { return sample->price_at(a * q / r); });
}

RateSchedule BasisRiskModel::default_rate() const {
  auto p = params_;
  return RateSchedule([p](long n) { return basis_risk_rate(*p, n); }, "1/(1-rho^2)");
}

RiskAversionSchedule BasisRiskModel::default_risk_aversion() const {
  return RiskAversionSchedule::constant(1.0);
}

}  // namespace indiff::models
