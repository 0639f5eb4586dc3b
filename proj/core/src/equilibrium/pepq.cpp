#include "indiff/equilibrium/pepq.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "indiff/core/error.hpp"
#include "indiff/core/parallel.hpp"
#include "indiff/numerics/minimize.hpp"

namespace indiff::equilibrium {
namespace {

// total price under risk aversion a from a curve quoted at base.a()
double total_at(const PriceCurve& base, double a, double q) {
  if (q == 0.0) return 0.0;
  return q * base((a / base.a()) * q);
}

double marginal(const std::function<double(double)>& total, double q) {
  const double h = 1e-5 * std::max(1.0, std::abs(q));
  return (total(q + h) - total(q - h)) / (2.0 * h);
}

// argmin_q (q·p − T(q + b)): the investor's demand at price p. T(b) is dropped from the objective.
double response(const PriceCurve& base, const InvestorSpec& inv, double p, double tol,
                double guess) {
  auto f = [&](double q) { return q * p - total_at(base, inv.a, q + inv.b); };
  const double w = std::max(1.0, std::abs(guess));
  try {
    return numerics::minimize_unimodal(f, {guess - w, guess + w}, tol).x;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::unbounded_objective) throw;
    return guess;  // flat objective: every quantity is a best response
  }
}

void check_investor(const InvestorSpec& inv) {
  if (!(inv.a > 0.0)) raise(ErrorKind::domain, "investor risk aversion must be positive");
}

void fill_responses(const PriceCurve& base, const InvestorSpec& i1, const InvestorSpec& i2,
                    double tol, EquilibriumResult& r) {
  r.q1_response = response(base, i1, r.p_star, tol, r.q_star);
  r.q2_response = response(base, i2, r.p_star, tol, -r.q_star);
  r.residual = std::abs(r.q1_response + r.q2_response);
  r.price_in_bounds = base.bounds().contains(r.p_star);
}

}  // namespace

double endowed_total_price(const PriceCurve& curve, double q, double b) {
  return total_price(curve, q + b) - total_price(curve, b);
}

double investor_total_price(const PriceCurve& base, const InvestorSpec& inv, double q) {
  return total_at(base, inv.a, q + inv.b) - total_at(base, inv.a, inv.b);
}

PriceCurve endowed_price_curve(const PriceCurve& base, const InvestorSpec& inv) {
  check_investor(inv);
  auto total = [base, inv](double q) { return investor_total_price(base, inv, q); };
  const double d = marginal(total, 0.0);
  CurveInfo info = base.info();
  info.a = inv.a;
  info.d_n = d;
  return PriceCurve(info, [total, d](double q) {
    return PriceSample{q == 0.0 ? d : total(q) / q, 0.0};
  });
}

EquilibriumResult pepq_solve(const PriceCurve& base, const InvestorSpec& inv1,
                             const InvestorSpec& inv2, double tol) {
  check_investor(inv1);
  check_investor(inv2);
  if (!(tol > 0.0)) raise(ErrorKind::domain, "tolerance must be positive");
  auto e1 = [&](double q) { return investor_total_price(base, inv1, q); };
  // E₁(q) + E₂(−q) up to the constants −T₁(b₁) − T₂(b₂), which are dropped
  auto objective = [&](double q) {
    return -(total_at(base, inv1.a, q + inv1.b) + total_at(base, inv2.a, inv2.b - q));
  };

  EquilibriumResult r;
  const double scale = std::max(1.0, std::abs(inv1.b) + std::abs(inv2.b));
  try {
    r.q_star = numerics::minimize_unimodal(objective, {-scale, scale}, tol).x;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::unbounded_objective) throw;
    r.unique = false;  // flat objective: every q clears, report q = 0
    r.q_star = 0.0;
  }
  if (r.unique) {
    const double w = std::max(1.0, std::abs(r.q_star));
    const double f0 = objective(r.q_star);
    const double rise = std::min(objective(r.q_star - w), objective(r.q_star + w)) - f0;
    const double size = std::abs(total_at(base, inv1.a, r.q_star + inv1.b)) +
                        std::abs(total_at(base, inv2.a, inv2.b - r.q_star));
    r.unique = rise > 1e3 * std::numeric_limits<double>::epsilon() * (1.0 + size);
  }
  r.p_star = marginal(e1, r.q_star);
  fill_responses(base, inv1, inv2, tol, r);
  return r;
}

EquilibriumResult pepq_closed_form(const PriceCurve& base, double a1, double a2, double b1,
                                   double b2) {
  check_investor({a1, b1});
  check_investor({a2, b2});
  EquilibriumResult r;
  r.q_star = (a2 * b2 - a1 * b1) / (a1 + a2);
  const double a = 1.0 / (1.0 / a1 + 1.0 / a2);
  r.p_star = marginal([&](double q) { return total_at(base, a, q); }, b1 + b2);
  fill_responses(base, {a1, b1}, {a2, b2}, 1e-10, r);
  return r;
}

PepqLimitStudy pepq_limit_study(const MarketSequenceModel& model, const RateSchedule& rate,
                                const InvestorSchedule& inv1, const InvestorSchedule& inv2,
                                std::span<const long> n_list, double tol,
                                const asymptotics::Options& opt) {
  check_index_list(n_list);
  const std::size_t N = n_list.size();
  PepqLimitStudy s;
  s.n.assign(n_list.begin(), n_list.end());
  s.r.resize(N);
  s.d_n.resize(N);
  s.p_star.resize(N);
  s.q_star.resize(N);
  s.ratio.resize(N);
  s.residual.resize(N);
  std::vector<double> load(N);
  parallel_for(N, opt.threads, [&](std::size_t j) {
    const long n = n_list[j];
    const PriceCurve base = model.curve(n, 1.0);
    const InvestorSpec i1{inv1.a(n), inv1.b(n)}, i2{inv2.a(n), inv2.b(n)};
    const EquilibriumResult e = pepq_solve(base, i1, i2, tol);
    s.r[j] = rate(n);
    s.d_n[j] = base.d_n();
    s.p_star[j] = e.p_star;
    s.q_star[j] = e.q_star;
    s.ratio[j] = e.q_star / s.r[j];
    s.residual[j] = e.residual;
    load[j] = (std::abs(i1.b) + std::abs(i2.b)) / s.r[j];
  });
  s.price = asymptotics::diagnose_sequence(s.n, s.p_star, opt.cauchy_tol);
  s.scaled_quantity = asymptotics::diagnose_sequence(s.n, s.ratio, opt.cauchy_tol);
  s.regime = (load.back() <= 1e-2 * load.front() || load.back() == 0.0) ? "bounded" : "growing";
  return s;
}

}  // namespace indiff::equilibrium
