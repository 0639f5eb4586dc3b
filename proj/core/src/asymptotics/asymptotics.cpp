#include "indiff/asymptotics/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "indiff/core/error.hpp"
#include "indiff/core/parallel.hpp"
#include "indiff/numerics/interpolation.hpp"
#include "indiff/numerics/minimize.hpp"
#include "indiff/position/position.hpp"

namespace indiff::asymptotics {
namespace {

std::size_t tail_count(std::size_t k) { return (k + 2) / 3; }

// values[ℓ index][n index] with standard errors; one curve per n.
struct Table {
  std::vector<std::vector<double>> value, se;
  std::vector<std::vector<bool>> valid;
};

Table evaluate_grid(const MarketSequenceModel& model, const RiskAversionSchedule& ra,
                    const RateSchedule& rate, std::span<const double> ells,
                    std::span<const long> n_list, int threads) {
  check_index_list(n_list);
  check_non_decreasing(rate, n_list);
  const std::size_t L = ells.size(), N = n_list.size();
  Table t;
  t.value.assign(L, std::vector<double>(N, 0.0));
  t.se.assign(L, std::vector<double>(N, 0.0));
  t.valid.assign(L, std::vector<bool>(N, true));
  std::vector<std::vector<char>> ok(L, std::vector<char>(N, 1));
  parallel_for(N, threads, [&](std::size_t j) {
    const long n = n_list[j];
    const PriceCurve curve = model.curve(n, ra(n));
    const double r = rate(n);
    for (std::size_t i = 0; i < L; ++i) {
      if (curve.orientation() == Orientation::ask && ells[i] < 0.0) {
        ok[i][j] = 0;
        continue;
      }
      const PriceSample s = curve.sample(ells[i] * r);
      t.value[i][j] = s.price;
      t.se[i][j] = s.std_error;
    }
  });
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < N; ++j) t.valid[i][j] = ok[i][j] != 0;
  return t;
}

}  // namespace

ConvergenceDiagnostic diagnose_sequence(std::vector<long> n, std::vector<double> values, double tol,
                                        std::vector<double> std_errors) {
  if (values.empty() || values.size() != n.size()) {
    raise(ErrorKind::domain, "sequence and index list must be non-empty and of equal length");
  }
  if (std_errors.empty()) std_errors.assign(values.size(), 0.0);
  ConvergenceDiagnostic d;
  d.n = std::move(n);
  d.values = std::move(values);
  d.std_errors = std::move(std_errors);
  const std::size_t k = d.values.size();
  for (std::size_t i = 1; i < k; ++i) d.gaps.push_back(d.values[i] - d.values[i - 1]);

  const std::size_t tail = tail_count(k);
  double tail_se = 0.0;
  for (std::size_t i = k - std::min(k, tail + 1); i < k; ++i) {
    tail_se = std::max(tail_se, d.std_errors[i]);
  }
  d.tol = std::max(tol, 3.0 * tail_se);
  d.cauchy_ok = !d.gaps.empty();
  for (std::size_t i = d.gaps.size() - std::min(tail, d.gaps.size()); i < d.gaps.size(); ++i) {
    if (!(std::abs(d.gaps[i]) < d.tol)) d.cauchy_ok = false;
  }

  d.limit = d.values.back();
  d.limit_error = d.gaps.empty() ? 0.0 : std::abs(d.gaps.back());
  if (d.gaps.size() >= 2) {
    bool shrinking = true;
    for (std::size_t i = 1; i < d.gaps.size(); ++i) {
      if (std::abs(d.gaps[i]) > std::abs(d.gaps[i - 1])) shrinking = false;
    }
    const double g1 = d.gaps[d.gaps.size() - 2], g2 = d.gaps.back();
    const double denom = g2 - g1;
    if (shrinking && denom != 0.0 && g1 * g2 > 0.0) {
      d.limit = d.values.back() - g2 * g2 / denom;
      d.limit_error = std::abs(d.limit - d.values.back());
      d.aitken_used = true;
    }
  }
  return d;
}

ConvergenceDiagnostic scaled_price_sequence(const MarketSequenceModel& model,
                                            const RiskAversionSchedule& ra,
                                            const RateSchedule& rate, double ell,
                                            std::span<const long> n_list, const Options& opt) {
  const double ells[1] = {ell};
  const Table t = evaluate_grid(model, ra, rate, ells, n_list, opt.threads);
  if (!t.valid[0].front()) raise(ErrorKind::domain, "l outside the model's one-sided domain");
  return diagnose_sequence({n_list.begin(), n_list.end()}, t.value[0], opt.cauchy_tol, t.se[0]);
}

LimitCurveEstimate estimate_limit_curve(const MarketSequenceModel& model, const Schedules& sched,
                                        std::span<const double> ell_grid,
                                        std::span<const long> n_list, const Options& opt) {
  std::vector<double> grid(ell_grid.begin(), ell_grid.end());
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const Table t = evaluate_grid(model, sched.risk_aversion, sched.rate, grid, n_list, opt.threads);
  std::vector<ConvergenceDiagnostic> diags;
  std::vector<bool> conv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!t.valid[i].front()) {
      diags.push_back(ConvergenceDiagnostic{});
      conv[i] = false;
      continue;
    }
    diags.push_back(diagnose_sequence({n_list.begin(), n_list.end()}, t.value[i], opt.cauchy_tol, t.se[i]));
    conv[i] = diags.back().cauchy_ok;
  }
  const std::size_t zero = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), 0.0) - grid.begin());
  if (!conv[zero]) raise(ErrorKind::domain, "scaled prices do not converge at l = 0");
  std::size_t lo = zero, hi = zero;
  while (lo > 0 && conv[lo - 1]) --lo;
  while (hi + 1 < grid.size() && conv[hi + 1]) ++hi;

  std::vector<double> ell, vals;
  for (std::size_t i = lo; i <= hi; ++i) {
    ell.push_back(grid[i]);
    vals.push_back(diags[i].limit);
  }
  std::vector<double> excluded;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i < lo || i > hi) excluded.push_back(grid[i]);
  }
  const double d = diags[zero].limit;
  std::shared_ptr<const numerics::MonotoneCubic> interp;
  if (ell.size() >= 2) interp = std::make_shared<const numerics::MonotoneCubic>(ell, vals);
  LimitCurve::Domain dom{ell.front(), ell.back()};
  LimitCurve curve(
      [interp, d](double x) { return interp ? (*interp)(x) : d; }, d, dom, Orientation::bid);

  LimitCurveEstimate est{curve, ell, vals, diags, grid, excluded};
  if (zero > lo) est.continuity_gap_minus = std::abs(diags[zero - 1].limit - d);
  if (zero < hi) est.continuity_gap_plus = std::abs(diags[zero + 1].limit - d);
  const double slack = 3.0 * opt.cauchy_tol;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] > vals[i - 1] + slack) est.monotone_ok = false;
  }
  for (std::size_t i = 1; i + 1 < vals.size(); ++i) {
    const double tl = ell[i - 1] * vals[i - 1], tc = ell[i] * vals[i], tr = ell[i + 1] * vals[i + 1];
    const double sl = (tc - tl) / (ell[i] - ell[i - 1]), sr = (tr - tc) / (ell[i + 1] - ell[i]);
    if (sr - sl > slack) est.concave_ok = false;
  }
  return est;
}

DeltaEstimate probe_delta(const MarketSequenceModel& model, const Schedules& sched,
                          std::span<const double> ell_grid, std::span<const long> n_list,
                          const Options& opt) {
  try {
    const LimitCurveEstimate est = estimate_limit_curve(model, sched, ell_grid, n_list, opt);
    DeltaEstimate out{est.ell.front(), est.ell.back(), false};
    out.empty = est.ell.size() == 1;
    return out;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::domain) throw;
    return {0.0, 0.0, true};
  }
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::consistent_long: return "consistent_long";
    case Verdict::consistent_short: return "consistent_short";
    case Verdict::degenerate: return "degenerate";
    case Verdict::inconsistent: return "inconsistent";
  }
  return "inconsistent";
}

RateVerdict rate_ratio_sequence(const MarketSequenceModel& model, const Schedules& sched,
                                const Sequence& p_tilde, std::span<const long> n_list,
                                const Options& opt) {
  check_index_list(n_list);
  check_non_decreasing(sched.rate, n_list);
  const std::size_t N = n_list.size();
  RateVerdict v;
  v.n.assign(n_list.begin(), n_list.end());
  v.p_tilde.resize(N);
  v.d_n.resize(N);
  v.r.resize(N);
  v.a.resize(N);
  v.q_hat.resize(N);
  v.ratio.resize(N);
  v.price_at_optimum.resize(N);
  std::vector<int> sign(N);
  parallel_for(N, opt.threads, [&](std::size_t j) {
    const long n = n_list[j];
    const double a = sched.risk_aversion(n);
    const PriceCurve curve = model.curve(n, a);
    const double pt = p_tilde(n);
    const auto res = position::optimal_position(curve, pt, opt.position_tol);
    v.p_tilde[j] = pt;
    v.d_n[j] = curve.d_n();
    v.a[j] = a;
    v.r[j] = sched.rate(n);
    v.q_hat[j] = res.q_hat;
    v.ratio[j] = res.q_hat / v.r[j];
    v.price_at_optimum[j] = curve(res.q_hat);
    sign[j] = pt < curve.d_n() ? 1 : (pt > curve.d_n() ? -1 : 0);
  });

  const std::size_t tail = tail_count(N);
  v.liminf_proxy = std::numeric_limits<double>::infinity();
  v.limsup_proxy = -std::numeric_limits<double>::infinity();
  bool all_long = true, all_short = true, all_zero = true;
  const double eps = opt.position_tol;
  for (std::size_t j = N - tail; j < N; ++j) {
    v.liminf_proxy = std::min(v.liminf_proxy, v.ratio[j]);
    v.limsup_proxy = std::max(v.limsup_proxy, v.ratio[j]);
    const double zero_band = eps / v.r[j];
    all_long = all_long && sign[j] > 0 && v.ratio[j] > zero_band;
    all_short = all_short && sign[j] < 0 && v.ratio[j] < -zero_band;
    all_zero = all_zero && std::abs(v.ratio[j]) <= zero_band;
  }
  if (all_zero) {
    v.verdict = Verdict::degenerate;
  } else if (all_long) {
    v.verdict = Verdict::consistent_long;
  } else if (all_short) {
    v.verdict = Verdict::consistent_short;
  } else {
    v.verdict = Verdict::inconsistent;
  }
  v.ratio_diagnostic = diagnose_sequence(v.n, v.ratio, opt.cauchy_tol);
  if (v.ratio_diagnostic.cauchy_ok) v.ell_star = v.ratio_diagnostic.limit;
  return v;
}

bool check_strict_concavity(const LimitCurve& curve, std::span<const double> ell_grid, double tol) {
  std::vector<double> g(ell_grid.begin(), ell_grid.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.size() < 5) raise(ErrorKind::domain, "concavity check needs at least 5 grid points");
  std::vector<double> total(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) total[i] = g[i] * curve(g[i]);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double sl = (total[i] - total[i - 1]) / (g[i] - g[i - 1]);
    const double sr = (total[i + 1] - total[i]) / (g[i + 1] - g[i]);
    if (!(sr - sl < -tol)) return false;
  }
  return true;
}

double corollary_limit(const LimitCurve& curve, double p_tilde, double tol) {
  const double d = curve.d();
  if (p_tilde == d) return 0.0;
  const double lo = std::max(curve.delta_minus(), -10.0);
  const double hi = std::min(curve.delta_plus(), 10.0);
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(lo + (hi - lo) * i / 200.0);
  if (!check_strict_concavity(curve, grid)) {
    raise(ErrorKind::non_unique_limit, "l * p_inf(l) is not strictly concave on the probe grid");
  }
  auto f = [&](double ell) {
    if (!curve.contains(ell)) return std::numeric_limits<double>::infinity();
    return ell * p_tilde - ell * curve(ell);
  };
  numerics::MinimizeOptions mo;
  numerics::Bracket hint;
  if (p_tilde < d) {
    mo.expansion = numerics::Expansion::upper_only;
    hint = {0.0, std::min(1.0, curve.delta_plus())};
  } else {
    mo.expansion = numerics::Expansion::lower_only;
    hint = {std::max(-1.0, curve.delta_minus()), 0.0};
  }
  try {
    return numerics::minimize_unimodal(f, hint, tol, mo).x;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::unbounded_objective) throw;
    raise(ErrorKind::non_unique_limit, e.what());
  }
}

}  // namespace indiff::asymptotics
