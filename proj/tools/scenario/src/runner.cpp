#include "indiff/scenario/runner.hpp"

#include <json.hpp>

#include "indiff/asymptotics/asymptotics.hpp"
#include "indiff/core/parallel.hpp"
#include "indiff/equilibrium/pepq.hpp"
#include "indiff/models/black_scholes.hpp"
#include "indiff/position/position.hpp"

#ifndef INDIFF_VERSION
#define INDIFF_VERSION "unknown"
#endif
#ifndef INDIFF_YAML_CPP_VERSION
#define INDIFF_YAML_CPP_VERSION "unknown"
#endif

namespace indiff::scenario {

namespace {

using namespace indiff::models;

Schedules schedules(const ScenarioConfig& c, const MarketSequenceModel& m) {
  return {c.risk_aversion.value_or(m.default_risk_aversion()), c.rate.value_or(m.default_rate())};
}

asymptotics::Options options(const ScenarioConfig& c) {
  asymptotics::Options o;
  o.cauchy_tol = c.tol.cauchy;
  o.position_tol = c.tol.position;
  o.threads = c.threads;
  return o;
}

void add_sample(Report::Record& rec, const PriceCurve& curve, double q) {
  const PriceSample s = curve.sample(q);
  rec.add("price", s.price);
  if (curve.stochastic()) rec.add("stderr", s.std_error);
}

// Evaluates fn(i) for every index entry in parallel, then emits in index order.
template <class Result, class Fn, class Emit>
void per_index(const ScenarioConfig& c, Fn&& fn, Emit&& emit) {
  std::vector<Result> out(c.index.size());
  parallel_for(c.index.size(), c.threads, [&](std::size_t i) { out[i] = fn(c.index[i]); });
  for (std::size_t i = 0; i < out.size(); ++i) emit(c.index[i], out[i]);
}

void run_price(const ScenarioConfig& c, const MarketSequenceModel& m, Report& rep) {
  const Schedules s = schedules(c, m);
  struct Out {
    double r = 0, a = 0, d = 0;
    std::vector<PriceSample> samples;
    bool stochastic = false;
  };
  per_index<Out>(
      c,
      [&](long n) {
        Out o{s.rate(n), s.risk_aversion(n), 0.0, {}, false};
        const PriceCurve curve = m.curve(n, o.a);
        o.d = curve.d_n();
        o.stochastic = curve.stochastic();
        for (double q : c.q_grid) o.samples.push_back(curve.sample(c.q_scaled ? q * o.r : q));
        return o;
      },
      [&](long n, const Out& o) {
        for (std::size_t j = 0; j < c.q_grid.size(); ++j) {
          auto rec = rep.record(c.id, n);
          rec.add("r", o.r).add("a", o.a);
          if (c.q_scaled) rec.add("ell", c.q_grid[j]);
          rec.add("q", c.q_scaled ? c.q_grid[j] * o.r : c.q_grid[j]).add("d_n", o.d);
          rec.add("price", o.samples[j].price);
          if (o.stochastic) rec.add("stderr", o.samples[j].std_error);
        }
      });
}

void run_curve(const ScenarioConfig& c, const MarketSequenceModel& m, Report& rep) {
  const Schedules s = schedules(c, m);
  for (long n : c.index) {
    const double r = s.rate(n), a = s.risk_aversion(n);
    const PriceCurve curve = m.curve(n, a);
    for (double q : c.q_grid) {
      auto rec = rep.record(c.id, n);
      rec.add("r", r).add("a", a).add("q", q);
      add_sample(rec, curve, q);
      rec.add("total", total_price(curve, q));
    }
    if (c.validate_curves) {
      const auto v = position::validate_price_curve(curve, c.q_grid, c.tol.validation);
      auto rec = rep.record(c.id, n);
      rec.add("r", r).add("a", a).add("monotone_ok", v.monotone_ok).add("concave_ok", v.concave_ok);
      rec.add("bounds_ok", v.bounds_ok).add("worst_monotone", v.worst_monotone);
      rec.add("worst_concave", v.worst_concave).add("worst_bounds", v.worst_bounds);
    }
  }
}

void run_limit(const ScenarioConfig& c, const MarketSequenceModel& m, Report& rep) {
  const Schedules s = schedules(c, m);
  const auto est = asymptotics::estimate_limit_curve(m, s, c.ell_grid, c.index, options(c));
  for (std::size_t i = 0; i < est.grid.size(); ++i) {
    const auto& d = est.diagnostics[i];
    for (std::size_t k = 0; k < d.n.size(); ++k) {
      auto rec = rep.record(c.id, d.n[k]);
      rec.add("ell", est.grid[i]).add("r", s.rate(d.n[k])).add("a", s.risk_aversion(d.n[k]));
      rec.add("price", d.values[k]);
      if (!d.std_errors.empty()) rec.add("stderr", d.std_errors[k]);
    }
  }
  for (std::size_t i = 0; i < est.grid.size(); ++i) {
    const auto& d = est.diagnostics[i];
    const bool included =
        std::find(est.ell.begin(), est.ell.end(), est.grid[i]) != est.ell.end();
    auto rec = rep.record(c.id);
    rec.add("ell", est.grid[i]);
    rec.add("p_inf", d.n.empty() ? std::nan("") : d.limit);
    rec.add("limit_error", d.n.empty() ? std::nan("") : d.limit_error);
    rec.add("cauchy_ok", d.cauchy_ok).add("aitken_used", d.aitken_used);
    rec.add("in_domain", included);
  }
  auto rec = rep.record(c.id);
  rec.add("d", est.curve.d()).add("delta_minus", est.ell.front()).add("delta_plus", est.ell.back());
  rec.add("continuity_gap_minus", est.continuity_gap_minus);
  rec.add("continuity_gap_plus", est.continuity_gap_plus);
  rec.add("monotone_ok", est.monotone_ok).add("concave_ok", est.concave_ok);
}

void run_rates(const ScenarioConfig& c, const MarketSequenceModel& m, Report& rep) {
  const auto v = asymptotics::rate_ratio_sequence(m, schedules(c, m), *c.p_tilde, c.index,
                                                  options(c));
  for (std::size_t i = 0; i < v.n.size(); ++i) {
    auto rec = rep.record(c.id, v.n[i]);
    rec.add("r", v.r[i]).add("a", v.a[i]).add("p_tilde", v.p_tilde[i]).add("d_n", v.d_n[i]);
    rec.add("q_hat", v.q_hat[i]).add("ratio", v.ratio[i]);
    rec.add("price_at_optimum", v.price_at_optimum[i]);
  }
  auto rec = rep.record(c.id);
  rec.add("verdict", std::string(asymptotics::to_string(v.verdict)));
  rec.add("liminf_proxy", v.liminf_proxy).add("limsup_proxy", v.limsup_proxy);
  rec.add("ratio_limit", v.ratio_diagnostic.limit);
  rec.add("ratio_limit_error", v.ratio_diagnostic.limit_error);
  rec.add("cauchy_ok", v.ratio_diagnostic.cauchy_ok);
  if (v.ell_star) rec.add("ell_star", *v.ell_star);
}

void run_position(const ScenarioConfig& c, const MarketSequenceModel& m, Report& rep) {
  const Schedules s = schedules(c, m);
  struct Out {
    double r = 0, a = 0, p = 0, d = 0;
    position::OptimalPositionResult res;
  };
  per_index<Out>(
      c,
      [&](long n) {
        Out o{s.rate(n), s.risk_aversion(n), (*c.p_tilde)(n), 0.0, {}};
        const PriceCurve curve = m.curve(n, o.a);
        o.d = curve.d_n();
        o.res = position::optimal_position(curve, o.p, c.tol.position);
        return o;
      },
      [&](long n, const Out& o) {
        auto rec = rep.record(c.id, n);
        rec.add("r", o.r).add("a", o.a).add("p_tilde", o.p).add("d_n", o.d);
        rec.add("q_hat", o.res.q_hat).add("ratio", o.res.q_hat / o.r);
        rec.add("side", std::string(position::to_string(o.res.side)));
        rec.add("objective", o.res.objective).add("certificate_ok", o.res.certificate_ok);
      });
}

void run_equilibrium(const ScenarioConfig& c, const MarketSequenceModel& m, Report& rep) {
  const Schedules s = schedules(c, m);
  const equilibrium::InvestorSchedule i1{c.investor1.a, c.investor1.b};
  const equilibrium::InvestorSchedule i2{c.investor2.a, c.investor2.b};
  const auto st =
      equilibrium::pepq_limit_study(m, s.rate, i1, i2, c.index, c.tol.equilibrium, options(c));
  for (std::size_t i = 0; i < st.n.size(); ++i) {
    const long n = st.n[i];
    auto rec = rep.record(c.id, n);
    rec.add("r", st.r[i]).add("d_n", st.d_n[i]);
    rec.add("a1", i1.a(n)).add("b1", i1.b(n)).add("a2", i2.a(n)).add("b2", i2.b(n));
    rec.add("p_star", st.p_star[i]).add("q_star", st.q_star[i]).add("ratio", st.ratio[i]);
    rec.add("residual", st.residual[i]);
  }
  auto rec = rep.record(c.id);
  rec.add("regime", st.regime);
  rec.add("price_limit", st.price.limit).add("price_cauchy_ok", st.price.cauchy_ok);
  rec.add("ratio_limit", st.scaled_quantity.limit);
  rec.add("ratio_cauchy_ok", st.scaled_quantity.cauchy_ok);
}

void run_pde(const ScenarioConfig& c, Report& rep) {
  auto p = std::get<TransCostParams>(c.model);
  p.threads = c.threads;
  const std::vector<double> spots = c.spots.empty() ? std::vector<double>{p.s} : c.spots;
  std::vector<PsiSurface> surfaces(c.b_values.size());
  parallel_for(surfaces.size(), c.threads,
               [&](std::size_t i) { surfaces[i] = transaction_psi(p, c.b_values[i]); });
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    for (double spot : spots) {
      auto rec = rep.record(c.id);
      rec.add("b", c.b_values[i]).add("s", spot).add("psi", surfaces[i].at(spot));
      rec.add("black_scholes", black_scholes_price(spot, p.t, p.sigma, p.K, p.T));
      rec.add("newton_iterations", static_cast<long>(surfaces[i].newton_iterations));
      rec.add("refinements", static_cast<long>(surfaces[i].refinements));
    }
  }
}

}  // namespace

std::unique_ptr<MarketSequenceModel> build_model(const ScenarioConfig& c) {
  return std::visit(
      [&](const auto& params) -> std::unique_ptr<MarketSequenceModel> {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, GaussianResidualParams>) {
          return std::make_unique<GaussianModel>(params);
        } else if constexpr (std::is_same_v<T, BasisRiskSpec>) {
          BasisRiskParams p = params.params;
          p.mc.seed = c.seed;
          p.mc.threads = c.threads;
          return std::make_unique<BasisRiskModel>(std::move(p), params.method);
        } else if constexpr (std::is_same_v<T, DefaultBondParams>) {
          return std::make_unique<DefaultBondModel>(params);
        } else {
          TransCostParams p = params;
          p.threads = c.threads;
          return std::make_unique<TransactionCostModel>(std::move(p));
        }
      },
      c.model);
}

void run_scenario(const ScenarioConfig& c, Report& rep) {
  if (c.task == Task::sweep) {
    for (ScenarioConfig run : c.sweep->runs) {
      run.seed = c.seed;
      run.threads = c.threads;
      run_scenario(run, rep);
    }
    return;
  }
  if (c.task == Task::pde) {
    run_pde(c, rep);
    return;
  }
  const auto model = build_model(c);
  switch (c.task) {
    case Task::price:
      run_price(c, *model, rep);
      break;
    case Task::curve:
      run_curve(c, *model, rep);
      break;
    case Task::limit:
      run_limit(c, *model, rep);
      break;
    case Task::rates:
      run_rates(c, *model, rep);
      break;
    case Task::position:
      run_position(c, *model, rep);
      break;
    case Task::equilibrium:
      run_equilibrium(c, *model, rep);
      break;
    case Task::pde:
    case Task::sweep:
      break;
  }
}

std::string manifest_json(const Manifest& m) {
  nlohmann::ordered_json j;
  j["scenario_id"] = m.scenario_id;
  j["task"] = m.task;
  j["config_path"] = m.config_path;
  j["config_hash"] = "fnv1a64:" + m.config_hash;
  j["output_path"] = m.output_path;
  j["format"] = m.format;
  j["seed"] = m.seed;
  j["threads"] = m.threads;
  j["rows"] = m.rows;
  j["records"] = m.records;
  j["versions"] = {{"indiff", INDIFF_VERSION},
                   {"yaml-cpp", INDIFF_YAML_CPP_VERSION},
                   {"compiler", __VERSION__},
                   {"cxx_standard", __cplusplus}};
  j["wall_time_s"] = m.wall_time_s;
  j["exit_status"] = m.exit_status;
  if (!m.error.empty()) j["error"] = m.error;
  return j.dump(2) + "\n";
}

}  // namespace indiff::scenario
