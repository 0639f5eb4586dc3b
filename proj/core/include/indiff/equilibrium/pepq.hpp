#pragma once

#include <span>
#include <string>
#include <vector>

#include "indiff/asymptotics/asymptotics.hpp"
#include "indiff/core/market_model.hpp"
#include "indiff/core/price_curve.hpp"
#include "indiff/core/schedule.hpp"

namespace indiff::equilibrium {

// Risk aversion a and an endowment of b units of the claim (b = 0: no endowment).
struct InvestorSpec {
  double a = 1.0;
  double b = 0.0;
};

struct EquilibriumResult {
  double p_star = 0.0;
  double q_star = 0.0;   // units bought by investor 1 (sold by investor 2)
  double residual = 0.0; // |q̂¹(p*) + q̂²(p*)|
  double q1_response = 0.0;
  double q2_response = 0.0;
  bool unique = true;       // false when the clearing objective is flat
  bool price_in_bounds = true;
};

// total_price(curve, q + b) − total_price(curve, b)
double endowed_total_price(const PriceCurve& curve, double q, double b);

// Investor's total price for q extra units: q·p(q | b·B) under risk aversion a, obtained from
// the base curve by the risk-aversion switch.
double investor_total_price(const PriceCurve& base, const InvestorSpec& inv, double q);

// Per-unit endowed price curve p(q | b·B) for the investor (q = 0 gives the marginal).
PriceCurve endowed_price_curve(const PriceCurve& base, const InvestorSpec& inv);

// q* maximizes E₁(q) + E₂(−q) with Eᵢ the endowed total prices; p* is investor 1's
// centered-difference marginal at q*.
EquilibriumResult pepq_solve(const PriceCurve& base, const InvestorSpec& inv1,
                             const InvestorSpec& inv2, double tol);

// q* = (a₂b₂ − a₁b₁)/(a₁ + a₂); p* = marginal of the aggregate total price at b₁ + b₂ under
// 1/a = 1/a₁ + 1/a₂.
EquilibriumResult pepq_closed_form(const PriceCurve& base, double a1, double a2, double b1,
                                   double b2);

struct InvestorSchedule {
  RiskAversionSchedule a = RiskAversionSchedule::constant(1.0);
  Sequence b = 0.0;
};

struct PepqLimitStudy {
  std::vector<long> n;
  std::vector<double> r, d_n, p_star, q_star, ratio, residual;
  asymptotics::ConvergenceDiagnostic price;
  asymptotics::ConvergenceDiagnostic scaled_quantity;
  std::string regime;  // "bounded" when endowments/rₙ vanish along the list, else "growing"
};

PepqLimitStudy pepq_limit_study(const MarketSequenceModel& model, const RateSchedule& rate,
                                const InvestorSchedule& inv1, const InvestorSchedule& inv2,
                                std::span<const long> n_list, double tol = 1e-10,
                                const asymptotics::Options& opt = {});

}  // namespace indiff::equilibrium
