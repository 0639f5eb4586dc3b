#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "indiff/core/error.hpp"
#include "indiff/equilibrium/pepq.hpp"
#include "indiff/models/gaussian.hpp"

using namespace indiff;
using namespace indiff::equilibrium;
using namespace indiff::models;

namespace {

PriceCurve base(double d = 1.0, double g2 = 0.1) { return GaussianModel({d, g2, {}}).curve(1, 1.0); }

}  // namespace

TEST(EndowedTotal, NoEndowment) {
  const auto c = base();
  EXPECT_DOUBLE_EQ(endowed_total_price(c, 2.0, 0.0), total_price(c, 2.0));
}

TEST(EndowedTotal, GaussianDifference) {
  EXPECT_NEAR(endowed_total_price(base(), 2.0, 4.0), 1.0, 1e-14);
}

TEST(EndowedTotal, ZeroTrade) { EXPECT_EQ(endowed_total_price(base(), 0.0, 4.0), 0.0); }

TEST(EndowedCurve, MarginalMatchesDerivative) {
  // q·p(q | bB) under risk aversion a: derivative at 0 is d − aγ²b
  const auto c = endowed_price_curve(base(), {2.0, 1.5});
  EXPECT_NEAR(c(0.0), 1.0 - 2.0 * 0.1 * 1.5, 1e-9);
  EXPECT_NEAR(c(2.0), 1.0 - 0.05 * 2.0 * (2.0 + 3.0), 1e-12);
}

TEST(Pepq, SymmetricWithoutEndowments) {
  const auto r = pepq_solve(base(), {1.0, 0.0}, {1.0, 0.0}, 1e-10);
  EXPECT_NEAR(r.q_star, 0.0, 1e-10);
  EXPECT_NEAR(r.p_star, 1.0, 1e-9);
}

TEST(Pepq, ClosedFormExample) {
  const auto r = pepq_solve(base(), {1.0, 0.0}, {1.0, 4.0}, 1e-10);
  EXPECT_NEAR(r.q_star, 2.0, 1e-8);
  EXPECT_NEAR(r.p_star, 0.8, 1e-6);
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_TRUE(r.unique);
  const auto cf = pepq_closed_form(base(), 1.0, 1.0, 0.0, 4.0);
  EXPECT_DOUBLE_EQ(cf.q_star, 2.0);
  EXPECT_NEAR(cf.p_star, 0.8, 1e-9);
}

TEST(Pepq, PerturbedEndowment) {
  const auto r = pepq_solve(base(), {1.0, 0.0}, {1.0, 4.2}, 1e-10);
  EXPECT_NEAR(r.q_star, 2.1, 1e-8);
}

TEST(Pepq, ClosedFormZeroCases) {
  EXPECT_EQ(pepq_closed_form(base(), 1.0, 2.0, 0.0, 0.0).q_star, 0.0);
  EXPECT_EQ(pepq_closed_form(base(), 2.0, 1.0, 1.0, 2.0).q_star, 0.0);
}

TEST(Pepq, RandomizedClosedFormAgreement) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(0.2, 3), ub(-5, 5), ug(0.02, 0.5), ud(0.5, 2);
  for (int k = 0; k < 20; ++k) {
    const auto c = base(ud(rng), ug(rng));
    const double a1 = ua(rng), a2 = ua(rng), b1 = ub(rng), b2 = ub(rng);
    const auto num = pepq_solve(c, {a1, b1}, {a2, b2}, 1e-10);
    const auto cf = pepq_closed_form(c, a1, a2, b1, b2);
    EXPECT_NEAR(num.q_star, cf.q_star, 1e-8) << k;
    EXPECT_NEAR(num.p_star, cf.p_star, 1e-8) << k;
    EXPECT_LE(num.residual, 1e-8) << k;
  }
}

TEST(Pepq, MarginalConsistency) {
  const double tol = 1e-10;
  const InvestorSpec i1{1.3, 0.5}, i2{0.7, 3.0};
  const auto c = base();
  const auto r = pepq_solve(c, i1, i2, tol);
  auto marginal = [&](const InvestorSpec& inv, double q) {
    const double h = 1e-5 * std::max(1.0, std::abs(q));
    return (investor_total_price(c, inv, q + h) - investor_total_price(c, inv, q - h)) / (2 * h);
  };
  EXPECT_NEAR(marginal(i1, r.q_star), r.p_star, 10 * tol + 1e-9);
  EXPECT_NEAR(marginal(i2, -r.q_star), r.p_star, 10 * tol + 1e-9);
}

TEST(Pepq, FlatObjectiveFlagged) {
  auto info = base().info();
  const PriceCurve linear(info, [](double) { return PriceSample{1.0, 0.0}; });
  const auto r = pepq_solve(linear, {1.0, 0.0}, {1.0, 1.0}, 1e-8);
  EXPECT_FALSE(r.unique) << r.q_star;
  EXPECT_NEAR(r.p_star, 1.0, 1e-9);
}

TEST(Pepq, RejectsBadRiskAversion) {
  EXPECT_THROW(pepq_solve(base(), {0.0, 0.0}, {1.0, 1.0}, 1e-8), Error);
}

TEST(PepqLimit, BoundedEndowmentsConvergeToCenter) {
  const GaussianModel m({1.0, Sequence([](long n) { return 1.0 / n; }, "1/n"), {}});
  const RateSchedule r([](long n) { return double(n); }, "n");
  const std::vector<long> ns{10, 100, 1000, 10000, 100000};
  const auto s = pepq_limit_study(m, r, {}, {RiskAversionSchedule::constant(1.0), 2.0}, ns);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    EXPECT_NEAR(s.p_star[i], 1.0 - 0.5 * 2.0 / ns[i], 1e-9);
  }
  EXPECT_EQ(s.regime, "bounded");
  EXPECT_NEAR(s.price.limit, 1.0, 1e-4);
  EXPECT_NEAR(s.ratio.back(), 0.0, 1e-4);
}

TEST(PepqLimit, GrowingEndowmentsShiftPrice) {
  const GaussianModel m({1.0, Sequence([](long n) { return 1.0 / n; }, "1/n"), {}});
  const RateSchedule r([](long n) { return double(n); }, "n");
  const std::vector<long> ns{10, 100, 1000, 10000, 100000};
  const InvestorSchedule seller{RiskAversionSchedule::constant(1.0),
                                Sequence([](long n) { return 0.4 * n; }, "0.4n")};
  const auto s = pepq_limit_study(m, r, {}, seller, ns);
  EXPECT_EQ(s.regime, "growing");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    EXPECT_NEAR(s.p_star[i], 0.8, 1e-8);
    EXPECT_NEAR(s.ratio[i], 0.2, 1e-9);
  }
  EXPECT_TRUE(s.price.cauchy_ok);
  EXPECT_TRUE(s.scaled_quantity.cauchy_ok);
}
