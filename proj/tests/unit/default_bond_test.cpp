#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "indiff/models/default_bond.hpp"
#include "indiff/position/position.hpp"

using namespace indiff;
using namespace indiff::models;

TEST(DefaultBondF, TerminalCondition) {
  const DefaultBondParams p;
  EXPECT_NEAR(default_bond_F(p, 1, 1.0, 1.0, 100, p.T), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(default_bond_F(p, 1, 2.5, 0.3, 100, p.T), std::exp(-0.75), 1e-15);
}

TEST(DefaultBondF, TerminalIdentityAtZeroPosition) {
  const DefaultBondParams p;
  EXPECT_EQ(default_bond_F(p, 1, 3.0, 0.0, 100, p.T), 1.0);
}

TEST(DefaultBondF, StepRefinement) {
  const DefaultBondParams p;
  const double coarse = default_bond_F(p, 1, 1.0, 1.0, 2000);
  const double fine = default_bond_F(p, 1, 1.0, 1.0, 20000);
  EXPECT_NEAR(coarse, fine, 1e-8);
  EXPECT_GT(coarse, 0.0);
}

TEST(DefaultBondF, FourthOrderConvergence) {
  DefaultBondParams p;
  p.lambda = 0.5;
  const double ref = default_bond_log_F(p, 1, 1.0, 3.0, 20000);
  const double e1 = std::abs(default_bond_log_F(p, 1, 1.0, 3.0, 4) - ref);
  const double e2 = std::abs(default_bond_log_F(p, 1, 1.0, 3.0, 8) - ref);
  const double e3 = std::abs(default_bond_log_F(p, 1, 1.0, 3.0, 16) - ref);
  EXPECT_GT(std::log2(e1 / e2), 3.5);
  EXPECT_GT(std::log2(e2 / e3), 3.5);
}

TEST(DefaultBondPrice, InsideUnitInterval) {
  DefaultBondParams p;
  for (double lam : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    p.lambda = lam;
    for (double q : {-5.0, -0.5, 0.1, 1.0, 5.0}) {
      const double v = default_bond_price(p, 1, 1.0, q);
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(DefaultBondPrice, ScaledSequenceIncreasesTowardOne) {
  DefaultBondParams p;
  p.lambda = Sequence([](long n) { return std::pow(10.0, -(n + 1)); }, "10^-(n+1)");
  const DefaultBondModel m(p);
  const auto r = m.default_rate();
  const std::vector<double> ref{0.90747, 0.97290, 0.99275, 0.99809, 0.99949};
  double prev = 0.0, prev_gap = 1.0;
  for (long n = 1; n <= 5; ++n) {
    const double v = m.curve(n, 1.0)(0.5 * r(n));
    EXPECT_NEAR(v, ref[n - 1], 2e-5) << n;
    EXPECT_GT(v, prev);
    EXPECT_LT(1.0 - v, prev_gap);
    prev_gap = 1.0 - v;
    prev = v;
  }
}

TEST(DefaultBondPrice, MonotoneInPosition) {
  const DefaultBondModel m({});
  const auto c = m.curve(1, 1.0);
  double prev = c(-4.0);
  for (int i = -39; i <= 40; ++i) {
    const double v = c(i / 10.0);
    EXPECT_LE(v, prev + 1e-10) << i;
    prev = v;
  }
}

TEST(DefaultBondPrice, CurvePassesValidation) {
  const DefaultBondModel m({});
  std::vector<double> grid;
  for (int i = -20; i <= 20; ++i) grid.push_back(i / 4.0);
  EXPECT_TRUE(position::validate_price_curve(m.curve(1, 1.0), grid, 1e-10).ok());
}

TEST(DefaultBondPrice, MarginalPriceFromDifference) {
  const DefaultBondModel m({});
  const auto c = m.curve(1, 1.0);
  EXPECT_NEAR(c(0.0), 0.5 * (c(1e-3) + c(-1e-3)), 1e-6);
}

TEST(DefaultBondModel, RateIsMinusLogIntensity) {
  DefaultBondParams p;
  p.lambda = 1e-4;
  EXPECT_NEAR(DefaultBondModel(p).default_rate()(1), std::log(1e4), 1e-12);
}

TEST(DefaultBondModel, FixedPointVariantsDiffer) {
  DefaultBondParams p;
  const double printed = default_bond_price(p, 1, 1.0, 1.0);
  p.fixed_point = FixedPointVariant::first_order_condition;
  const double foc = default_bond_price(p, 1, 1.0, 1.0);
  EXPECT_GT(std::abs(printed - foc), 1e-6);
  EXPECT_GT(foc, 0.0);
  EXPECT_LT(foc, 1.0);
}
