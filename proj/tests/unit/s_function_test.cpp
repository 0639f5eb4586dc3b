#include <gtest/gtest.h>

#include <cmath>

#include "indiff/numerics/s_function.hpp"

using namespace indiff::numerics;

namespace {

const SFunctionTable& table() { return default_s_table(); }

}  // namespace

TEST(SFunction, ZeroAtOrigin) {
  EXPECT_EQ(eval_s(table(), 0.0), 0.0);
  EXPECT_EQ(table().evaluate(0.0).a_ds, 0.0);
}

TEST(SFunction, SeedCoefficientFromDominantBalance) {
  // S = k A^{1/3} in S' = (1+S)/(2√(AS) − A) balances at leading order when k^{3/2} = 3/2
  const double k = s_seed_coefficient();
  EXPECT_NEAR(std::pow(k, 1.5), 1.5, 1e-14);
}

TEST(SFunction, SeedSatisfiesOdeNearOrigin) {
  for (double A : {1e-8, -1e-8}) {
    const double x = std::cbrt(A), h = 1e-3 * std::abs(x);
    const double lhs = (s_seed(std::pow(x + h, 3)) - s_seed(std::pow(x - h, 3))) / (2 * h);
    EXPECT_LE(std::abs(lhs - s_ode_rhs_x(x, s_seed(A))), 1e-4) << A;
  }
}

TEST(SFunction, MonotoneAndInRange) {
  double prev = -1.0;
  for (int i = -6000; i <= 6000; ++i) {
    const double A = i / 100.0;
    const double s = eval_s(table(), A);
    EXPECT_GT(s, -1.0);
    EXPECT_GT(s, prev) << A;
    prev = s;
  }
}

TEST(SFunction, OdeResidual) { EXPECT_LE(s_table_residual(table()), 1e-6); }

TEST(SFunction, PositiveTailIsLinear) {
  const double A = 10 * table().a_max();
  EXPECT_NEAR(eval_s(table(), A) / A, 1.0, 0.02);
  EXPECT_NEAR(eval_s(table(), 1e8) / 1e8, 1.0, 1e-6);
}

TEST(SFunction, NegativeTailApproachesMinusOne) {
  EXPECT_NEAR(eval_s(table(), 10 * table().a_min()), -1.0, 0.01);
  EXPECT_NEAR(eval_s(table(), -1e8), -1.0, 1e-7);
  EXPECT_GT(eval_s(table(), -1e8), -1.0);
}

TEST(SFunction, TailsJoinContinuously) {
  const auto& t = table();
  EXPECT_NEAR(eval_s(t, t.a_max() * (1 - 1e-12)), eval_s(t, t.a_max() * (1 + 1e-12)), 1e-9);
  EXPECT_NEAR(eval_s(t, t.a_min() * (1 - 1e-12)), eval_s(t, t.a_min() * (1 + 1e-12)), 1e-9);
}

TEST(SFunction, ReferenceValues) {
  EXPECT_NEAR(eval_s(table(), 50.0), 55.2285, 1e-3);
  EXPECT_NEAR((1 + eval_s(table(), -50.0)) * 50.0, 1.5026, 1e-3);
}

TEST(SFunction, DerivativeConsistent) {
  for (double A : {-20.0, -1.0, -0.01, 0.01, 1.0, 20.0}) {
    const double h = 1e-5 * std::abs(A);
    const double fd = (eval_s(table(), A + h) - eval_s(table(), A - h)) / (2 * h);
    EXPECT_NEAR(table().evaluate(A).a_ds, A * fd, 1e-5 * (1 + std::abs(A * fd))) << A;
  }
}

TEST(SFunction, SmallTableBuilds) {
  const auto t = build_s_table(-5, 5, 401);
  EXPECT_EQ(eval_s(t, 0.0), 0.0);
  EXPECT_NEAR(eval_s(t, 3.0), eval_s(table(), 3.0), 1e-6);
}
