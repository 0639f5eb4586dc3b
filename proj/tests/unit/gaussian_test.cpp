#include <gtest/gtest.h>

#include "indiff/core/error.hpp"
#include "indiff/models/gaussian.hpp"
#include "indiff/numerics/minimize.hpp"

using namespace indiff;
using namespace indiff::models;

TEST(GaussianPrice, ClosedForm) {
  const GaussianResidualParams p{1.0, 0.5, {}};
  EXPECT_DOUBLE_EQ(gaussian_price(p, 1, 2.0, 1.0), 0.5);
}

TEST(GaussianPrice, ZeroPosition) {
  const GaussianResidualParams p{Sequence([](long n) { return 1.0 + 1.0 / n; }, "1+1/n"), 0.3, {}};
  EXPECT_DOUBLE_EQ(gaussian_price(p, 4, 1.7, 0.0), 1.25);
}

TEST(GaussianPrice, ShortSide) {
  const GaussianResidualParams p{1.0, 0.1, {}};
  EXPECT_NEAR(gaussian_price(p, 1, 1.0, -2.0), 1.1, 1e-15);
}

TEST(GaussianPrice, CurveIsUnbounded) {
  const GaussianModel m({1.0, 0.1, {}});
  const auto c = m.curve(3, 1.0);
  EXPECT_FALSE(c.bounds().lower.has_value());
  EXPECT_FALSE(c.bounds().upper.has_value());
  EXPECT_EQ(c.mode(), EvalMode::closed_form);
  EXPECT_DOUBLE_EQ(c.d_n(), 1.0);
}

TEST(GaussianPosition, Long) {
  const GaussianResidualParams p{1.0, 0.1, {}};
  EXPECT_NEAR(gaussian_optimal_position(p, 1, 1.0, 0.8), 2.0, 1e-14);
}

TEST(GaussianPosition, AtMarginal) {
  const GaussianResidualParams p{1.0, 0.1, {}};
  EXPECT_EQ(gaussian_optimal_position(p, 1, 1.0, 1.0), 0.0);
}

TEST(GaussianPosition, Short) {
  const GaussianResidualParams p{1.0, 0.1, {}};
  EXPECT_NEAR(gaussian_optimal_position(p, 1, 1.0, 1.2), -2.0, 1e-14);
}

TEST(GaussianPosition, MatchesMinimizer) {
  const GaussianResidualParams p{1.0, 0.1, {}};
  auto f = [&](double q) { return q * 0.8 - q * gaussian_price(p, 1, 1.0, q); };
  EXPECT_NEAR(numerics::minimize_unimodal(f, {0, 1}, 1e-10).x,
              gaussian_optimal_position(p, 1, 1.0, 0.8), 1e-10);
}

TEST(GaussianModel, DefaultRateIsInverseVariance) {
  const GaussianModel m({1.0, Sequence([](long n) { return 1.0 / n; }, "1/n"), {}});
  EXPECT_NEAR(m.default_rate()(40), 40.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.default_risk_aversion()(40), 1.0);
}

TEST(GaussianModel, ScaledPriceMatchesLimitExactly) {
  // r_n = 1/γ_n² gives p(ℓ r_n) = d_n − ℓ/2
  const GaussianModel m({1.0, Sequence([](long n) { return 1.0 / n; }, "1/n"), {}});
  for (long n : {1L, 10L, 1000L}) {
    EXPECT_NEAR(m.curve(n, 1.0)(0.6 * n), 0.7, 1e-13);
  }
}

TEST(GaussianModel, RejectsNonPositiveVariance) {
  const GaussianModel m({1.0, Sequence([](long n) { return n - 2.0; }, "n-2"), {}});
  EXPECT_THROW(m.curve(1, 1.0), Error);
}
