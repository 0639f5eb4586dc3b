#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "indiff/asymptotics/asymptotics.hpp"
#include "indiff/core/error.hpp"
#include "indiff/models/default_bond.hpp"
#include "indiff/models/gaussian.hpp"

using namespace indiff;
using namespace indiff::asymptotics;
using namespace indiff::models;

namespace {

const std::vector<long> kDecades{10, 100, 1000, 10000, 100000, 1000000};

GaussianModel reference_gaussian() {
  return GaussianModel({Sequence([](long n) { return 1.0 + 1.0 / n; }, "1+1/n"),
                        Sequence([](long n) { return 1.0 / n; }, "1/n"), {}});
}

Schedules linear_rate() {
  return {RiskAversionSchedule::constant(1.0), RateSchedule([](long n) { return double(n); }, "n")};
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (int i = 0; lo + i * step <= hi + 1e-12; ++i) g.push_back(lo + i * step);
  return g;
}

LimitCurve half_slope() {
  return LimitCurve([](double l) { return 1.0 - l / 2; }, 1.0, {});
}

}  // namespace

TEST(Diagnose, GapsAndAitken) {
  const auto d = diagnose_sequence({1, 2, 3, 4}, {1.0, 0.5, 0.25, 0.125}, 0.3);
  ASSERT_EQ(d.gaps.size(), 3u);
  EXPECT_DOUBLE_EQ(d.gaps[2], -0.125);
  EXPECT_TRUE(d.aitken_used);
  EXPECT_NEAR(d.limit, 0.0, 1e-15);
  EXPECT_TRUE(d.cauchy_ok);
  // last ⌈4/3⌉ = 2 gaps are −0.25 and −0.125
  EXPECT_FALSE(diagnose_sequence({1, 2, 3, 4}, {1.0, 0.5, 0.25, 0.125}, 0.2).cauchy_ok);
}

TEST(Diagnose, OscillatingGapsSkipAitken) {
  const auto d = diagnose_sequence({1, 2, 3, 4}, {1.0, 1.1, 1.0, 1.1}, 1.0);
  EXPECT_FALSE(d.aitken_used);
  EXPECT_DOUBLE_EQ(d.limit, 1.1);
}

TEST(Diagnose, MonteCarloToleranceWidens) {
  const auto d = diagnose_sequence({1, 2, 3}, {0.0, 0.01, 0.015}, 1e-4, {0.01, 0.01, 0.01});
  EXPECT_TRUE(d.cauchy_ok);
  EXPECT_GE(d.tol, 0.03);
}

TEST(ScaledPrice, GaussianConverges) {
  const auto m = reference_gaussian();
  const auto s = linear_rate();
  const auto d = scaled_price_sequence(m, s.risk_aversion, s.rate, 0.4, kDecades);
  for (std::size_t i = 0; i < kDecades.size(); ++i) {
    EXPECT_NEAR(d.values[i], 1.0 + 1.0 / kDecades[i] - 0.2, 1e-14);
  }
  EXPECT_TRUE(d.cauchy_ok);
  EXPECT_NEAR(d.limit, 0.8, 1e-12);
}

TEST(ScaledPrice, ZeroPositionGivesMarginal) {
  const auto m = reference_gaussian();
  const auto s = linear_rate();
  const auto d = scaled_price_sequence(m, s.risk_aversion, s.rate, 0.0, kDecades);
  for (std::size_t i = 0; i < kDecades.size(); ++i) EXPECT_EQ(d.values[i], 1.0 + 1.0 / kDecades[i]);
  EXPECT_TRUE(d.cauchy_ok);
}

TEST(ScaledPrice, WrongScalingFailsCauchy) {
  // r_n = √n gives p = d_n − ℓ/(2√n): convergence too slow for the Cauchy test away from ℓ = 0
  const auto m = reference_gaussian();
  const RateSchedule root([](long n) { return std::sqrt(double(n)); }, "sqrt(n)");
  const auto one = RiskAversionSchedule::constant(1.0);
  const auto d = scaled_price_sequence(m, one, root, 0.5, kDecades);
  for (std::size_t i = 0; i < kDecades.size(); ++i) {
    const double n = kDecades[i];
    EXPECT_NEAR(d.values[i], 1.0 + 1.0 / n - 0.5 / (2 * std::sqrt(n)), 1e-14);
  }
  EXPECT_FALSE(d.cauchy_ok);
  EXPECT_TRUE(scaled_price_sequence(m, one, root, 0.0, kDecades).cauchy_ok);
}

TEST(LimitEstimate, GaussianHalfSlope) {
  const auto m = reference_gaussian();
  const auto g = grid(-2, 2, 0.25);
  const auto est = estimate_limit_curve(m, linear_rate(), g, kDecades);
  EXPECT_TRUE(est.excluded.empty());
  for (std::size_t i = 0; i < est.ell.size(); ++i) {
    EXPECT_NEAR(est.values[i], 1.0 - est.ell[i] / 2, 1e-9) << est.ell[i];
  }
  EXPECT_NEAR(est.curve(0.3), 0.85, 1e-9);
  EXPECT_TRUE(est.monotone_ok);
  EXPECT_TRUE(est.concave_ok);
  EXPECT_NEAR(est.continuity_gap_plus, 0.125, 1e-9);
}

TEST(ProbeDelta, GaussianSpansGrid) {
  const auto m = reference_gaussian();
  const auto d = probe_delta(m, linear_rate(), grid(-3, 3, 0.5), kDecades);
  EXPECT_DOUBLE_EQ(d.delta_minus, -3.0);
  EXPECT_DOUBLE_EQ(d.delta_plus, 3.0);
  EXPECT_FALSE(d.empty);
}

TEST(ProbeDelta, DefaultBondEndsNearOne) {
  DefaultBondParams p;
  p.lambda = Sequence([](long n) { return std::pow(10.0, -double(n)); }, "10^-n");
  const DefaultBondModel m(p);
  const std::vector<long> ns{10, 20, 30, 40, 50, 60};
  const auto d = probe_delta(m, m.default_schedules(), grid(0.1, 1.5, 0.1), ns);
  EXPECT_GE(d.delta_plus, 0.8);
  EXPECT_LE(d.delta_plus, 1.2);
}

TEST(ProbeDelta, EmptyWhenNothingConverges) {
  const auto m = reference_gaussian();
  const RateSchedule fast([](long n) { return double(n) * n; }, "n^2");
  const auto d = probe_delta(m, {RiskAversionSchedule::constant(1.0), fast}, grid(0.5, 2, 0.5), kDecades);
  EXPECT_TRUE(d.empty);
  EXPECT_EQ(d.delta_minus, 0.0);
  EXPECT_EQ(d.delta_plus, 0.0);
}

TEST(RateRatio, GaussianLong) {
  const auto m = reference_gaussian();
  const auto v = rate_ratio_sequence(m, linear_rate(), 0.7, kDecades);
  for (std::size_t i = 0; i < kDecades.size(); ++i) {
    EXPECT_NEAR(v.ratio[i], 1.0 + 1.0 / kDecades[i] - 0.7, 1e-9);
  }
  EXPECT_EQ(v.verdict, Verdict::consistent_long);
  ASSERT_TRUE(v.ell_star.has_value());
  EXPECT_NEAR(*v.ell_star, 0.3, 1e-6);
  EXPECT_NEAR(*v.ell_star, corollary_limit(half_slope(), 0.7), 1e-6);
}

TEST(RateRatio, MarginalPriceIsDegenerate) {
  const auto m = reference_gaussian();
  const auto v = rate_ratio_sequence(m, linear_rate(),
                                     Sequence([](long n) { return 1.0 + 1.0 / n; }, "d_n"), kDecades);
  for (double r : v.ratio) EXPECT_EQ(r, 0.0);
  EXPECT_EQ(v.verdict, Verdict::degenerate);
}

TEST(RateRatio, GaussianShort) {
  const auto m = reference_gaussian();
  const auto v = rate_ratio_sequence(m, linear_rate(), 1.3, kDecades);
  EXPECT_NEAR(v.ratio.back(), 1e-6 - 0.3, 1e-9);
  EXPECT_EQ(v.verdict, Verdict::consistent_short);
  ASSERT_TRUE(v.ell_star.has_value());
  EXPECT_NEAR(*v.ell_star, -0.3, 1e-6);
  EXPECT_EQ(to_string(v.verdict), "consistent_short");
}

TEST(RateRatio, PriceAtOptimumConverges) {
  const auto m = reference_gaussian();
  const auto v = rate_ratio_sequence(m, linear_rate(), 0.7, kDecades);
  EXPECT_NEAR(v.price_at_optimum.back(), half_slope()(0.3), 1e-5);
}

TEST(LimitPosition, Vertex) { EXPECT_NEAR(corollary_limit(half_slope(), 0.7), 0.3, 1e-9); }

TEST(LimitPosition, MarginalPrice) { EXPECT_EQ(corollary_limit(half_slope(), 1.0), 0.0); }

TEST(LimitPosition, FlatCurveRejected) {
  const LimitCurve flat([](double) { return 1.0; }, 1.0, {});
  try {
    corollary_limit(flat, 0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_unique_limit);
  }
}

TEST(StrictConcavity, Cases) {
  const auto g = grid(-2, 2, 0.5);
  EXPECT_TRUE(check_strict_concavity(half_slope(), g));
  const LimitCurve bond([](double) { return 1.0; }, 1.0, {-1.0, 1.0});
  EXPECT_FALSE(check_strict_concavity(bond, grid(0.1, 0.9, 0.1)));
  const LimitCurve linear([](double l) { return l == 0.0 ? 2.0 : 2.0 + 0.0 * l; }, 2.0, {});
  EXPECT_FALSE(check_strict_concavity(linear, g));
  EXPECT_THROW(check_strict_concavity(half_slope(), grid(0, 1, 0.5)), Error);
}
