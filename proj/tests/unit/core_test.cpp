#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "indiff/core/error.hpp"
#include "indiff/core/limit_curve.hpp"
#include "indiff/core/market_model.hpp"
#include "indiff/core/parallel.hpp"
#include "indiff/core/price_curve.hpp"
#include "indiff/core/schedule.hpp"
#include "indiff/models/default_bond.hpp"
#include "indiff/models/gaussian.hpp"

using namespace indiff;

namespace {

models::GaussianModel gaussian(double d, double g2) {
  return models::GaussianModel({d, g2, {}});
}

}  // namespace

TEST(TotalPrice, ZeroPosition) {
  const auto m = gaussian(1.0, 0.1);
  EXPECT_EQ(total_price(m.curve(1, 1.0), 0.0), 0.0);
}

TEST(TotalPrice, GaussianLong) {
  const auto m = gaussian(1.0, 0.1);
  EXPECT_NEAR(total_price(m.curve(1, 1.0), 2.0), 1.8, 1e-15);
}

TEST(TotalPrice, GaussianShort) {
  const auto m = gaussian(1.0, 0.1);
  EXPECT_NEAR(total_price(m.curve(1, 1.0), -1.0), -1.05, 1e-15);
}

TEST(RaSwitch, GaussianTwoSides) {
  const auto m = gaussian(1.0, 0.5);
  EXPECT_NEAR(m.curve(1, 2.0)(1.0), 0.5, 1e-15);
  EXPECT_NEAR(m.curve(1, 1.0)(2.0), 0.5, 1e-15);
  EXPECT_TRUE(verify_ra_switch(m, 1, 2.0, 1.0, 1e-12));
}

TEST(RaSwitch, UnitRiskAversionIsIdentity) {
  const auto m = gaussian(1.3, 0.7);
  for (double q : {-3.0, -0.1, 0.4, 5.0}) EXPECT_TRUE(verify_ra_switch(m, 3, 1.0, q, 1e-15));
}

TEST(RaSwitch, DefaultBond) {
  const models::DefaultBondModel m({});
  const double lhs = m.curve(1, 0.5)(2.0);
  const double rhs = m.curve(1, 1.0)(1.0);
  EXPECT_NEAR(lhs, rhs, 1e-8);
  EXPECT_TRUE(verify_ra_switch(m, 1, 0.5, 2.0, 1e-8));
}

TEST(RaSwitch, IndexOutOfRange) {
  models::GaussianModel m({1.0, 0.1, IndexRange{1, 10}});
  try {
    verify_ra_switch(m, 11, 2.0, 1.0, 1e-8);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(PriceCurve, AskRejectsNegativeQ) {
  CurveInfo info;
  info.orientation = Orientation::ask;
  const PriceCurve c(info, [](double) { return PriceSample{1.0, 0.0}; });
  EXPECT_THROW(c(-1.0), Error);
  EXPECT_DOUBLE_EQ(c(1.0), 1.0);
}

TEST(PriceCurve, BoundsContainment) {
  PriceBounds b{0.0, 1.0};
  EXPECT_TRUE(b.contains(0.5));
  EXPECT_FALSE(b.contains(0.0));
  EXPECT_FALSE(b.contains(1.0));
  EXPECT_TRUE(PriceBounds{}.contains(1e300));
}

TEST(Schedule, RejectsNonPositive) {
  RateSchedule r([](long n) { return n - 2.0; }, "n-2");
  EXPECT_THROW(r(1), Error);
  EXPECT_DOUBLE_EQ(r(3), 1.0);
  EXPECT_THROW(RiskAversionSchedule::constant(0.0), Error);
}

TEST(Schedule, NonDecreasingCheck) {
  RateSchedule up([](long n) { return double(n); }, "n");
  RateSchedule down([](long n) { return 1.0 / n; }, "1/n");
  const std::vector<long> ns{1, 2, 4};
  EXPECT_NO_THROW(check_non_decreasing(up, ns));
  EXPECT_THROW(check_non_decreasing(down, ns), Error);
  EXPECT_THROW(check_index_list(std::vector<long>{3, 2}), Error);
}

TEST(Sequence, RejectsNonFinite) {
  Sequence s([](long n) { return n > 2 ? std::nan("") : 1.0; }, "bad");
  EXPECT_DOUBLE_EQ(s(1), 1.0);
  EXPECT_THROW(s(3), Error);
}

TEST(LimitCurve, DomainAndCenter) {
  LimitCurve c([](double l) { return 1.0 - l / 2; }, 1.0, {-1.0, 2.0});
  EXPECT_DOUBLE_EQ(c(0.0), 1.0);
  EXPECT_DOUBLE_EQ(c(1.0), 0.5);
  try {
    c(3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ell_outside_domain);
  }
}

TEST(ParallelFor, IndexedAndRethrows) {
  std::vector<int> out(100, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) raise(ErrorKind::domain, "boom");
                            }),
               Error);
}

TEST(Error, Names) {
  EXPECT_EQ(error_name(ErrorKind::unbounded_objective), "unbounded objective");
  EXPECT_EQ(Error(ErrorKind::positivity_lost, "x").name(), "positivity lost");
}
