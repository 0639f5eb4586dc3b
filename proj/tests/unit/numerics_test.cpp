#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "indiff/core/error.hpp"
#include "indiff/numerics/interpolation.hpp"
#include "indiff/numerics/lambert.hpp"
#include "indiff/numerics/minimize.hpp"
#include "indiff/numerics/ode.hpp"
#include "indiff/numerics/quadrature.hpp"

using namespace indiff;
using namespace indiff::numerics;

TEST(Minimize, ShiftedQuadratic) {
  const auto r = minimize_unimodal([](double x) { return (x - 3) * (x - 3); }, {0, 1}, 1e-10);
  EXPECT_NEAR(r.x, 3.0, 1e-10);
}

TEST(Minimize, Kink) {
  const auto r = minimize_unimodal([](double x) { return std::abs(x); }, {-1, 1}, 1e-10);
  EXPECT_NEAR(r.x, 0.0, 1e-10);
}

TEST(Minimize, GaussianObjectiveVertex) {
  const auto r = minimize_unimodal([](double x) { return -0.3 * x + x * x / 2; }, {0, 1}, 1e-10);
  EXPECT_NEAR(r.x, 0.3, 1e-10);
}

TEST(Minimize, UnboundedObjective) {
  try {
    minimize_unimodal([](double x) { return -x; }, {0, 1}, 1e-8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unbounded_objective);
  }
}

TEST(Minimize, OneSidedExpansion) {
  MinimizeOptions o;
  o.expansion = Expansion::upper_only;
  const auto r = minimize_unimodal([](double x) { return (x - 40) * (x - 40); }, {0, 1}, 1e-9, o);
  EXPECT_NEAR(r.x, 40.0, 1e-9);
  EXPECT_GE(r.bracket.lo, 0.0);
  o.expansion = Expansion::lower_only;
  const auto s = minimize_unimodal([](double x) { return (x + 7) * (x + 7); }, {-1, 0}, 1e-9, o);
  EXPECT_NEAR(s.x, -7.0, 1e-9);
  EXPECT_LE(s.bracket.hi, 0.0);
}

TEST(Minimize, RandomizedConvexAgainstGridScan) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10), w(0.1, 5);
  for (int k = 0; k < 25; ++k) {
    const double c = u(rng), s = w(rng), e = w(rng);
    auto f = [&](double x) { return s * (x - c) * (x - c) + e * std::cosh(0.1 * (x - c)); };
    const double tol = 1e-8;
    const auto r = minimize_unimodal(f, {-1, 1}, tol);
    const long N = 100000;
    double best = -20, fbest = f(-20);
    for (long i = 1; i <= N; ++i) {
      const double x = -20 + 40.0 * i / N;
      if (f(x) < fbest) fbest = f(x), best = x;
    }
    EXPECT_LE(std::abs(r.x - best), 40.0 / N + 2 * tol);
  }
}

TEST(Rk4, ExponentialDecay) {
  const double y = rk4_integrate([](double, double y) { return -y; }, 0, 1, 1, 100);
  EXPECT_NEAR(y, std::exp(-1.0), 1e-9);
}

TEST(Rk4, Constant) {
  EXPECT_EQ(rk4_integrate([](double, double) { return 0.0; }, 0, 1, 2.5, 10), 2.5);
}

TEST(Rk4, PolynomialExact) {
  EXPECT_NEAR(rk4_integrate([](double t, double) { return 2 * t; }, 0, 2, 0, 7), 4.0, 1e-12);
}

TEST(Rk4, ConvergenceOrder) {
  auto err = [](int n) {
    return std::abs(rk4_integrate([](double, double y) { return -y; }, 0, 1, 1, n) - std::exp(-1.0));
  };
  EXPECT_GE(std::log2(err(10) / err(20)), 3.8);
  EXPECT_GE(std::log2(err(20) / err(40)), 3.8);
}

TEST(Rk4, BlowUp) {
  try {
    rk4_integrate([](double, double y) { return y * y * y; }, 0, 1, 10, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ode_blow_up);
  }
}

TEST(GaussHermite, Linearity) {
  EXPECT_NEAR(gauss_hermite_expectation([](double z) { return z; }, 0.5, 1, 8), 0.5, 1e-14);
}

TEST(GaussHermite, Variance) {
  EXPECT_NEAR(gauss_hermite_expectation([](double z) { return z * z; }, 0, 2, 8), 2.0, 1e-13);
}

TEST(GaussHermite, LognormalMoment) {
  EXPECT_NEAR(gauss_hermite_expectation([](double z) { return std::exp(z); }, 0, 1, 40),
              std::exp(0.5), 1e-10);
}

TEST(GaussHermite, PolynomialExactness) {
  // E[Z^8] = 105 for the standard normal
  EXPECT_NEAR(gauss_hermite_expectation([](double z) { return std::pow(z, 8); }, 0, 1, 5), 105.0,
              1e-9);
}

TEST(GaussHermite, Preconditions) {
  EXPECT_THROW(gauss_hermite_expectation([](double z) { return z; }, 0, 0, 8), Error);
  EXPECT_THROW(gauss_hermite_expectation([](double z) { return z; }, 0, 1, 1), Error);
}

TEST(XExpX, KnownRoots) {
  EXPECT_EQ(solve_x_exp_x(0.0), 0.0);
  EXPECT_NEAR(solve_x_exp_x(std::exp(1.0)), 1.0, 1e-13);
  // bisection oracle on x e^x − 10
  double lo = 0, hi = 3;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (m * std::exp(m) > 10 ? hi : lo) = m;
  }
  EXPECT_NEAR(solve_x_exp_x(10.0), lo, 1e-12);
  EXPECT_NEAR(lo, 1.7455, 1e-4);
}

TEST(XExpX, ResidualBound) {
  for (double c : {0.0, 1e-6, 1.0, 10.0, 1e6}) {
    const double x = solve_x_exp_x(c, 1e-12);
    EXPECT_LE(std::abs(x * std::exp(x) - c), 1e-12 * (1 + c)) << c;
  }
}

TEST(XExpX, LogForm) {
  const double x = solve_x_exp_x_log(500.0);
  EXPECT_NEAR(std::log(x) + x, 500.0, 1e-11);
  EXPECT_THROW(solve_x_exp_x(-1.0), Error);
}

TEST(MonotoneCubic, PreservesMonotonicity) {
  MonotoneCubic m({0, 1, 2, 3}, {0, 0.1, 5, 5.1});
  double prev = m(0);
  for (int i = 1; i <= 300; ++i) {
    const double v = m(i / 100.0);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
  EXPECT_DOUBLE_EQ(m(2.0), 5.0);
}
