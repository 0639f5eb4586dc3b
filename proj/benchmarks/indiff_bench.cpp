#include <benchmark/benchmark.h>

#include <cmath>

#include "indiff/equilibrium/pepq.hpp"
#include "indiff/models/basis_risk.hpp"
#include "indiff/models/default_bond.hpp"
#include "indiff/models/gaussian.hpp"
#include "indiff/models/transaction_cost.hpp"
#include "indiff/numerics/minimize.hpp"
#include "indiff/numerics/s_function.hpp"
#include "indiff/position/position.hpp"

using namespace indiff;
using namespace indiff::models;

namespace {

BasisRiskParams basis_params(long paths) {
  BasisRiskParams p;
  p.mu = 0.1;
  p.sigma = 0.2;
  p.a_y = 0.3;
  p.payoff = [](double y) { return std::tanh(y); };
  p.payoff_lower = -1.0;
  p.payoff_upper = 1.0;
  p.rho = Sequence([](long n) { return std::sqrt(1.0 - 1.0 / n); }, "sqrt(1-1/n)");
  p.mc.paths = paths;
  p.mc.sampling = PathSampling::exact;
  return p;
}

void BM_STableBuild(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::build_s_table(-50.0, 50.0, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_STableBuild)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

void BM_STableEval(benchmark::State& state) {
  const auto& t = numerics::default_s_table();
  double a = -60.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::eval_s(t, a));
    a = a > 60.0 ? -60.0 : a + 0.37;
  }
}
BENCHMARK(BM_STableEval);

void BM_MinimizeQuadratic(benchmark::State& state) {
  const auto f = [](double x) { return (x - 3.7) * (x - 3.7); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::minimize_unimodal(f, {-1.0, 1.0}, 1e-10));
  }
}
BENCHMARK(BM_MinimizeQuadratic);

void BM_OptimalPositionGaussian(benchmark::State& state) {
  const auto c = GaussianModel({1.0, 0.01, {}}).curve(1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(position::optimal_position(c, 0.7, 1e-9));
}
BENCHMARK(BM_OptimalPositionGaussian);

void BM_PepqSolve(benchmark::State& state) {
  const auto c = GaussianModel({1.0, 0.1, {}}).curve(1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium::pepq_solve(c, {1, 0}, {1, 4}, 1e-10));
}
BENCHMARK(BM_PepqSolve);

void BM_BasisRiskQuadrature(benchmark::State& state) {
  const auto p = basis_params(2);
  for (auto _ : state) benchmark::DoNotOptimize(basis_risk_price_quadrature(p, 64, 1.0, 32.0));
}
BENCHMARK(BM_BasisRiskQuadrature);

void BM_BasisRiskMonteCarlo(benchmark::State& state) {
  const auto p = basis_params(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(basis_risk_price_mc(p, 64, 1.0, 32.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BasisRiskMonteCarlo)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_DefaultBondOde(benchmark::State& state) {
  DefaultBondParams p;
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(default_bond_log_F(p, 1, 1.0, 2.0, steps));
}
BENCHMARK(BM_DefaultBondOde)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_TransactionPde(benchmark::State& state) {
  TransCostParams p;
  PdeConfig g;
  g.space_points = static_cast<int>(state.range(0));
  g.time_steps = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(transaction_psi(p, 1.0, g));
}
BENCHMARK(BM_TransactionPde)->Args({801, 400})->Args({2001, 1000})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
