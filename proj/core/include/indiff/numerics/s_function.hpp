#pragma once

#include <vector>

namespace indiff::numerics {

// Table of the function S : R -> (-1, ∞) solving Ṡ = (1+S)/(2√(AS) - A), S(0) = 0.
//
// Nodes are uniform in x = cbrt(A) on each side of 0, where the ODE is regular:
//   dS/dx = 3(1+S)/(2√(S/x) - x),  dS/dx -> k = (3/2)^{2/3} at x = 0.
// Outside [A_min, A_max] the tails S = A + ln A + C₊ and S = -1 + C₋/|A| are used, with
// constants fixed by continuity at the table ends.
class SFunctionTable {
 public:
  struct Value {
    double s;       // S(A)
    double a_ds;    // A·S'(A), finite at A = 0
  };

  double operator()(double A) const { return evaluate(A).s; }
  Value evaluate(double A) const;

  double a_min() const noexcept { return a_min_; }
  double a_max() const noexcept { return a_max_; }
  double c_plus() const noexcept { return c_plus_; }
  double c_minus() const noexcept { return c_minus_; }
  int size() const noexcept { return static_cast<int>(xs_.size()); }

  // Nodes in increasing A with S and dS/dx (the latter from the ODE, then slope-limited).
  const std::vector<double>& x_nodes() const noexcept { return xs_; }
  const std::vector<double>& s_nodes() const noexcept { return ss_; }
  const std::vector<double>& dsdx_nodes() const noexcept { return ds_; }

 private:
  friend SFunctionTable build_s_table(double, double, int);

  double a_min_ = 0.0, a_max_ = 0.0;
  double x_min_ = 0.0, x_max_ = 0.0;
  double h_neg_ = 0.0, h_pos_ = 0.0;
  int n_neg_ = 0;  // index of x = 0 in the node arrays
  std::vector<double> xs_, ss_, ds_;
  double c_plus_ = 0.0, c_minus_ = 0.0;
};

// Leading coefficient of S(A) ≈ k·A^{1/3} near 0.
double s_seed_coefficient() noexcept;
// Two-term seed k·x + (4√k/5)·x², x = cbrt(A).
double s_seed(double A) noexcept;

// Right side of the ODE in the cube-root coordinate.
double s_ode_rhs_x(double x, double s) noexcept;

// Throws s_table_failed on persistent integration failure.
SFunctionTable build_s_table(double a_min = -50.0, double a_max = 50.0, int n_points = 4001);

double eval_s(const SFunctionTable& table, double A);

// max |dS/dx - rhs| over interior nodes, derivative by 5-point centered differences.
double s_table_residual(const SFunctionTable& table);

// Process-wide default table (built once on first use, immutable afterward).
const SFunctionTable& default_s_table();

}  // namespace indiff::numerics
