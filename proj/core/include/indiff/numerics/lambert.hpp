#pragma once

namespace indiff::numerics {

// x ≥ 0 with x·eˣ = c for c ≥ 0: safeguarded Newton from ln(1+c), bisection fallback on
// [0, max(1, ln(1+c)+1)]. Stops when the step falls below tol·max(1, x).
double solve_x_exp_x(double c, double tol = 1e-14);

// Same root, given log c. Usable when c itself overflows.
double solve_x_exp_x_log(double log_c, double tol = 1e-14);

}  // namespace indiff::numerics
