#pragma once

namespace indiff::models {

// Zero-rate Black-Scholes call value at (s, t) for strike K, maturity T.
double black_scholes_price(double s, double t, double sigma, double K, double T);

}  // namespace indiff::models
