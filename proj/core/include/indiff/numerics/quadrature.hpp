#pragma once

#include <functional>
#include <vector>

namespace indiff::numerics {

// Nodes and weights for E[g(Z)], Z ~ N(0, 1): E[g(Z)] ≈ Σ w_i g(x_i), Σ w_i = 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite_rule(int order);

// E[g(X)], X ~ N(mean, var). Throws if g is not finite at a node.
double gauss_hermite_expectation(const std::function<double(double)>& g, double mean, double var,
                                 int order);

}  // namespace indiff::numerics
