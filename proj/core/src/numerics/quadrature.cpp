#include "indiff/numerics/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "indiff/core/error.hpp"

namespace indiff::numerics {

namespace {

GaussHermiteRule compute_rule(int order) {
  const int n = order;
  // Roots of the physicists' H_n via Newton on the orthonormal recurrence, using the
  // usual asymptotic initial guesses and symmetry.
  std::vector<double> x(n), w(n);
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  double z = 0.0;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) raise(ErrorKind::domain, "Gauss-Hermite root iteration failed");
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  // Physicists' weight e^{-t²} -> standard normal: x = √2 t, w /= √π.
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = std::numbers::sqrt2 * x[n - 1 - i];
    rule.weights[i] = w[n - 1 - i] / std::sqrt(std::numbers::pi);
  }
  return rule;
}

}  // namespace

GaussHermiteRule gauss_hermite_rule(int order) {
  if (order < 1 || order > 300) raise(ErrorKind::domain, "Gauss-Hermite order must be in [1, 300]");
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double gauss_hermite_expectation(const std::function<double(double)>& g, double mean, double var,
                                 int order) {
  if (!(var > 0.0)) raise(ErrorKind::domain, "variance must be positive");
  if (order < 2) raise(ErrorKind::domain, "Gauss-Hermite expectation needs order >= 2");
  const GaussHermiteRule rule = gauss_hermite_rule(order);
  const double sd = std::sqrt(var);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double xi = mean + sd * rule.nodes[i];
    const double gi = g(xi);
    if (!std::isfinite(gi)) {
      std::ostringstream os;
      os << "integrand not finite at node " << xi;
      raise(ErrorKind::domain, os.str());
    }
    acc += rule.weights[i] * gi;
  }
  return acc;
}

}  // namespace indiff::numerics
