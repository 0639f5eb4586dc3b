#include <cmath>
#include <string>

#include "indiff/core/error.hpp"
#include "indiff/core/market_model.hpp"

namespace indiff {

void MarketSequenceModel::check_index(long n) const {
  const IndexRange r = index_range();
  if (!r.contains(n)) {
    raise(ErrorKind::domain, family() + ": index n=" + std::to_string(n) +
                                 " outside the declared range [" + std::to_string(r.first) +
                                 ", " + std::to_string(r.last) + "]");
  }
}

bool verify_ra_switch(const MarketSequenceModel& model, long n, double a, double q, double tol) {
  if (q == 0.0) raise(ErrorKind::domain, "risk-aversion switch needs q != 0");
  if (!(a > 0.0)) raise(ErrorKind::domain, "risk aversion must be positive");
  if (!(tol > 0.0)) raise(ErrorKind::domain, "tolerance must be positive");
  if (!model.index_range().contains(n)) {
    raise(ErrorKind::domain, "index n=" + std::to_string(n) + " outside the declared range");
  }
  const PriceSample lhs = model.curve(n, a).sample(q);
  const PriceSample rhs = model.curve(n, 1.0).sample(a * q);
  const double se = std::hypot(lhs.std_error, rhs.std_error);
  if (se > 0.0 && tol < 3.0 * se) {
    raise(ErrorKind::domain, "tolerance below three standard errors of a Monte Carlo curve");
  }
  return std::abs(lhs.price - rhs.price) <= tol;
}

}  // namespace indiff
