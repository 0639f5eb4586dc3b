#pragma once

#include <string>

#include "indiff/core/price_curve.hpp"
#include "indiff/core/schedule.hpp"

namespace indiff {

// A sequence of markets n = 1, 2, ... with a claim B priced by exponential utility.
class MarketSequenceModel {
 public:
  virtual ~MarketSequenceModel() = default;

  virtual PriceCurve curve(long n, double a) const = 0;
  virtual IndexRange index_range() const = 0;
  virtual RateSchedule default_rate() const = 0;
  virtual RiskAversionSchedule default_risk_aversion() const = 0;
  virtual std::string family() const = 0;

  Schedules default_schedules() const { return {default_risk_aversion(), default_rate()}; }

 protected:
  void check_index(long n) const;
};

// pⁿ_a(q) == pⁿ_1(a q): prices depend on (a, q) through the product only.
bool verify_ra_switch(const MarketSequenceModel& model, long n, double a, double q, double tol);

}  // namespace indiff
