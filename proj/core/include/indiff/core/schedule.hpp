#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>

namespace indiff {

// Inclusive range of market indices on which a model or schedule is declared.
struct IndexRange {
  long first = 1;
  long last = std::numeric_limits<long>::max();

  bool contains(long n) const noexcept { return n >= first && n <= last; }
};

// Real-valued sequence n -> x_n with no sign restriction (p̃ⁿ, dₙ, endowments).
class Sequence {
 public:
  using Fn = std::function<double(long)>;

  Sequence() : Sequence(0.0) {}
  Sequence(double constant);  // NOLINT(google-explicit-constructor)
  Sequence(Fn fn, std::string label);

  double operator()(long n) const;
  const std::string& label() const noexcept { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

namespace detail {

void check_positive(double value, long n, const char* what);

template <class Tag>
class PositiveSchedule {
 public:
  using Fn = std::function<double(long)>;

  PositiveSchedule(Fn fn, std::string label) : fn_(std::move(fn)), label_(std::move(label)) {}

  static PositiveSchedule constant(double c) {
    check_positive(c, 0, Tag::name);
    return PositiveSchedule([c](long) { return c; }, std::to_string(c));
  }

  double operator()(long n) const {
    const double v = fn_(n);
    check_positive(v, n, Tag::name);
    return v;
  }

  const std::string& label() const noexcept { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

struct RateTag {
  static constexpr const char* name = "rate schedule";
};
struct RiskAversionTag {
  static constexpr const char* name = "risk-aversion schedule";
};

}  // namespace detail

// n -> rₙ > 0, the scale at which optimal positions grow.
using RateSchedule = detail::PositiveSchedule<detail::RateTag>;
// n -> aₙ > 0.
using RiskAversionSchedule = detail::PositiveSchedule<detail::RiskAversionTag>;

struct Schedules {
  RiskAversionSchedule risk_aversion;
  RateSchedule rate;
};

// Throws a domain error if r is decreasing somewhere along the (sorted) index list.
void check_non_decreasing(const RateSchedule& r, std::span<const long> n_list);

// Throws a domain error unless the list is strictly increasing and non-empty.
void check_index_list(std::span<const long> n_list);

}  // namespace indiff
