#include "indiff/core/schedule.hpp"

#include <cmath>
#include <sstream>

#include "indiff/core/error.hpp"

namespace indiff {

Sequence::Sequence(double constant)
    : fn_([constant](long) { return constant; }), label_(std::to_string(constant)) {}

Sequence::Sequence(Fn fn, std::string label) : fn_(std::move(fn)), label_(std::move(label)) {}

double Sequence::operator()(long n) const {
  const double v = fn_(n);
  if (!std::isfinite(v)) {
    raise(ErrorKind::domain, "sequence '" + label_ + "' is not finite at n=" + std::to_string(n));
  }
  return v;
}

namespace detail {

void check_positive(double value, long n, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << what << " must be finite and positive, got " << value << " at n=" << n;
    raise(ErrorKind::domain, os.str());
  }
}

}  // namespace detail

void check_index_list(std::span<const long> n_list) {
  if (n_list.empty()) raise(ErrorKind::domain, "index list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) raise(ErrorKind::domain, "market indices must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      raise(ErrorKind::domain, "index list must be strictly increasing");
    }
  }
}

void check_non_decreasing(const RateSchedule& r, std::span<const long> n_list) {
  double prev = 0.0;
  for (long n : n_list) {
    const double v = r(n);
    if (v < prev) {
      raise(ErrorKind::domain, "rate schedule decreases at n=" + std::to_string(n));
    }
    prev = v;
  }
}

}  // namespace indiff
