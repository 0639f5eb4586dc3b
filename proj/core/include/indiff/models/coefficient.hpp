#pragma once

#include <functional>
#include <optional>
#include <string>

namespace indiff::models {

// A real function of the factor level y that remembers whether it is constant.
class Coefficient {
 public:
  Coefficient(double c);  // NOLINT(google-explicit-constructor)
  Coefficient(std::function<double(double)> fn, std::string label);

  double operator()(double y) const { return constant_ ? *constant_ : fn_(y); }
  bool is_constant() const noexcept { return constant_.has_value(); }
  double constant_value() const;
  const std::string& label() const noexcept { return label_; }

 private:
  std::function<double(double)> fn_;
  std::optional<double> constant_;
  std::string label_;
};

}  // namespace indiff::models
