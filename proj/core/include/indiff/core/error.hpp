#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace indiff {

enum class ErrorKind {
  domain,
  unbounded_objective,
  ode_blow_up,
  positivity_lost,
  s_table_failed,
  pde_step_failure,
  model_assumption_violated,
  quadrature_unavailable,
  price_not_arbitrage_free,
  no_interior_optimum,
  price_outside_sellable_range,
  ell_outside_domain,
  non_unique_limit,
  non_unique_equilibrium,
  config,
  io,
};

std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace indiff
