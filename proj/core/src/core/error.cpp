#include "indiff/core/error.hpp"

namespace indiff {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::unbounded_objective: return "unbounded objective";
    case ErrorKind::ode_blow_up: return "ODE blow-up";
    case ErrorKind::positivity_lost: return "positivity lost";
    case ErrorKind::s_table_failed: return "S-table construction failed";
    case ErrorKind::pde_step_failure: return "PDE step failure";
    case ErrorKind::model_assumption_violated: return "model assumption violated";
    case ErrorKind::quadrature_unavailable: return "quadrature unavailable";
    case ErrorKind::price_not_arbitrage_free: return "price not arbitrage-free";
    case ErrorKind::no_interior_optimum: return "no interior optimum";
    case ErrorKind::price_outside_sellable_range: return "price outside sellable range";
    case ErrorKind::ell_outside_domain: return "ell outside effective domain";
    case ErrorKind::non_unique_limit: return "non-unique limit candidates";
    case ErrorKind::non_unique_equilibrium: return "non-unique equilibrium";
    case ErrorKind::config: return "config error";
    case ErrorKind::io: return "I/O error";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace indiff
