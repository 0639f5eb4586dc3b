#pragma once

#include <functional>

namespace indiff::numerics {

struct Bracket {
  double lo = 0.0;
  double hi = 1.0;
};

// Which ends of the hint may move while searching for a bracket. With a fixed end the
// search contracts toward it when the minimum sits between the fixed end and the midpoint.
enum class Expansion { both, upper_only, lower_only };

struct MinimizeOptions {
  Expansion expansion = Expansion::both;
  int max_doublings = 64;
  bool polish = true;  // parabolic refinement inside the certified bracket
};

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
  Bracket bracket;  // final bracket; contains the argmin for unimodal f
  int evaluations = 0;
  int expansions = 0;
  double tol_achieved = 0.0;
};

// Golden-section search after geometric bracket expansion (factor 2).
// Throws unbounded_objective when no bracket is found within the expansion cap.
MinimizeResult minimize_unimodal(const std::function<double(double)>& f, Bracket hint, double tol,
                                 const MinimizeOptions& options = {});

}  // namespace indiff::numerics
