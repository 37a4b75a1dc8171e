#pragma once

#include <stdexcept>

namespace memopt {

/// A switching task that no admissible protocol can satisfy (e.g. the compliance
/// bound cannot move enough charge in the allotted time, or a shooting target is
/// unreachable). Distinct from parameter validation errors (std::domain_error /
/// std::invalid_argument) and from numerical breakdowns (numerical_error).
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative method failed: lost bracket, no convergence, or a quantity left
/// its mathematically required range during evaluation.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace memopt
