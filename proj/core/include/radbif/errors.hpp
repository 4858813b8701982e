#pragma once

#include <stdexcept>
#include <string>

namespace radbif {

// Argument outside the mathematical domain of a function (non-finite input,
// s <= -1 for the rescaled time map, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// State violates 1 + sqrt(lambda) * w > 0.
class AdmissibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid construction parameter (R <= 0, s0 outside ]-1,0[, k < 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A target value outside the range of a monotone map.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Iterative procedure (zero finder, quadrature, eigensolver) did not converge.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trajectory whose nodal structure cannot be classified (tangential zero,
// non-monotone piece between critical points).
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root of the boundary condition could not be bracketed.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace radbif
