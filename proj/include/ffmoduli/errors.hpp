#pragma once

#include <stdexcept>
#include <string>

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Failure vocabulary. Every throwing site in the library uses one of
// these types, so callers (tests, CLI) can match on the condition and
// the message prefix is stable across the codebase.
//////////////////////////////////////////////////////////////////////

// A query asked for a Laurent coefficient (or a decision depending on
// one) below the tracked precision floor.
struct InsufficientPrecision : std::runtime_error {
  explicit InsufficientPrecision(const std::string& detail)
      : std::runtime_error("insufficient precision: " + detail) {}
};

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Symmetrizing a degree-d form needs d! invertible mod p.
struct CharTooSmall : std::domain_error {
  explicit CharTooSmall(const std::string& detail)
      : std::domain_error("characteristic too small for symmetrization: " + detail) {}
};

// An enumeration would exceed the configured work budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& detail)
      : std::runtime_error("budget exceeded: " + detail) {}
};

// Caller-supplied parameters violate a documented precondition.
struct ParameterContract : std::invalid_argument {
  explicit ParameterContract(const std::string& detail)
      : std::invalid_argument("parameter contract violated: " + detail) {}
};

// A built-in cross-check of a character-sum identity failed; this is a
// bug, not bad input.
struct OrthogonalityViolated : std::logic_error {
  explicit OrthogonalityViolated(const std::string& detail)
      : std::logic_error("internal error: orthogonality violated: " + detail) {}
};

// The point-count growth exponent did not settle over consecutive
// field extensions within the allowed range.
struct DimNotStabilized : std::runtime_error {
  explicit DimNotStabilized(const std::string& detail)
      : std::runtime_error("dimension estimate did not stabilize: " + detail) {}
};

}  // namespace ffmoduli
