#pragma once

#include <cstdlib>
#include <string>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/errors.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Work budget guard. Exhaustive enumerations estimate their box and
// grid sizes up front and refuse to start when the estimate exceeds
// the limit, so a typo'd config fails fast instead of running for
// hours. FFMODULI_BUDGET_OVERRIDE (a decimal integer) raises or lowers
// both limits.
//////////////////////////////////////////////////////////////////////

class Budget {
 public:
  static constexpr std::uint64_t kDefault = std::uint64_t(1) << 34;

  Budget() : box_limit_(kDefault), grid_limit_(kDefault) { apply_env_override(); }
  Budget(BigInt box_limit, BigInt grid_limit)
      : box_limit_(std::move(box_limit)), grid_limit_(std::move(grid_limit)) {
    apply_env_override();
  }

  const BigInt& box_limit() const { return box_limit_; }
  const BigInt& grid_limit() const { return grid_limit_; }

  void check_box(const BigInt& work, const std::string& where) const {
    if (work > box_limit_)
      throw BudgetExceeded(where + ": box work " + bigint_str(work) + " > limit " +
                           bigint_str(box_limit_));
  }
  void check_grid(const BigInt& work, const std::string& where) const {
    if (work > grid_limit_)
      throw BudgetExceeded(where + ": grid work " + bigint_str(work) + " > limit " +
                           bigint_str(grid_limit_));
  }

 private:
  void apply_env_override() {
    if (const char* env = std::getenv("FFMODULI_BUDGET_OVERRIDE")) {
      BigInt v(env);
      box_limit_ = v;
      grid_limit_ = v;
    }
  }

  BigInt box_limit_;
  BigInt grid_limit_;
};

}  // namespace ffmoduli
