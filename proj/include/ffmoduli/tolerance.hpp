#pragma once

//////////////////////////////////////////////////////////////////////
// tolerance.hpp
//
// The single numeric tolerance used by every inequality check that
// has to leave exact arithmetic (magnitudes of cyclotomic sums,
// fractional-power bounds). Exact integer comparisons never consult
// it. A bound that sits within tolerance of equality is a pass.
//////////////////////////////////////////////////////////////////////

#include <algorithm>
#include <cmath>

namespace ffmoduli {

inline constexpr long double kRelTol = 1e-9L;

// lhs <= rhs up to relative tolerance on the larger magnitude.
inline bool leq_rel_tol(long double lhs, long double rhs) {
  const long double scale =
      std::max({std::fabs(lhs), std::fabs(rhs), (long double)(1)});
  return lhs <= rhs + kRelTol * scale;
}

// |a - b| within relative tolerance.
inline bool eq_rel_tol(long double a, long double b) {
  return leq_rel_tol(a, b) && leq_rel_tol(b, a);
}

}  // namespace ffmoduli
