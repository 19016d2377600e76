#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ffmoduli {

// Box cardinalities like q^{n(e+1)(e+2)/2} overflow 64 bits even at desk
// scale, so all counts and exact ratios ride on arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt bigint_pow(BigInt base, unsigned long long exp) {
  BigInt r = 1;
  while (exp) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

inline std::string bigint_str(const BigInt& v) { return v.str(); }

// Checked narrowing for enumeration counters.
inline std::uint64_t bigint_to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(~std::uint64_t(0)))
    throw std::overflow_error("bigint_to_u64: " + v.str() + " out of range");
  return v.convert_to<std::uint64_t>();
}

inline double bigint_to_double(const BigInt& v) { return v.convert_to<double>(); }

inline double bigrat_to_double(const BigRat& v) { return v.convert_to<double>(); }

}  // namespace ffmoduli
