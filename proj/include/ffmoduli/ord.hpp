#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Ord: an integer extended by the sentinel -infinity.
//
// Degrees of polynomials and orders of Laurent elements live here, so
// that deg(0) = ord(0) = -infinity is branch-safe: the sentinel is a
// distinct state, never a magic integer, and every comparison against
// it is total.
//////////////////////////////////////////////////////////////////////

class Ord {
 public:
  constexpr Ord() : finite_(true), v_(0) {}
  constexpr Ord(long long v) : finite_(true), v_(v) {}  // NOLINT: implicit by design

  static constexpr Ord neg_inf() {
    Ord o;
    o.finite_ = false;
    o.v_ = 0;
    return o;
  }

  constexpr bool is_neg_inf() const { return !finite_; }
  constexpr bool is_finite() const { return finite_; }

  // Finite value; asking -infinity for one is a logic error.
  constexpr long long value() const {
    if (!finite_) throw std::logic_error("Ord: value() of -infinity");
    return v_;
  }

  // -infinity absorbs addition (used for deg(a*b) = deg a + deg b).
  friend constexpr Ord operator+(Ord a, Ord b) {
    if (!a.finite_ || !b.finite_) return neg_inf();
    return Ord(a.v_ + b.v_);
  }
  friend constexpr Ord operator+(Ord a, long long b) { return a + Ord(b); }
  friend constexpr Ord operator-(Ord a, long long b) {
    if (!a.finite_) return neg_inf();
    return Ord(a.v_ - b);
  }

  friend constexpr bool operator==(Ord a, Ord b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend constexpr std::strong_ordering operator<=>(Ord a, Ord b) {
    if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
    if (!a.finite_) return std::strong_ordering::less;
    if (!b.finite_) return std::strong_ordering::greater;
    return a.v_ <=> b.v_;
  }

  std::string str() const { return finite_ ? std::to_string(v_) : "-inf"; }
  friend std::ostream& operator<<(std::ostream& os, Ord o) { return os << o.str(); }

 private:
  bool finite_;
  long long v_;
};

inline Ord ord_max(Ord a, Ord b) { return a < b ? b : a; }
inline Ord ord_min(Ord a, Ord b) { return a < b ? a : b; }

}  // namespace ffmoduli
