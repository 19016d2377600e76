#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/ord.hpp"
#include "ffmoduli/poly.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Truncated Laurent series in 1/u over F_q, with precision tracking.
//
// A LaurentNum represents an element of F_q((1/u)) whose coefficients
// at exponents >= floor() are known exactly; below the floor nothing
// is claimed. floor() == -infinity means the value is known exactly
// (hence has finite support). Every arithmetic operation computes the
// floor of its result from the floors of its inputs, and any query
// that would depend on unknown coefficients throws
// InsufficientPrecision rather than guessing.
//
// Canonical form: coeffs_[i] is the coefficient of u^(top_ - i);
// coeffs_[0] != 0; an all-zero known region is stored as an empty
// vector ("zero down to the floor"). For a finite floor the window
// always extends down to it, so size == top_ - floor + 1.
//
// The absolute value is |x| = q^(ord x) where ord is the top exponent;
// |0| = 0. ord of a value that is merely "zero down to the floor" is
// undetermined (it is at most floor - 1), and queries reflect that.
//////////////////////////////////////////////////////////////////////

class LaurentNum {
 public:
  // Exact zero.
  LaurentNum() : top_(0), floor_(Ord::neg_inf()) {}

  // "Zero as far down as we can see": all coefficients at exponents
  // >= floor are zero, below that unknown.
  static LaurentNum zero_to(long long floor) {
    LaurentNum x;
    x.floor_ = Ord(floor);
    return x;
  }

  // General constructor: coeffs_desc[i] is the coefficient of
  // u^(top - i); floor as documented above.
  static LaurentNum from_window(std::vector<FqElem> coeffs_desc, long long top, Ord floor) {
    LaurentNum x;
    x.coeffs_ = std::move(coeffs_desc);
    x.top_ = top;
    x.floor_ = floor;
    x.canonicalize();
    return x;
  }

  static LaurentNum from_poly(const Poly& p) {
    std::vector<FqElem> c(p.rbegin(), p.rend());
    return from_window(std::move(c), static_cast<long long>(p.size()) - 1, Ord::neg_inf());
  }

  static LaurentNum monomial(FqElem c, long long e) {
    return from_window({c}, e, Ord::neg_inf());
  }

  bool is_exact() const { return floor_.is_neg_inf(); }
  Ord floor() const { return floor_; }

  // Lowest stored exponent (callers: iteration over the known window).
  long long window_low() const {
    if (!floor_.is_neg_inf()) return floor_.value();
    return coeffs_.empty() ? 0 : top_ - static_cast<long long>(coeffs_.size()) + 1;
  }
  long long window_top() const { return top_; }
  bool known_zero_window() const { return coeffs_.empty(); }

  // Coefficient of u^e; throws below the floor.
  FqElem coeff_at(long long e) const {
    if (!floor_.is_neg_inf() && e < floor_.value())
      throw InsufficientPrecision("coefficient of u^" + std::to_string(e) +
                                  " is below the precision floor " + floor_.str());
    if (coeffs_.empty() || e > top_) return FqElem();
    const long long i = top_ - e;
    if (i >= static_cast<long long>(coeffs_.size())) return FqElem();
    return coeffs_[std::size_t(i)];
  }

  // ord x as an extended integer (-infinity for exact zero); throws if
  // the value is only known to be "small".
  Ord abs_exponent() const {
    if (!coeffs_.empty()) return Ord(top_);
    if (is_exact()) return Ord::neg_inf();
    throw InsufficientPrecision("norm undetermined: value is zero down to floor " + floor_.str());
  }

  bool is_zero() const {
    if (!coeffs_.empty()) return false;
    if (is_exact()) return true;
    throw InsufficientPrecision("zero test undetermined below floor " + floor_.str());
  }

  // Decide |x| < q^bound. Resolves from the known window when it can;
  // throws only when the answer genuinely depends on unknown digits.
  bool abs_less_than(long long bound) const {
    if (!coeffs_.empty()) return top_ < bound;
    if (is_exact()) return true;
    if (floor_.value() - 1 < bound) return true;  // ord <= floor-1 < bound
    throw InsufficientPrecision("|x| < q^" + std::to_string(bound) +
                                " undetermined below floor " + floor_.str());
  }

  bool in_torus() const { return abs_less_than(0); }

  // Forget everything below new_floor (no-op if already coarser).
  LaurentNum truncated_to(long long new_floor) const {
    LaurentNum x = *this;
    x.floor_ = ord_max(x.floor_, Ord(new_floor));
    x.canonicalize();
    return x;
  }

  // The exact series whose digits agree with the known window and are
  // zero below it — the canonical representative of this value's
  // precision cell. Use only where the surrounding argument shows the
  // quantity of interest is constant on that cell.
  LaurentNum cell_representative() const {
    if (is_exact()) return *this;
    return from_window(coeffs_, top_, Ord::neg_inf());
  }

  friend bool operator==(const LaurentNum& a, const LaurentNum& b) {
    if (a.floor_ != b.floor_ || a.coeffs_.size() != b.coeffs_.size()) return false;
    if (a.coeffs_.empty()) return true;
    return a.top_ == b.top_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentNum& a, const LaurentNum& b) { return !(a == b); }

  std::string str(const Field& F) const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!s.empty()) s += "+";
      const long long e = top_ - static_cast<long long>(i);
      const std::string cs = fq_str(F, coeffs_[i]);
      if (e == 0) {
        s += cs;
      } else {
        if (cs != "1") s += cs + "*";
        s += (e == 1) ? "u" : "u^" + std::to_string(e);
      }
    }
    if (s.empty()) s = "0";
    if (!is_exact()) s += "+O(u^" + std::to_string(floor_.value() - 1) + ")";
    return s;
  }

 private:
  void canonicalize() {
    // Drop leading zeros.
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      top_ -= static_cast<long long>(lead);
    }
    if (coeffs_.empty()) {
      top_ = 0;
      return;
    }
    if (is_exact()) {
      while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
      if (coeffs_.empty()) top_ = 0;
    } else {
      // Window must reach exactly down to the floor.
      const long long want = top_ - floor_.value() + 1;
      if (want <= 0) {
        coeffs_.clear();
        top_ = 0;
      } else {
        coeffs_.resize(std::size_t(want));
      }
    }
  }

  std::vector<FqElem> coeffs_;
  long long top_;
  Ord floor_;
};

//////////////////////////////////////////////////////////////////////
// Arithmetic (field passed explicitly, as for Poly).
//////////////////////////////////////////////////////////////////////

inline LaurentNum ladd(const Field& F, const LaurentNum& a, const LaurentNum& b) {
  const Ord rfloor = ord_max(a.floor(), b.floor());
  const bool a_has = !a.known_zero_window();
  const bool b_has = !b.known_zero_window();
  if (!a_has && !b_has) {
    if (rfloor.is_neg_inf()) return LaurentNum();
    return LaurentNum::zero_to(rfloor.value());
  }
  long long top;
  if (a_has && b_has) top = std::max(a.window_top(), b.window_top());
  else top = a_has ? a.window_top() : b.window_top();
  long long lo;
  if (rfloor.is_neg_inf()) {
    lo = top;
    if (a_has) lo = std::min(lo, a.window_low());
    if (b_has) lo = std::min(lo, b.window_low());
  } else {
    lo = rfloor.value();
  }
  if (lo > top) lo = top;
  std::vector<FqElem> c(std::size_t(top - lo + 1));
  for (long long e = top; e >= lo; --e)
    c[std::size_t(top - e)] = F.add(a.coeff_at(e), b.coeff_at(e));
  return LaurentNum::from_window(std::move(c), top, rfloor);
}

inline LaurentNum lneg(const Field& F, const LaurentNum& a) {
  if (a.known_zero_window()) return a;
  std::vector<FqElem> c(std::size_t(a.window_top() - a.window_low() + 1));
  for (long long e = a.window_top(); e >= a.window_low(); --e)
    c[std::size_t(a.window_top() - e)] = F.neg(a.coeff_at(e));
  return LaurentNum::from_window(std::move(c), a.window_top(), a.floor());
}

inline LaurentNum lsub(const Field& F, const LaurentNum& a, const LaurentNum& b) {
  return ladd(F, a, lneg(F, b));
}

inline LaurentNum lscale(const Field& F, const LaurentNum& a, FqElem s) {
  if (s.is_zero()) return LaurentNum();  // 0 * x == 0 exactly
  if (a.known_zero_window()) return a;
  std::vector<FqElem> c(std::size_t(a.window_top() - a.window_low() + 1));
  for (long long e = a.window_top(); e >= a.window_low(); --e)
    c[std::size_t(a.window_top() - e)] = F.mul(a.coeff_at(e), s);
  return LaurentNum::from_window(std::move(c), a.window_top(), a.floor());
}

// Multiply by u^k.
inline LaurentNum lshift(const LaurentNum& a, long long k) {
  if (a.known_zero_window()) {
    if (a.is_exact()) return a;
    return LaurentNum::zero_to(a.floor().value() + k);
  }
  std::vector<FqElem> c;
  c.reserve(std::size_t(a.window_top() - a.window_low() + 1));
  for (long long e = a.window_top(); e >= a.window_low(); --e) c.push_back(a.coeff_at(e));
  const Ord nf = a.is_exact() ? Ord::neg_inf() : Ord(a.floor().value() + k);
  return LaurentNum::from_window(std::move(c), a.window_top() + k, nf);
}

inline LaurentNum lmul(const Field& F, const LaurentNum& a, const LaurentNum& b) {
  const bool a_has = !a.known_zero_window();
  const bool b_has = !b.known_zero_window();
  // Unknown tails contribute: (known a)*(tail b), (known b)*(tail a),
  // (tail a)*(tail b); the result is valid above all three.
  Ord rfloor = Ord::neg_inf();
  if (a_has && !b.is_exact()) rfloor = ord_max(rfloor, Ord(a.window_top() + b.floor().value()));
  if (b_has && !a.is_exact()) rfloor = ord_max(rfloor, Ord(b.window_top() + a.floor().value()));
  if (!a.is_exact() && !b.is_exact())
    rfloor = ord_max(rfloor, Ord(a.floor().value() + b.floor().value() - 1));
  if (!a_has || !b_has) {
    // Known part of the product is zero.
    if (rfloor.is_neg_inf()) return LaurentNum();
    return LaurentNum::zero_to(rfloor.value());
  }
  const long long top = a.window_top() + b.window_top();
  const long long lo_full = a.window_low() + b.window_low();
  const long long lo = rfloor.is_neg_inf() ? lo_full : std::max(lo_full, rfloor.value());
  if (lo > top) {
    if (rfloor.is_neg_inf()) return LaurentNum();
    return LaurentNum::zero_to(rfloor.value());
  }
  std::vector<FqElem> c(std::size_t(top - lo + 1));
  for (long long ea = a.window_top(); ea >= a.window_low(); --ea) {
    const FqElem ca = a.coeff_at(ea);
    if (ca.is_zero()) continue;
    for (long long eb = b.window_top(); eb >= b.window_low(); --eb) {
      const long long e = ea + eb;
      if (e < lo) break;
      const FqElem cb = b.coeff_at(eb);
      if (cb.is_zero()) continue;
      auto& slot = c[std::size_t(top - e)];
      slot = F.add(slot, F.mul(ca, cb));
    }
  }
  return LaurentNum::from_window(std::move(c), top, rfloor);
}

// Reciprocal, with coefficients produced down to exponent prec_floor.
// The result's floor also accounts for the divisor's own precision: if
// x is known above f and ord x = t, 1/x is determined above f - 2t.
inline LaurentNum linv_to(const Field& F, const LaurentNum& a, long long prec_floor) {
  if (a.known_zero_window()) {
    if (a.is_exact()) throw DivisionByZero();
    throw InsufficientPrecision("divisor is zero down to floor " + a.floor().str() +
                                "; cannot invert");
  }
  const long long t = a.window_top();
  const FqElem lead_inv = F.inv(a.coeff_at(t));
  // Exact monomial: exact reciprocal.
  if (a.is_exact() && a.window_low() == t) return LaurentNum::monomial(lead_inv, -t);
  Ord rfloor = Ord(prec_floor);
  if (!a.is_exact()) rfloor = ord_max(rfloor, Ord(a.floor().value() - 2 * t));
  const long long lo = rfloor.value();  // finite: prec_floor is finite
  if (-t < lo) return LaurentNum::zero_to(lo);
  // Relative series a = c*u^t*(1 + r), r_m the coefficient of u^-m.
  // s = 1/(1+r): s_0 = 1, s_m = -sum_{i=1..m} r_i s_{m-i}.
  const long long depth = -t - lo;  // result exponent of s_m is -t-m >= lo
  std::vector<FqElem> r(std::size_t(depth) + 1), s(std::size_t(depth) + 1);
  for (long long m = 1; m <= depth; ++m) {
    // coeff of u^(t-m) in a, normalized by the leading coefficient;
    // below a's floor these digits cannot matter (rfloor caps depth).
    const FqElem am = (!a.is_exact() && t - m < a.floor().value()) ? FqElem() : a.coeff_at(t - m);
    r[std::size_t(m)] = F.mul(am, lead_inv);
  }
  s[0] = F.one();
  for (long long m = 1; m <= depth; ++m) {
    FqElem acc;
    for (long long i = 1; i <= m; ++i)
      acc = F.add(acc, F.mul(r[std::size_t(i)], s[std::size_t(m - i)]));
    s[std::size_t(m)] = F.neg(acc);
  }
  std::vector<FqElem> c(std::size_t(depth) + 1);
  for (long long m = 0; m <= depth; ++m) c[std::size_t(m)] = F.mul(s[std::size_t(m)], lead_inv);
  return LaurentNum::from_window(std::move(c), -t, rfloor);
}

inline LaurentNum ldiv_to(const Field& F, const LaurentNum& a, const LaurentNum& b,
                          long long prec_floor) {
  // Ask the reciprocal for enough digits that the product reaches
  // prec_floor even after multiplying by a's top exponent.
  long long shift = 0;
  if (!a.known_zero_window()) shift = a.window_top();
  return lmul(F, a, linv_to(F, b, prec_floor - shift));
}

// Fractional part: keep only exponents <= -1. Precision is unchanged.
inline LaurentNum lfrac(const LaurentNum& a) {
  if (a.known_zero_window()) return a;
  const long long top = std::min(a.window_top(), -1LL);
  if (!a.is_exact() && top < a.floor().value()) return LaurentNum::zero_to(a.floor().value());
  std::vector<FqElem> c;
  if (top >= a.window_low() || a.is_exact()) {
    const long long lo = a.is_exact() ? std::min(a.window_low(), top) : a.window_low();
    for (long long e = top; e >= lo; --e) c.push_back(a.coeff_at(e));
  }
  return LaurentNum::from_window(std::move(c), top, a.floor());
}

// Integer (polynomial) part: every coefficient at exponents >= 0.
inline Poly lint_part(const LaurentNum& a) {
  if (!a.is_exact() && a.floor().value() > 0)
    throw InsufficientPrecision("integer part needs coefficients down to u^0, floor is " +
                                a.floor().str());
  if (a.known_zero_window() || a.window_top() < 0) return Poly{};
  Poly p(std::size_t(a.window_top()) + 1);
  for (long long e = a.window_top(); e >= 0; --e) p[std::size_t(e)] = a.coeff_at(e);
  ptrim(p);
  return p;
}

// ||x|| = |{x}|, the distance to the nearest polynomial, as a strict
// comparison: decide ||x|| < q^bound.
inline bool dist_less_than(const LaurentNum& a, long long bound) {
  return lfrac(a).abs_less_than(bound);
}

//////////////////////////////////////////////////////////////////////
// Expansion of a polynomial ratio a/g in F_q((1/u)), down to a target
// exponent. Detects exact division (remainder 0) and returns an exact
// value in that case.
//////////////////////////////////////////////////////////////////////

inline LaurentNum poly_quotient_expand(const Field& F, const Poly& a, const Poly& g,
                                       long long floor) {
  if (pis_zero(g)) throw DivisionByZero();
  if (pis_zero(a)) return LaurentNum();
  const long long da = pdeg(a).value();
  const long long dg = pdeg(g).value();
  const FqElem glead_inv = F.inv(plead(g));
  const long long qtop = da - dg;
  if (qtop < floor) {
    // Entire quotient lies below the requested window; all we can say
    // is that it is zero down to the floor (the true expansion starts
    // at u^qtop < u^floor).
    return LaurentNum::zero_to(floor);
  }
  // Remainder window over exponents [floor, da]; rem[i] = coeff of
  // u^(floor + i). Dividend coefficients below the window can never
  // influence quotient digits >= floor, but they do make the division
  // inexact as far as we can tell.
  const std::size_t width = std::size_t(da - floor + 1);
  std::vector<FqElem> rem(width);
  bool dropped_low = false;
  for (long long e = 0; e <= da; ++e) {
    if (e >= floor) rem[std::size_t(e - floor)] = pcoeff(a, e);
    else if (!pcoeff(a, e).is_zero()) dropped_low = true;
  }
  std::vector<FqElem> quot(std::size_t(qtop - floor + 1));  // quot[i]: coeff of u^(qtop - i)
  for (long long tq = qtop; tq >= floor; --tq) {
    const FqElem c = F.mul(rem[std::size_t(tq + dg - floor)], glead_inv);
    quot[std::size_t(qtop - tq)] = c;
    if (c.is_zero()) continue;
    for (long long j = 0; j <= dg; ++j) {
      const long long e = tq + j;
      if (e < floor) continue;
      auto& slot = rem[std::size_t(e - floor)];
      slot = F.sub(slot, F.mul(c, pcoeff(g, j)));
    }
  }
  bool rem_zero = !dropped_low;
  if (rem_zero)
    for (const auto& c : rem)
      if (!c.is_zero()) {
        rem_zero = false;
        break;
      }
  // If the whole remainder vanished, a == g * quot exactly.
  return LaurentNum::from_window(std::move(quot), qtop,
                                 rem_zero ? Ord::neg_inf() : Ord(floor));
}

}  // namespace ffmoduli
