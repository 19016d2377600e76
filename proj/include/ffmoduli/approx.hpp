#pragma once

//////////////////////////////////////////////////////////////////////
// Rational approximation in the completion F_q((1/u)) and membership
// in the neighbourhoods of rationals ("arcs") that drive the
// bound-or-structure dichotomy for the bilinear exponential sums.
//
// Everything runs through the continued-fraction expansion of a
// Laurent number: the chain of convergents p_i/q_i produced by
// the Euclidean algorithm on (u^depth, truncation of alpha). Working
// with the truncation is transparent because two numbers that agree
// on their first 2m+1 fractional digits share every convergent whose
// denominator has degree at most m.
//
// Checkable facts implemented below:
//   * rational_approx(alpha, m) returns a coprime pair (a, g), g
//     monic, deg g <= m, with |g*alpha - a| < q^(-m). Among all
//     denominators of degree <= m the convergent minimizes the
//     distance ||g*alpha|| (best-approximation property); the tests
//     verify this against exhaustive search.
//   * major_arc_test(alpha, params) decides whether some coprime
//     (a, g) with g monic, 0 < |g| <= q^((d-1)(J-1)) puts alpha
//     within q^(-d1*P1-d2*P2+(d-1)*J) / |g| of a/g. A witness exists
//     iff a convergent of alpha is one, because the largest
//     convergent denominator of degree <= deg g satisfies
//     ||q_i*alpha|| <= ||g*alpha||.
//   * Membership is constant on precision cells of depth
//     (d-1)(J-1) - T, where T is the threshold exponent above: for g
//     of degree at most G and |alpha - alpha'| <= q^(-(G-T)-1) we get
//     |g*(alpha - alpha')| < q^T, so the witness transfers. Windowed
//     inputs of at least that depth are decided via their cell
//     representative; shallower windows raise a precision error.
//   * For J at least (d1*P1 + d2*P2 + d - 1) / (2(d-1)) every point
//     of the torus is a member (the polynomial Dirichlet theorem);
//     dirichlet_threshold() returns the least such integer J and the
//     grid sweep lets the tests confirm the full-measure statement.
//////////////////////////////////////////////////////////////////////

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ffmoduli/bilinear.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/laurent.hpp"
#include "ffmoduli/poly.hpp"

namespace ffmoduli {

namespace detail {

struct Convergent {
  Poly a;  // numerator, deg a < deg g for torus inputs
  Poly g;  // denominator, normalized monic
};

// Convergents of alpha computed from its truncation to `depth`
// fractional digits, kept while deg g <= deg_cap. The list always
// starts with (0, 1). Requires the first `depth` fractional
// coefficients of alpha to be known (exact inputs always qualify).
inline std::vector<Convergent> convergent_chain(const Field& F, const LaurentNum& alpha,
                                                long long depth, long long deg_cap) {
  if (depth < 1) throw ParameterContract("convergent_chain: depth must be >= 1");
  if (deg_cap < 0) throw ParameterContract("convergent_chain: degree cap must be >= 0");

  // N = alpha * u^depth truncated to its polynomial part, D = u^depth.
  Poly N(static_cast<std::size_t>(depth));
  for (long long i = 0; i < depth; ++i)
    N[static_cast<std::size_t>(i)] = alpha.coeff_at(i - depth);
  ptrim(N);
  const Poly D = pmonomial(F, F.one(), static_cast<std::size_t>(depth));

  std::vector<Convergent> out;
  out.push_back(Convergent{Poly{}, Poly{F.one()}});

  // Recurrence state: (p, q) of the previous two convergents, raw
  // (not yet scaled monic). Seeds: index -1 -> (1, 0), index 0 -> (0, 1).
  Poly p_prev2 = Poly{F.one()}, q_prev2 = Poly{};
  Poly p_prev = Poly{}, q_prev = Poly{F.one()};

  Poly A = D, B = N;
  while (!pis_zero(B)) {
    const Poly quot = pquot(F, A, B);
    Poly rem = pmod(F, A, B);
    A = std::move(B);
    B = std::move(rem);

    Poly p_cur = padd(F, pmul(F, quot, p_prev), p_prev2);
    Poly q_cur = padd(F, pmul(F, quot, q_prev), q_prev2);
    if (pdeg(q_cur).value() > deg_cap) break;

    Convergent c{p_cur, q_cur};
    const FqElem lead = plead(c.g);
    if (!(lead == F.one())) {
      const FqElem s = F.inv(lead);
      c.a = pscale(F, c.a, s);
      c.g = pscale(F, c.g, s);
    }
    out.push_back(std::move(c));

    p_prev2 = std::move(p_prev);
    q_prev2 = std::move(q_prev);
    p_prev = std::move(p_cur);
    q_prev = std::move(q_cur);
  }
  return out;
}

}  // namespace detail

//////////////////////////////////////////////////////////////////////
// Rational approximation at level m.
//////////////////////////////////////////////////////////////////////

struct RationalApprox {
  Poly a;               // numerator, coprime to g
  Poly g;               // monic denominator, deg g <= m
  LaurentNum residual;  // g*alpha - a, of absolute value < q^(-m)
};

// Best rational approximation with denominator degree at most m:
// returns monic g, gcd(a, g) = 1, |g*alpha - a| < q^(-m). Needs the
// first 2m+1 fractional digits of alpha.
inline RationalApprox rational_approx(const Field& F, const LaurentNum& alpha, int m) {
  if (m < 0) throw ParameterContract("rational_approx: level m must be >= 0");
  if (!alpha.in_torus())
    throw ParameterContract("rational_approx: alpha must lie in the torus");
  const long long depth = 2LL * m + 1;
  if (!alpha.is_exact() && alpha.floor().value() > -depth)
    throw InsufficientPrecision(
        "rational approximation at level " + std::to_string(m) +
        " needs coefficients down to u^-" + std::to_string(depth) +
        ", window floor is " + alpha.floor().str());

  const auto chain = detail::convergent_chain(F, alpha, depth, m);
  const detail::Convergent& best = chain.back();

  RationalApprox r{best.a, best.g,
                   lsub(F, lmul(F, LaurentNum::from_poly(best.g), alpha),
                        LaurentNum::from_poly(best.a))};
  // Invariants guaranteed by the convergent recurrence; they cannot
  // fail unless the chain itself is wrong.
  if (!r.residual.abs_less_than(-m))
    throw std::logic_error("rational_approx: residual not below q^-m");
  if (!(pgcd_monic(F, r.a, r.g) == Poly{F.one()}) && !pis_zero(r.a))
    throw std::logic_error("rational_approx: convergent not coprime");
  return r;
}

//////////////////////////////////////////////////////////////////////
// Arc membership.
//////////////////////////////////////////////////////////////////////

struct ArcMembership {
  bool member = false;
  Poly a, g;              // witness (coprime, g monic) when member
  long long g_degree_cap = 0;  // (d-1)(J-1)
  long long threshold = 0;     // T: witness satisfies |g*alpha - a| < q^T
  long long cell_depth = 0;    // membership constant on cells this deep
};

// Degree cap for arc denominators at level J.
inline long long arc_degree_cap(const ArcParams& ap) {
  if (ap.d() < 2) throw ParameterContract("arc parameters need total degree >= 2");
  return static_cast<long long>(ap.d() - 1) * (ap.J - 1);
}

// Threshold exponent: alpha is on the arc at level J iff some
// admissible (a, g) has |g*alpha - a| < q^T with this T.
inline long long arc_threshold(const ArcParams& ap) {
  if (ap.d() < 2) throw ParameterContract("arc parameters need total degree >= 2");
  return -static_cast<long long>(ap.d1) * ap.P1 - static_cast<long long>(ap.d2) * ap.P2 +
         static_cast<long long>(ap.d() - 1) * ap.J;
}

// Least J for which the arcs cover the whole torus (polynomial
// Dirichlet approximation).
inline int dirichlet_threshold(const ArcParams& ap) {
  if (ap.d() < 2) throw ParameterContract("arc parameters need total degree >= 2");
  const long long num = static_cast<long long>(ap.d1) * ap.P1 +
                        static_cast<long long>(ap.d2) * ap.P2 + ap.d() - 1;
  const long long den = 2LL * (ap.d() - 1);
  return static_cast<int>((num + den - 1) / den);
}

// Decide whether alpha lies within q^T / |g| of some reduced fraction
// a/g with g monic of degree <= (d-1)(J-1). Implemented by checking
// every convergent of alpha under the degree cap: if any admissible
// pair works, so does the largest convergent denominator of no larger
// degree, since convergents minimize ||g*alpha|| degree-by-degree.
inline ArcMembership major_arc_test(const Field& F, const LaurentNum& alpha,
                                    const ArcParams& ap) {
  if (!alpha.in_torus())
    throw ParameterContract("major_arc_test: alpha must lie in the torus");
  const long long cap = arc_degree_cap(ap);
  const long long T = arc_threshold(ap);
  const long long cell_depth = std::max(0LL, cap - T);

  LaurentNum a_use = alpha;
  if (!alpha.is_exact()) {
    const long long have = -alpha.floor().value();
    if (have < cell_depth)
      throw InsufficientPrecision(
          "arc membership at J=" + std::to_string(ap.J) + " needs the first " +
          std::to_string(cell_depth) + " fractional digits, window floor is " +
          alpha.floor().str());
    // Membership is constant on the precision cell, so the canonical
    // representative decides it for the whole window.
    a_use = alpha.cell_representative();
  }

  ArcMembership r;
  r.g_degree_cap = cap;
  r.threshold = T;
  r.cell_depth = cell_depth;

  const auto chain = detail::convergent_chain(F, a_use, 2 * cap + 1, cap);
  for (const auto& c : chain) {
    const LaurentNum residual = lsub(
        F, lmul(F, LaurentNum::from_poly(c.g), a_use), LaurentNum::from_poly(c.a));
    if (residual.abs_less_than(T)) {
      r.member = true;
      r.a = c.a;
      r.g = c.g;
      return r;
    }
  }
  return r;
}

//////////////////////////////////////////////////////////////////////
// Exact sweep of the arc set over a digit grid. Cells of depth
// `digits` are represented by their canonical exact point; when
// digits >= cell_depth the count is the exact measure of the arc set
// times q^digits.
//////////////////////////////////////////////////////////////////////

struct ArcGridSweep {
  BigInt points = 0;
  BigInt members = 0;
  long long digits = 0;
};

inline ArcGridSweep major_arc_grid_sweep(const Field& F, const ArcParams& ap,
                                         long long digits, const Budget& budget = Budget()) {
  if (digits < 1) throw ParameterContract("major_arc_grid_sweep: digits must be >= 1");
  const BigInt total = bigint_pow(BigInt(F.q()), static_cast<unsigned long long>(digits));
  budget.check_grid(total, "major_arc_grid_sweep");

  ArcGridSweep sweep;
  sweep.points = total;
  sweep.digits = digits;
  const std::uint64_t n = bigint_to_u64(total);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    // Digit m of idx (base q) is the coefficient of u^-(m+1).
    std::vector<FqElem> window(static_cast<std::size_t>(digits));
    std::uint64_t rest = idx;
    for (long long mdig = 0; mdig < digits; ++mdig) {
      window[static_cast<std::size_t>(digits - 1 - mdig)] =
          F.at(rest % F.q());
      rest /= F.q();
    }
    const LaurentNum alpha = LaurentNum::from_window(std::move(window), -1, Ord::neg_inf());
    if (major_arc_test(F, alpha, ap).member) sweep.members += 1;
  }
  return sweep;
}

}  // namespace ffmoduli
