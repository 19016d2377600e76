#pragma once
////////////////////////////////////////////////////////////////////////////////
// smallchar.hpp
//
// Small-characteristic degeneration of the Fermat coefficient system.
//
// For the Fermat form f = x_1^d + ... + x_n^d the coefficient form F_{e+1}
// attached to degree-e substitutions is, coordinate by coordinate,
//
//   F_{e+1} = sum_i  H(g_{i,0}, ..., g_{i,e}),
//   H(z_0..z_e) = sum over exponent vectors (r_0..r_e) with
//                 r_0 + ... + r_e = d  and  1*r_1 + 2*r_2 + ... + e*r_e = e+1
//                 of  d! / (r_0! r_1! ... r_e!) * z_0^{r_0} ... z_e^{r_e}.
//
// When d = (e+1)! * p + 1 every multinomial coefficient above is divisible by
// p, so F_{e+1} is the *zero polynomial* in characteristic p even though the
// Fermat hypersurface of that degree is smooth (p does not divide d).  One
// defining equation of the morphism space evaporates, and the naive dimension
// count gains a full degree of freedom.
//
// This header certifies that collapse by two independent routes and insists
// they agree:
//
//   Route 1 (direct expansion).  Enumerate the weight-(e+1) slot multisets
//   {s_1 <= ... <= s_d}, take each ordered-rearrangement count (an exact
//   integer), and accumulate the expansion into an exponent-vector map over
//   Z/p for a two-coordinate workspace.  Distinct multisets hit distinct
//   monomials and the two coordinate blocks never collide, so the polynomial
//   vanishes iff every accumulated residue is zero.  (Vanishing is manifestly
//   independent of the number of coordinates: the coefficient attached to a
//   monomial is the same per-coordinate multinomial for every i.)
//
//   Route 2 (valuation of the binomial chain).  Each multinomial factors as
//   the chain  C(d, r_e) C(d - r_e, r_{e-1}) ... C(d - r_e - ... - r_2, r_1),
//   and the chain product is checked exactly against the rearrangement count.
//   The numerator intervals of the chain factors tile (r_0, d], and because
//   the slot weights are <= e while the total weight is e+1, at least two
//   slots above zero are occupied; hence d-1 lies inside exactly one factor's
//   numerator  m (m-1) ... (m-r+1).  For the standard degree
//   d = (e+1)! p + 1 that factor is divisible by p, since
//   v_p(d-1) = v_p((e+1)!) + 1 > v_p(r!) for every r <= e+1.  The head factor
//   C(d, e+1) of the all-weight-in-slot-one term is additionally certified by
//   Kummer's theorem: its p-adic valuation equals the number of carries when
//   adding e+1 and d-e-1 in base p, and that count is cross-checked against
//   the Legendre factorial valuation and against exact divisibility of the
//   integer itself.
//
// The two routes see the same list of exponent vectors through different
// arithmetic (factorial ratios mod p vs. per-factor p-adic valuations); any
// mismatch throws instead of being smoothed over.
//
// A degree override exists so that degrees *not* of the distinguished shape
// can serve as controls: for (d, p, e) = (3, 5, 1) the single coefficient is
// C(3,2) = 3, a unit mod 5, and the report comes back non-vanishing.
////////////////////////////////////////////////////////////////////////////////

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "forms.hpp"

namespace ffmoduli {

namespace detail {

//////////////////////////////////////////////////////////////////////////////
// Exact binomial coefficient C(n, k) as a big integer.
//////////////////////////////////////////////////////////////////////////////
inline BigInt binomial_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out *= BigInt(n - k + i);
    out /= BigInt(i);  // exact: the running product of j consecutive integers
                       // is divisible by j!
  }
  return out;
}

//////////////////////////////////////////////////////////////////////////////
// Legendre's formula: v_p(m!) = sum_{i>=1} floor(m / p^i).
//////////////////////////////////////////////////////////////////////////////
inline unsigned padic_val_factorial(std::uint64_t m, std::uint32_t p) {
  unsigned v = 0;
  while (m > 0) {
    m /= p;
    v += unsigned(m);
  }
  return v;
}

//////////////////////////////////////////////////////////////////////////////
// p-adic valuation of a nonzero big integer by repeated division.
//////////////////////////////////////////////////////////////////////////////
inline unsigned padic_val(BigInt v, std::uint32_t p) {
  if (v == 0) throw std::invalid_argument("padic_val: zero input");
  if (v < 0) v = -v;
  unsigned out = 0;
  while (v % p == 0) {
    v /= p;
    ++out;
  }
  return out;
}

//////////////////////////////////////////////////////////////////////////////
// Kummer's theorem: v_p(C(a+b, a)) equals the number of carries when adding
// a and b in base p.
//////////////////////////////////////////////////////////////////////////////
inline unsigned binomial_val_by_carries(std::uint64_t a, std::uint64_t b,
                                        std::uint32_t p) {
  unsigned carries = 0;
  std::uint64_t carry = 0;
  while (a > 0 || b > 0 || carry > 0) {
    const std::uint64_t s = a % p + b % p + carry;
    carry = s >= p ? 1 : 0;
    carries += unsigned(carry);
    a /= p;
    b /= p;
  }
  return carries;
}

}  // namespace detail

//////////////////////////////////////////////////////////////////////////////
// One factor C(top, repeat) of the binomial chain of a multinomial
// coefficient.  `slot` is the slot index whose multiplicity it consumes;
// the numerator of the factor is top * (top-1) * ... * (top-repeat+1).
//////////////////////////////////////////////////////////////////////////////
struct ChainFactor {
  unsigned slot = 0;
  std::uint64_t top = 0;
  unsigned repeat = 0;
  BigInt value;
  bool contains_dm1 = false;  // d-1 lies in the numerator interval
  bool vanishes_mod_p = false;
};

//////////////////////////////////////////////////////////////////////////////
// One monomial of H: exponents (r_0..r_e), its exact multinomial coefficient,
// and what both certification routes concluded about it.
//////////////////////////////////////////////////////////////////////////////
struct FermatTerm {
  std::vector<unsigned> exponents;  // r_s for s = 0..e
  BigInt coefficient;               // d! / prod r_s!   (exact)
  std::uint32_t residue = 0;        // coefficient mod p
  bool head = false;                // all weight in slot one: r_1 = e+1
  std::vector<ChainFactor> chain;   // factors for slots e down to 1
  bool dm1_factor_found = false;    // some factor's numerator contains d-1
  bool dm1_factor_vanishes = false; // ... and that factor is 0 mod p
};

struct SmallCharReport {
  int e = 0;
  std::uint32_t p = 0;
  std::uint64_t d = 0;
  bool standard_shape = false;  // d == (e+1)! * p + 1
  std::size_t term_count = 0;   // monomials of H (per coordinate)
  std::size_t workspace_monomials = 0;  // exponent-map entries, two coordinates
  std::size_t vanishing_count = 0;      // terms with residue == 0
  bool f_next_vanishes = false;         // all residues zero
  unsigned head_valuation = 0;   // v_p(C(d, e+1)) by Kummer carry count
  bool head_vanishes = false;    // head_valuation >= 1
  bool chains_covered = false;   // every term has a vanishing d-1 chain factor
  std::vector<FermatTerm> terms;
};

//////////////////////////////////////////////////////////////////////////////
// Certify the vanishing (or non-vanishing) of F_{e+1} for the Fermat form of
// degree d in characteristic p.  The no-override entry point computes the
// distinguished degree d = (e+1)! * p + 1; the explicit-degree entry point
// exists for control experiments with other degrees.
//////////////////////////////////////////////////////////////////////////////
inline SmallCharReport fermat_smallchar_check_explicit(std::uint64_t d, int e,
                                                       std::uint32_t p,
                                                       const Budget& budget) {
  if (e < 1)
    throw ParameterContract("fermat check needs e >= 1, got " +
                            std::to_string(e));
  if (d < 2)
    throw ParameterContract("fermat check needs degree >= 2, got " +
                            std::to_string(d));
  if (!detail::is_prime_u32(p))
    throw ParameterContract("fermat check needs a prime p, got " +
                            std::to_string(p));

  const unsigned j = unsigned(e) + 1;  // weight of the inspected coefficient
  if (std::uint64_t(j) > d)
    throw ParameterContract(
        "fermat check needs e + 1 <= d so that weight-(e+1) slot tuples "
        "exist, got e + 1 = " +
        std::to_string(j) + " and d = " + std::to_string(d));

  // The multiset enumeration below is bounded by the number of weight-j
  // compositions of d slots, C(j + d - 1, j); charge that before recursing.
  budget.check_box(detail::binomial_exact(std::uint64_t(j) + d - 1, j),
                   "fermat smallchar workspace");

  SmallCharReport rep;
  rep.e = e;
  rep.p = p;
  rep.d = d;

  BigInt shape = p;
  for (unsigned m = 2; m <= j; ++m) shape *= m;  // (e+1)! * p
  rep.standard_shape = (BigInt(d) == shape + 1);

  // Route 1: direct expansion.  Slot multisets of weight e+1 with entries in
  // [0, e], each with its exact ordered-rearrangement count.
  std::vector<std::pair<std::vector<unsigned>, BigInt>> multisets;
  slot_multisets(unsigned(d), e, int(j), multisets);

  // Two-coordinate exponent-vector workspace over Z/p.  Key: the 2(e+1)
  // exponents of the variables g_{1,0..e}, g_{2,0..e}; value: coefficient
  // residue.  Monomials from different multisets or different coordinate
  // blocks never coincide, but the map accumulates rather than assumes that.
  std::map<std::vector<unsigned>, std::uint32_t> workspace;

  const unsigned v_dm1 = detail::padic_val(BigInt(d) - 1, p);

  for (const auto& [tuple, orderings] : multisets) {
    FermatTerm term;
    term.exponents.assign(j, 0);  // r_0..r_e
    for (unsigned s : tuple) ++term.exponents.at(s);
    term.coefficient = orderings;
    term.residue = std::uint32_t(bigint_to_u64(orderings % p));
    term.head = (term.exponents[1] == j);

    for (int block = 0; block < 2; ++block) {
      std::vector<unsigned> key(2 * j, 0);
      for (unsigned s = 0; s < j; ++s)
        key[std::size_t(block) * j + s] = term.exponents[s];
      workspace[key] = (workspace[key] + term.residue) % p;
    }

    // Route 2: the binomial chain over slots e down to 1.  r_0 is consumed
    // by the trailing C(r_0, r_0) = 1, which is omitted.
    BigInt chain_product = 1;
    std::uint64_t remaining = d;
    for (unsigned s = j - 1; s >= 1; --s) {
      const unsigned r = term.exponents[s];
      ChainFactor f;
      f.slot = s;
      f.top = remaining;
      f.repeat = r;
      f.value = detail::binomial_exact(remaining, r);
      // Numerator interval is (top - repeat, top].
      f.contains_dm1 = r > 0 && remaining >= d - 1 && remaining - r < d - 1;
      f.vanishes_mod_p = (f.value % p == 0);
      chain_product *= f.value;
      remaining -= r;
      if (f.contains_dm1) {
        if (term.dm1_factor_found)
          throw std::logic_error(
              "internal error: two chain factors claim the numerator value "
              "d-1; the intervals should tile disjointly");
        term.dm1_factor_found = true;
        term.dm1_factor_vanishes = f.vanishes_mod_p;
        // The mechanism that forces the vanishing in the distinguished
        // shape: v_p(d-1) exceeds v_p(repeat!), so the factor's valuation
        // v_p(numerator) - v_p(repeat!) is positive.
        if (rep.standard_shape) {
          const unsigned v_rfac = detail::padic_val_factorial(r, p);
          if (v_dm1 <= v_rfac)
            throw std::logic_error(
                "internal error: v_p(d-1) = " + std::to_string(v_dm1) +
                " does not exceed v_p(r!) = " + std::to_string(v_rfac) +
                " in the distinguished shape");
          if (!f.vanishes_mod_p)
            throw std::logic_error(
                "internal error: chain factor containing d-1 is a unit mod "
                "p despite the valuation argument");
        }
      }
      term.chain.push_back(std::move(f));
    }

    // The chain must reproduce the rearrangement count exactly; the two
    // routes compute the same integer through different factorizations.
    if (chain_product != orderings)
      throw std::logic_error(
          "internal error: binomial chain product " +
          bigint_str(chain_product) + " disagrees with rearrangement count " +
          bigint_str(orderings));
    if (!term.dm1_factor_found)
      throw std::logic_error(
          "internal error: no chain factor contains d-1; at least two slots "
          "above zero are occupied, so one interval must");

    rep.terms.push_back(std::move(term));
  }

  rep.term_count = rep.terms.size();
  rep.workspace_monomials = workspace.size();
  if (rep.workspace_monomials != 2 * rep.term_count)
    throw std::logic_error(
        "internal error: exponent-vector workspace collided; expected " +
        std::to_string(2 * rep.term_count) + " monomials, got " +
        std::to_string(rep.workspace_monomials));

  // Assert-zero check on the constructed polynomial.
  rep.f_next_vanishes = true;
  for (const auto& [key, residue] : workspace)
    if (residue != 0) rep.f_next_vanishes = false;

  rep.chains_covered = true;
  for (const FermatTerm& t : rep.terms) {
    if (t.residue == 0) ++rep.vanishing_count;
    if (!t.dm1_factor_vanishes) rep.chains_covered = false;
    // Route agreement per term: the residue is zero iff the exact integer
    // is divisible by p, and a vanishing d-1 factor forces that.
    if (t.dm1_factor_vanishes && t.residue != 0)
      throw std::logic_error(
          "internal error: a chain factor vanishes mod p but the multinomial "
          "residue is nonzero");
  }
  if (rep.f_next_vanishes != (rep.vanishing_count == rep.term_count))
    throw std::logic_error(
        "internal error: workspace zero-polynomial check disagrees with the "
        "per-term residue tally");

  // Head coefficient C(d, e+1): all weight in slot one.  Kummer carry count,
  // Legendre valuation, and exact divisibility must agree.
  const BigInt head = detail::binomial_exact(d, j);
  rep.head_valuation = detail::binomial_val_by_carries(j, d - j, p);
  {
    const unsigned legendre = detail::padic_val_factorial(d, p) -
                              detail::padic_val_factorial(j, p) -
                              detail::padic_val_factorial(d - j, p);
    if (legendre != rep.head_valuation)
      throw std::logic_error(
          "internal error: Kummer carry count " +
          std::to_string(rep.head_valuation) +
          " disagrees with the Legendre valuation " + std::to_string(legendre));
    const unsigned exact = head == 0 ? 0 : detail::padic_val(head, p);
    if (head != 0 && exact != rep.head_valuation)
      throw std::logic_error(
          "internal error: carry count disagrees with direct valuation of "
          "the head binomial");
  }
  rep.head_vanishes = rep.head_valuation >= 1;
  if (rep.head_vanishes != (head % p == 0))
    throw std::logic_error(
        "internal error: head binomial divisibility disagrees with its "
        "valuation");

  // In the distinguished shape every route must conclude total collapse.
  if (rep.standard_shape &&
      !(rep.f_next_vanishes && rep.head_vanishes && rep.chains_covered))
    throw std::logic_error(
        "internal error: distinguished degree did not produce the zero "
        "polynomial");

  return rep;
}

inline SmallCharReport fermat_smallchar_check(int e, std::uint32_t p,
                                              const Budget& budget) {
  if (e < 1)
    throw ParameterContract("fermat check needs e >= 1, got " +
                            std::to_string(e));
  if (!detail::is_prime_u32(p))
    throw ParameterContract("fermat check needs a prime p, got " +
                            std::to_string(p));
  BigInt d = p;
  for (int m = 2; m <= e + 1; ++m) d *= m;
  d += 1;  // (e+1)! * p + 1
  std::uint64_t d64 = 0;
  try {
    d64 = bigint_to_u64(d);
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("distinguished degree " + bigint_str(d) +
                         " is beyond the workspace");
  }
  return fermat_smallchar_check_explicit(d64, e, p, budget);
}

}  // namespace ffmoduli
