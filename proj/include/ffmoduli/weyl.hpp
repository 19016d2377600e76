#pragma once

//////////////////////////////////////////////////////////////////////
// weyl.hpp
//
// The t-fold differencing operator on black-box functions of field
// points,
//
//   P_t(z_1, ..., z_t) = sum over eps in {0,1}^t of
//                        (-1)^{|eps|} P(eps_1 z_1 + ... + eps_t z_t),
//
// and its two exact identities:
//
//   (zero)      P_t = 0 whenever t > deg P, and
//   (diagonal)  P_t(z, ..., z) = (-1)^t t! P^[t](z) for t = deg P,
//               P^[t] the degree-t homogeneous component.
//
// Both are integer polynomial identities, so they hold verbatim over
// every F_{p^k}; the batteries below check them on random polynomials
// with integer coefficients, moving to an extension field when the
// diagonal right-hand side needs more interpolation nodes than the
// base field has elements.
//////////////////////////////////////////////////////////////////////

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/rng.hpp"

namespace ffmoduli {

// Black-box evaluator: a function of one field point, parameterized by
// the field so the same box restricts to subfields and extensions.
// Must be reentrant (pure in the point and field).
using PointEval = std::function<FqElem(const Field&, const std::vector<FqElem>&)>;

inline FqElem weyl_difference(const Field& F, const PointEval& P,
                              const std::vector<std::vector<FqElem>>& zs) {
  if (zs.empty()) throw ParameterContract("weyl_difference: need t >= 1 points");
  const std::size_t t = zs.size();
  if (t > 30)
    throw ParameterContract("weyl_difference: 2^t evaluations is past any sane t");
  const std::size_t n = zs[0].size();
  for (const auto& z : zs)
    if (z.size() != n)
      throw ParameterContract("weyl_difference: points have mismatched widths");

  FqElem acc;
  std::vector<FqElem> pt(n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << t); ++mask) {
    for (std::size_t i = 0; i < n; ++i) pt[i] = FqElem();
    unsigned bits = 0;
    for (std::size_t k = 0; k < t; ++k) {
      if (!((mask >> k) & 1)) continue;
      ++bits;
      for (std::size_t i = 0; i < n; ++i) pt[i] = F.add(pt[i], zs[k][i]);
    }
    const FqElem v = P(F, pt);
    acc = (bits & 1) ? F.sub(acc, v) : F.add(acc, v);
  }
  return acc;
}

//////////////////////////////////////////////////////////////////////
// MixedPoly: a non-homogeneous integer-coefficient polynomial, the
// black box the identity batteries feed to the operator. Coefficients
// are plain integers, so one object evaluates over every F_{p^k}.
//////////////////////////////////////////////////////////////////////

class MixedPoly {
 public:
  using IntTerms = std::vector<std::pair<std::vector<unsigned>, long long>>;

  MixedPoly(unsigned n, IntTerms terms) : n_(n), terms_(std::move(terms)) {
    if (n_ < 1) throw ParameterContract("MixedPoly: need at least one variable");
    for (const auto& [exps, c] : terms_) {
      (void)c;
      if (exps.size() != n_)
        throw ParameterContract("MixedPoly: monomial exponent vector has wrong length");
    }
  }

  unsigned n() const { return n_; }

  // Total degree of the integer polynomial (-1 for the zero list); the
  // mod-p degree can only be lower, which is the safe direction for
  // choosing t.
  int degree() const {
    int d = -1;
    for (const auto& [exps, c] : terms_) {
      if (c == 0) continue;
      int s = 0;
      for (unsigned a : exps) s += int(a);
      if (s > d) d = s;
    }
    return d;
  }

  FqElem eval(const Field& F, const std::vector<FqElem>& x) const {
    FqElem acc;
    for (const auto& [exps, c] : terms_) {
      FqElem m = F.from_int(c);
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned a = 0; a < exps[i]; ++a) m = F.mul(m, x[i]);
      acc = F.add(acc, m);
    }
    return acc;
  }

  PointEval as_eval() const {
    return [*this](const Field& F, const std::vector<FqElem>& x) {
      return eval(F, x);
    };
  }

  // A random polynomial of total degree exactly `deg` (coefficients in
  // [1, p-1], so the degree survives reduction mod p) plus lower-order
  // noise terms.
  static MixedPoly random(Rng& rng, unsigned n, unsigned deg, std::uint32_t p,
                          unsigned extra_terms = 4) {
    IntTerms terms;
    terms.emplace_back(random_exps(rng, n, deg, /*exact=*/true),
                       1 + (long long)(rng.below(p - 1)));
    for (unsigned k = 0; k < extra_terms; ++k)
      terms.emplace_back(random_exps(rng, n, deg, /*exact=*/false),
                         1 + (long long)(rng.below(p - 1)));
    return MixedPoly(n, std::move(terms));
  }

 private:
  static std::vector<unsigned> random_exps(Rng& rng, unsigned n, unsigned deg,
                                           bool exact) {
    // Distribute `total` among n variables, bar-and-star style.
    const unsigned total = exact ? deg : unsigned(rng.below(deg + 1));
    std::vector<unsigned> e(n, 0);
    for (unsigned u = 0; u < total; ++u) e[std::size_t(rng.below(n))] += 1;
    return e;
  }

  unsigned n_;
  IntTerms terms_;
};

//////////////////////////////////////////////////////////////////////
// The degree-t homogeneous component by interpolation: P(lambda z) is
// a polynomial of degree <= deg in lambda whose lambda^t coefficient
// is P^[t](z); with deg+1 distinct nodes the leading coefficient drops
// out of the Lagrange weights.
//////////////////////////////////////////////////////////////////////

inline FqElem homogeneous_component_at(const Field& F, const PointEval& P,
                                       unsigned deg, const std::vector<FqElem>& z) {
  if (F.q() < deg + 1)
    throw ParameterContract(
        "homogeneous_component_at: field has too few interpolation nodes");
  std::vector<FqElem> lambda(deg + 1), g(deg + 1);
  std::vector<FqElem> pt(z.size());
  for (unsigned i = 0; i <= deg; ++i) {
    lambda[i] = F.at(i);
    for (std::size_t c = 0; c < z.size(); ++c) pt[c] = F.mul(lambda[i], z[c]);
    g[i] = P(F, pt);
  }
  FqElem lead;
  for (unsigned i = 0; i <= deg; ++i) {
    FqElem w = F.one();
    for (unsigned j = 0; j <= deg; ++j) {
      if (j == i) continue;
      w = F.mul(w, F.sub(lambda[i], lambda[j]));
    }
    lead = F.add(lead, F.mul(g[i], F.inv(w)));
  }
  return lead;
}

//////////////////////////////////////////////////////////////////////
// Identity batteries (shared by the test suite, the CLI, and the
// acceptance gate).
//////////////////////////////////////////////////////////////////////

struct WeylBatteryReport {
  long long trials = 0;
  long long failures = 0;
  bool all_pass() const { return trials > 0 && failures == 0; }
};

// (zero): t = deg + 1 random points annihilate every polynomial of
// total degree <= max_deg.
inline WeylBatteryReport weyl_zero_battery(const Field& F, Rng& rng, int polys = 100,
                                           unsigned max_deg = 4, unsigned max_n = 3) {
  WeylBatteryReport rep;
  for (int it = 0; it < polys; ++it) {
    const unsigned n = 1 + unsigned(rng.below(max_n));
    const unsigned deg = unsigned(rng.below(max_deg + 1));
    const MixedPoly P = deg == 0
                            ? MixedPoly(n, {{std::vector<unsigned>(n, 0),
                                             1 + (long long)(rng.below(F.p() - 1))}})
                            : MixedPoly::random(rng, n, deg, F.p());
    std::vector<std::vector<FqElem>> zs(deg + 1, std::vector<FqElem>(n));
    for (auto& z : zs)
      for (auto& c : z) c = F.random(rng);
    rep.trials += 1;
    if (!weyl_difference(F, P.as_eval(), zs).is_zero()) rep.failures += 1;
  }
  return rep;
}

// (diagonal): for each degree t = 1..max_deg, random points z satisfy
// P_t(z,...,z) = (-1)^t t! P^[t](z). Runs over the smallest extension
// of F_p with enough interpolation nodes for the right-hand side.
inline WeylBatteryReport weyl_diagonal_battery(std::uint32_t p, Rng& rng,
                                               int points_per_degree = 100,
                                               unsigned max_deg = 4,
                                               unsigned max_n = 3) {
  WeylBatteryReport rep;
  for (unsigned t = 1; t <= max_deg; ++t) {
    unsigned k = 1;
    std::uint64_t qk = p;
    while (qk < std::uint64_t(t) + 1) {
      k += 1;
      qk *= p;
    }
    const Field E = Field::extension(p, k);
    long long sign_fact = 1;
    for (unsigned m = 2; m <= t; ++m) sign_fact *= m;
    if (t & 1) sign_fact = -sign_fact;
    const FqElem scale = E.from_int(sign_fact);

    for (int it = 0; it < points_per_degree; ++it) {
      const unsigned n = 1 + unsigned(rng.below(max_n));
      const MixedPoly P = MixedPoly::random(rng, n, t, p);
      std::vector<FqElem> z(n);
      for (auto& c : z) c = E.random(rng);
      const std::vector<std::vector<FqElem>> zs(std::size_t(t), z);
      const FqElem lhs = weyl_difference(E, P.as_eval(), zs);
      const FqElem rhs = E.mul(scale, homogeneous_component_at(E, P.as_eval(), t, z));
      rep.trials += 1;
      if (!(lhs == rhs)) rep.failures += 1;
    }
  }
  return rep;
}

}  // namespace ffmoduli
