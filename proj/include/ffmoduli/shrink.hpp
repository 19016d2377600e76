#pragma once

//////////////////////////////////////////////////////////////////////
// shrink.hpp
//
// The box-shrinking inequality for symmetric linear systems.
//
// Given symmetric linear forms L_i(t) = gamma_{i,1} t_1 + ... +
// gamma_{i,N} t_N over K_infty (gamma_{i,j} = gamma_{j,i}) and
// parameters A >= 0, Z <= 0, define
//
//   count_A(Z) = #{ t in F_q[u]^N : |t_i| < q^{A+Z},
//                   ||L_i(t)|| < q^{-A+Z} for all i }.
//
// Then count_A(Z2) <= q^{N(Z2 - Z1)} count_A(Z1) whenever A - Z2 is a
// nonnegative integer, Z2 - Z1 a nonnegative integer, and both A + Z_i
// and A - Z_i are integers. A and Z may be half-integers, so the API
// carries them doubled; every quantity that reaches an exponent is an
// integer by the contract. Counts are exact, and the comparison is an
// exact integer comparison.
//////////////////////////////////////////////////////////////////////

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/counting.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/laurent.hpp"
#include "ffmoduli/poly.hpp"
#include "ffmoduli/rng.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// The symmetric system.
//////////////////////////////////////////////////////////////////////

class SymLinearSystem {
 public:
  explicit SymLinearSystem(std::vector<std::vector<LaurentNum>> gamma)
      : gamma_(std::move(gamma)) {
    const std::size_t N = gamma_.size();
    if (N < 1) throw ParameterContract("SymLinearSystem: need at least one form");
    for (const auto& row : gamma_)
      if (row.size() != N)
        throw ParameterContract("SymLinearSystem: coefficient matrix is not square");
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j)
        if (!(gamma_[i][j] == gamma_[j][i]))
          throw ParameterContract("SymLinearSystem: coefficients are not symmetric");
  }

  unsigned N() const { return unsigned(gamma_.size()); }

  // L_i(t) for a polynomial tuple t.
  LaurentNum apply(const Field& F, unsigned i, const std::vector<Poly>& t) const {
    LaurentNum acc;
    for (std::size_t j = 0; j < gamma_.size(); ++j) {
      if (pis_zero(t[j])) continue;
      acc = ladd(F, acc, lmul(F, gamma_[i][j], LaurentNum::from_poly(t[j])));
    }
    return acc;
  }

 private:
  std::vector<std::vector<LaurentNum>> gamma_;
};

//////////////////////////////////////////////////////////////////////
// Parameters, doubled so half-integers stay exact.
//////////////////////////////////////////////////////////////////////

struct ShrinkParams {
  long long A2;   // 2A, A >= 0
  long long Z1_2; // 2 Z1, Z1 <= 0
  long long Z2_2; // 2 Z2, Z2 <= 0

  ShrinkParams(long long A_doubled, long long Z1_doubled, long long Z2_doubled)
      : A2(A_doubled), Z1_2(Z1_doubled), Z2_2(Z2_doubled) {
    if (A2 < 0) throw ParameterContract("ShrinkParams: A must be >= 0");
    if (Z1_2 > 0 || Z2_2 > 0) throw ParameterContract("ShrinkParams: Z must be <= 0");
    if ((A2 - Z2_2) % 2 != 0)
      throw ParameterContract("ShrinkParams: A - Z2 must be a nonnegative integer");
    if (Z2_2 < Z1_2 || (Z2_2 - Z1_2) % 2 != 0)
      throw ParameterContract("ShrinkParams: Z2 - Z1 must be a nonnegative integer");
    if ((A2 + Z1_2) % 2 != 0 || (A2 - Z1_2) % 2 != 0 || (A2 + Z2_2) % 2 != 0)
      throw ParameterContract("ShrinkParams: A + Z and A - Z must be integers");
  }

  long long box_exp(long long Z_2) const { return (A2 + Z_2) / 2; }    // A + Z
  long long norm_exp(long long Z_2) const { return (Z_2 - A2) / 2; }   // -A + Z
};

//////////////////////////////////////////////////////////////////////
// The count and the inequality.
//////////////////////////////////////////////////////////////////////

// count_A(Z) by enumeration; Z passed doubled. When A + Z <= 0 the box
// is {0} and the count is 1.
inline BigInt shrink_count(const Field& F, const SymLinearSystem& L, long long A2,
                           long long Z_2, const Budget& budget = Budget()) {
  if ((A2 + Z_2) % 2 != 0 || (A2 - Z_2) % 2 != 0)
    throw ParameterContract("shrink_count: A + Z and A - Z must be integers");
  const long long P = (A2 + Z_2) / 2;   // box exponent
  const long long thr = (Z_2 - A2) / 2; // norm threshold exponent
  const unsigned N = L.N();
  if (P <= 0) return 1;  // t = 0 is the only point, and ||0|| = 0

  const BigInt total_big = bigint_pow(BigInt(F.q()), std::uint64_t(P) * N);
  budget.check_box(total_big, "shrink_count");
  const std::uint64_t total = bigint_to_u64(total_big);

  BigInt count = 0;
  std::vector<Poly> t;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    detail::decode_slot(F, idx, N, int(P) - 1, t);
    bool ok = true;
    for (unsigned i = 0; i < N && ok; ++i)
      ok = dist_less_than(L.apply(F, i, t), thr);
    if (ok) count += 1;
  }
  return count;
}

struct ShrinkReport {
  BigInt count_z1;  // count_A(Z1)
  BigInt count_z2;  // count_A(Z2)
  BigInt rhs;       // q^{N(Z2-Z1)} count_A(Z1)
  bool pass = false;
};

inline ShrinkReport shrink_check(const Field& F, const SymLinearSystem& L,
                                 const ShrinkParams& sp,
                                 const Budget& budget = Budget()) {
  ShrinkReport r;
  r.count_z1 = shrink_count(F, L, sp.A2, sp.Z1_2, budget);
  r.count_z2 = shrink_count(F, L, sp.A2, sp.Z2_2, budget);
  const std::uint64_t expo = std::uint64_t((sp.Z2_2 - sp.Z1_2) / 2) * L.N();
  r.rhs = bigint_pow(BigInt(F.q()), expo) * r.count_z1;
  r.pass = r.count_z2 <= r.rhs;
  return r;
}

//////////////////////////////////////////////////////////////////////
// Random-system battery (shared by tests, CLI, and the acceptance
// gate). Coefficients are exact Laurent windows reaching from u^1 down
// to u^{-depth}, so every norm test resolves without precision errors.
//////////////////////////////////////////////////////////////////////

inline SymLinearSystem random_symmetric_system(const Field& F, Rng& rng, unsigned N,
                                               long long depth = 6) {
  std::vector<std::vector<LaurentNum>> g(N, std::vector<LaurentNum>(N));
  for (unsigned i = 0; i < N; ++i)
    for (unsigned j = i; j < N; ++j) {
      std::vector<FqElem> win(std::size_t(depth) + 2);
      for (auto& c : win) c = F.random(rng);
      LaurentNum v = LaurentNum::from_window(std::move(win), 1, Ord::neg_inf());
      g[i][j] = v;
      g[j][i] = std::move(v);
    }
  return SymLinearSystem(std::move(g));
}

struct ShrinkBatteryReport {
  long long trials = 0;
  long long failures = 0;
  bool all_pass() const { return trials > 0 && failures == 0; }
};

// Random symmetric systems with box exponents <= 3, each checked at a
// random admissible (A, Z1, Z2) triple. Work per trial stays small by
// keeping the enumerated point count under `point_cap`.
inline ShrinkBatteryReport shrink_battery(const Field& F, Rng& rng, int trials = 100,
                                          std::uint64_t point_cap = 20000,
                                          const Budget& budget = Budget()) {
  ShrinkBatteryReport rep;
  for (int it = 0; it < trials; ++it) {
    const unsigned N = 1 + unsigned(rng.below(3));
    long long A2, Z2_2;
    for (;;) {
      A2 = (long long)(rng.below(7));                       // A <= 3
      Z2_2 = -(A2 % 2) - 2 * (long long)(rng.below(3));     // Z2 = A mod 2
      const long long boxp = (A2 + Z2_2) / 2;
      if (boxp <= 0 ||
          bigint_pow(BigInt(F.q()), std::uint64_t(boxp) * N) <= BigInt(point_cap))
        break;
    }
    const long long Z1_2 = Z2_2 - 2 * (long long)(rng.below(3));
    const SymLinearSystem L = random_symmetric_system(F, rng, N);
    const ShrinkReport r = shrink_check(F, L, ShrinkParams(A2, Z1_2, Z2_2), budget);
    rep.trials += 1;
    if (!r.pass) rep.failures += 1;
  }
  return rep;
}

}  // namespace ffmoduli
