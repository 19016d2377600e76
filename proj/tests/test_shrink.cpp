#include <catch2/catch_amalgamated.hpp>

#include "ffmoduli/shrink.hpp"

using namespace ffmoduli;

namespace {
SymLinearSystem one_form(const LaurentNum& g) {
  return SymLinearSystem({{g}});
}

SymLinearSystem zero_forms(unsigned N) {
  return SymLinearSystem(
      std::vector<std::vector<LaurentNum>>(N, std::vector<LaurentNum>(N)));
}
}  // namespace

TEST_CASE("hand counts for a single form") {
  Field F(3);
  // gamma = u^{-2}, A = 1, Z = 0: the norm of t u^{-2} is at most
  // q^{-2}, below the q^{-1} threshold for every |t| < q.
  REQUIRE(shrink_count(F, one_form(LaurentNum::monomial(F.one(), -2)), 2, 0) ==
          BigInt(3));
  // gamma = u^{-1}: now the u^{-1} digit is t itself, so only t = 0.
  REQUIRE(shrink_count(F, one_form(LaurentNum::monomial(F.one(), -1)), 2, 0) ==
          BigInt(1));
  // A + Z <= 0 collapses the box to the single point t = 0.
  REQUIRE(shrink_count(F, one_form(LaurentNum::monomial(F.one(), -1)), 1, -3) ==
          BigInt(1));
}

TEST_CASE("equal slabs give ratio one") {
  Field F(3);
  Rng rng(42);
  const SymLinearSystem L = random_symmetric_system(F, rng, 2);
  const ShrinkReport r = shrink_check(F, L, ShrinkParams(4, -2, -2));
  REQUIRE(r.pass);
  REQUIRE(r.count_z1 == r.count_z2);
  REQUIRE(r.rhs == r.count_z1);
}

TEST_CASE("zero forms reduce to the box-size ratio") {
  Field F(3);
  const unsigned N = 2;
  // A = 2, Z2 = 0, Z1 = -1: counts are the raw box sizes q^{N(A+Z)}.
  const ShrinkReport r = shrink_check(F, zero_forms(N), ShrinkParams(4, -2, 0));
  REQUIRE(r.count_z2 == BigInt(81));
  REQUIRE(r.count_z1 == BigInt(9));
  REQUIRE(r.rhs == BigInt(81));  // q^{N(Z2-Z1)} * 9 = 9 * 9: exact equality
  REQUIRE(r.pass);

  // Sub-unit boxes hold only the origin.
  REQUIRE(shrink_count(F, zero_forms(3), 1, -3) == BigInt(1));
}

TEST_CASE("half-integer parameters thread through exactly") {
  Field F(3);
  Rng rng(5151);
  // A = 3/2, Z2 = -1/2, Z1 = -3/2: box exponents 1 and 0.
  const ShrinkParams sp(3, -3, -1);
  const SymLinearSystem L = random_symmetric_system(F, rng, 2);
  const ShrinkReport r = shrink_check(F, L, sp);
  REQUIRE(r.pass);
  REQUIRE(r.count_z1 == BigInt(1));  // box exponent 0
}

TEST_CASE("shrink parameter contracts") {
  REQUIRE_THROWS_AS(ShrinkParams(-1, -1, -1), ParameterContract);  // A < 0
  REQUIRE_THROWS_AS(ShrinkParams(2, -2, 2), ParameterContract);    // Z2 > 0
  REQUIRE_THROWS_AS(ShrinkParams(2, 2, -2), ParameterContract);    // Z1 > 0
  REQUIRE_THROWS_AS(ShrinkParams(2, -2, -1), ParameterContract);   // A - Z2 not integral
  REQUIRE_THROWS_AS(ShrinkParams(2, -2, -4), ParameterContract);   // Z2 < Z1
  REQUIRE_THROWS_AS(ShrinkParams(2, -3, -2), ParameterContract);   // A - Z1 not integral
  REQUIRE_THROWS_AS(ShrinkParams(3, -2, -2), ParameterContract);   // A + Z not integral

  Field F(3);
  REQUIRE_THROWS_AS(shrink_count(F, zero_forms(1), 3, -2), ParameterContract);
  REQUIRE_THROWS_AS(SymLinearSystem({}), ParameterContract);
  REQUIRE_THROWS_AS(SymLinearSystem({{LaurentNum()}, {LaurentNum()}}),
                    ParameterContract);
  // Asymmetric matrix.
  REQUIRE_THROWS_AS(
      SymLinearSystem({{LaurentNum(), LaurentNum::monomial(Field(3).one(), -1)},
                       {LaurentNum(), LaurentNum()}}),
      ParameterContract);
}

TEST_CASE("random symmetric systems satisfy the inequality") {
  for (std::uint32_t q : {3u, 5u}) {
    Field F(q);
    Rng rng(20260816 + q);
    const ShrinkBatteryReport rep = shrink_battery(F, rng, 100);
    REQUIRE(rep.trials == 100);
    REQUIRE(rep.failures == 0);
    REQUIRE(rep.all_pass());
  }
}

TEST_CASE("shrink counting respects the budget and precision floors") {
  Field F(3);
  Rng rng(9);
  const SymLinearSystem L = random_symmetric_system(F, rng, 3);
  REQUIRE_THROWS_AS(shrink_count(F, L, 6, 0, Budget(10, 10)), BudgetExceeded);

  // A coefficient known only down to u^{-1} cannot answer a q^{-2}
  // norm test for nonzero t.
  const SymLinearSystem shallow = one_form(LaurentNum::zero_to(-1));
  REQUIRE_THROWS_AS(shrink_count(F, shallow, 4, 0), InsufficientPrecision);
}
