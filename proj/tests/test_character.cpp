#include <catch2/catch_amalgamated.hpp>

#include "ffmoduli/character.hpp"

using namespace ffmoduli;

TEST_CASE("cyclotomic integers: ring structure") {
  const std::uint32_t p = 5;
  // 1 + z + z^2 + z^3 + z^4 = 0.
  CycloSum all(p);
  for (std::uint32_t r = 0; r < p; ++r) all.add_root(r);
  REQUIRE(all.is_zero());
  REQUIRE(all.is_rational_integer());
  REQUIRE(all.to_integer() == 0);

  REQUIRE(CycloSum::root(p, 2) * CycloSum::root(p, 4) == CycloSum::root(p, 1));
  REQUIRE_FALSE(CycloSum::root(p, 1).is_rational_integer());
  REQUIRE(CycloSum::root(p, 3).conj() == CycloSum::root(p, 2));

  // Two representatives of the same value: shifted by the constant 1.
  CycloSum a = CycloSum::integer(p, 7);
  CycloSum b = a;
  for (std::uint32_t r = 0; r < p; ++r) b.add_root(r);
  REQUIRE(a == b);
  REQUIRE(b.canonical().counts() == a.canonical().counts());
  REQUIRE((a - b).is_zero());
  REQUIRE(a.scaled(BigInt(3)).to_integer() == 21);
  REQUIRE_THROWS_AS(CycloSum(200), ParameterContract);
  REQUIRE_THROWS_AS(CycloSum::root(5, 1) + CycloSum::root(7, 1), ParameterContract);
}

TEST_CASE("cyclotomic integers: quadratic character sum has magnitude sqrt(p)") {
  const std::uint32_t p = 5;
  // g = sum_a z^{a^2}: |g|^2 = g * conj(g) = p exactly (a=0 included
  // contributes the extra 0 term: sum_a z^{a^2} = 1 + 2(z + z^4),
  // |g|^2 = 5).
  CycloSum g(p);
  for (std::uint32_t a = 0; a < p; ++a) g.add_root((a * a) % p);
  CycloSum norm = g * g.conj();
  REQUIRE(norm.is_rational_integer());
  REQUIRE(norm.to_integer() == 5);
  REQUIRE(g.abs_double() == Catch::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("additive character via the absolute trace") {
  Field F = Field::extension(3, 2);
  TraceTable tt(F);
  for (std::uint64_t i = 0; i < F.q(); ++i)
    REQUIRE(tt.by_index(i) == F.trace_residue(F.at(i)));
  // e_q is a homomorphism from (F_q, +) to p-th roots of unity.
  Rng rng(11);
  for (int it = 0; it < 30; ++it) {
    FqElem a = F.random(rng), b = F.random(rng);
    REQUIRE(additive_char(F, a) * additive_char(F, b) == additive_char(F, F.add(a, b)));
  }
  // psi reads the u^-1 digit: psi(a*u^-1 + anything above) = e_q(a).
  FqElem a = F.from_coeffs({1, 2});
  LaurentNum x = ladd(F, LaurentNum::monomial(a, -1), LaurentNum::monomial(F.one(), 3));
  REQUIRE(psi(F, x) == additive_char(F, a));
  // psi of something only known above u^-1 is undetermined.
  REQUIRE_THROWS_AS(psi(F, LaurentNum::zero_to(0)), InsufficientPrecision);
  REQUIRE(psi_residue(F, LaurentNum::zero_to(-1)) == 0);
}

TEST_CASE("ball-sum identity across a parameter sweep") {
  for (std::uint32_t q3 : {0u, 1u}) {
    Field F = q3 ? Field::extension(3, 2) : Field(3);
    std::vector<LaurentNum> gammas = {
        LaurentNum(),
        LaurentNum::monomial(F.one(), -1),
        LaurentNum::monomial(F.from_int(2), -2),
        LaurentNum::monomial(F.one(), -4),
        ladd(F, LaurentNum::monomial(F.one(), -1), LaurentNum::monomial(F.from_int(2), -3)),
    };
    const int nmax = q3 ? 2 : 3;
    for (const auto& g : gammas)
      for (int N = 0; N <= nmax; ++N) REQUIRE_NOTHROW(orthogonality_check(F, g, N));
  }
  // Both branches of the identity are exercised: a gamma in the dual
  // ball gives the full count, one outside gives cancellation.
  Field F(3);
  REQUIRE(char_ball_sum(F, LaurentNum::monomial(F.one(), -3), 2).to_integer() == 9);
  REQUIRE(char_ball_sum(F, LaurentNum::monomial(F.one(), -2), 2).is_zero());
}

TEST_CASE("ball-average identity across a parameter sweep") {
  Field F(3);
  std::vector<Poly> gammas = {Poly{}, pfrom_ints(F, {1}), pfrom_ints(F, {0, 1}),
                              pfrom_ints(F, {1, 0, 2})};
  for (const auto& g : gammas)
    for (int M = 0; M >= -2; --M) REQUIRE_NOTHROW(ortho_average_check(F, g, M));
  REQUIRE_THROWS_AS(ortho_average_check(F, Poly{}, 1), ParameterContract);
}

TEST_CASE("ball sums respect the work budget") {
  Field F(3);
  Budget tiny(BigInt(10), BigInt(10));
  REQUIRE_THROWS_AS(char_ball_sum(F, LaurentNum::monomial(F.one(), -4), 3, tiny),
                    BudgetExceeded);
}
