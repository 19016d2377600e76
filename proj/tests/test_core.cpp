#include <catch2/catch_amalgamated.hpp>

#include "ffmoduli/budget.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/laurent.hpp"
#include "ffmoduli/ord.hpp"
#include "ffmoduli/poly.hpp"
#include "ffmoduli/rng.hpp"

using namespace ffmoduli;

TEST_CASE("extended integers with a bottom element") {
  Ord ni = Ord::neg_inf();
  REQUIRE(ni.is_neg_inf());
  REQUIRE(ni < Ord(0));
  REQUIRE(ni < Ord(-1000000));
  REQUIRE(Ord(3) + Ord(4) == Ord(7));
  REQUIRE((ni + Ord(5)).is_neg_inf());
  REQUIRE((Ord(5) + ni).is_neg_inf());
  REQUIRE(ord_max(ni, Ord(-2)) == Ord(-2));
  REQUIRE(ord_min(ni, Ord(-2)).is_neg_inf());
  REQUIRE(Ord(1) - 3 == Ord(-2));
  REQUIRE_THROWS_AS(ni.value(), std::logic_error);
}

TEST_CASE("prime field arithmetic") {
  Field F(5);
  REQUIRE(F.q() == 5);
  REQUIRE(F.is_prime_field());
  FqElem a = F.from_int(3), b = F.from_int(4);
  REQUIRE(F.add(a, b) == F.from_int(2));
  REQUIRE(F.mul(a, b) == F.from_int(2));
  REQUIRE(F.sub(a, b) == F.from_int(4));
  REQUIRE(F.from_int(-1) == F.from_int(4));
  for (std::uint64_t i = 1; i < 5; ++i) {
    FqElem x = F.at(i);
    REQUIRE(F.mul(x, F.inv(x)) == F.one());
  }
  REQUIRE(F.pow(F.from_int(2), 4) == F.one());  // Fermat
  REQUIRE_THROWS_AS(F.inv(F.zero()), std::domain_error);
  REQUIRE_THROWS_AS(Field(4), std::invalid_argument);
  REQUIRE_THROWS_AS(Field(257), std::invalid_argument);
}

TEST_CASE("extension field with nine elements") {
  Field F = Field::extension(3, 2);
  REQUIRE(F.q() == 9);
  // Lexicographically least monic irreducible over F_3 is t^2 + 1.
  REQUIRE(F.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  FqElem t = F.from_coeffs({0, 1});
  REQUIRE(F.mul(t, t) == F.from_int(-1));
  // Enumeration round-trips and covers all q elements exactly once.
  for (std::uint64_t i = 0; i < 9; ++i) REQUIRE(F.index_of(F.at(i)) == i);
  // Inverses across the whole multiplicative group.
  for (std::uint64_t i = 1; i < 9; ++i) {
    FqElem x = F.at(i);
    REQUIRE(F.mul(x, F.inv(x)) == F.one());
  }
  // Trace to F_3: tr(x) = x + x^3; tr(1) = 2, and every prime-field
  // value is hit equally often (3 times).
  REQUIRE(F.trace_residue(F.one()) == 2);
  int hits[3] = {0, 0, 0};
  for (std::uint64_t i = 0; i < 9; ++i) {
    FqElem tr = F.trace(F.at(i));
    REQUIRE(F.in_prime_subfield(tr));
    hits[F.prime_residue(tr)]++;
  }
  REQUIRE(hits[0] == 3);
  REQUIRE(hits[1] == 3);
  REQUIRE(hits[2] == 3);
  // Frobenius is additive: (x+y)^3 = x^3 + y^3.
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    FqElem x = F.random(rng), y = F.random(rng);
    REQUIRE(F.pow(F.add(x, y), 3) == F.add(F.pow(x, 3), F.pow(y, 3)));
  }
  REQUIRE_THROWS_AS(Field(3, std::vector<std::uint32_t>{2, 0, 1}), std::invalid_argument);
}

TEST_CASE("extension field with twenty-five elements") {
  Field F = Field::extension(5, 2);
  REQUIRE(F.q() == 25);
  REQUIRE(F.modulus() == std::vector<std::uint32_t>{2, 0, 1});  // t^2 + 2
  for (std::uint64_t i = 1; i < 25; ++i) {
    FqElem x = F.at(i);
    REQUIRE(F.mul(x, F.inv(x)) == F.one());
    REQUIRE(F.pow(x, 24) == F.one());
  }
}

TEST_CASE("polynomial arithmetic") {
  Field F(3);
  Poly a = pfrom_ints(F, {1, 1});  // u + 1
  Poly b = pfrom_ints(F, {2, 1});  // u + 2
  Poly prod = pmul(F, a, b);
  REQUIRE(prod == pfrom_ints(F, {2, 0, 1}));  // u^2 + 2 over F_3
  REQUIRE(pdeg(prod) == Ord(2));
  REQUIRE(pdeg(Poly{}).is_neg_inf());
  REQUIRE(peval(F, prod, F.one()) == F.zero());
  auto [q, r] = pdivrem(F, prod, a);
  REQUIRE(q == b);
  REQUIRE(pis_zero(r));
  auto [q2, r2] = pdivrem(F, pfrom_ints(F, {1, 0, 1}), a);  // u^2+1 = (u+1)(u+2) + 2
  REQUIRE(q2 == b);
  REQUIRE(r2 == pfrom_ints(F, {2}));
  REQUIRE_THROWS_AS(pdivrem(F, a, Poly{}), std::domain_error);

  Field F5(5);
  Poly g = pgcd_monic(F5, pfrom_ints(F5, {4, 0, 1}), pfrom_ints(F5, {4, 1}));
  REQUIRE(g == pfrom_ints(F5, {4, 1}));  // gcd(u^2-1, u-1) = u-1, monic
  REQUIRE(pis_monic(g));

  // Box enumeration: q^N distinct polynomials of degree < N.
  std::set<Poly> seen;
  for (std::uint64_t i = 0; i < 9; ++i) seen.insert(poly_from_index(F, i, 2));
  REQUIRE(seen.size() == 9);
  REQUIRE(poly_box_size(F, 2) == BigInt(9));
  REQUIRE(poly_str(F, prod) == "u^2+2");
}

TEST_CASE("laurent numbers: exact values") {
  Field F(3);
  LaurentNum x = LaurentNum::from_poly(pfrom_ints(F, {1, 1}));
  REQUIRE(x.is_exact());
  REQUIRE(x.coeff_at(1) == F.one());
  REQUIRE(x.coeff_at(0) == F.one());
  REQUIRE(x.coeff_at(-5) == F.zero());
  REQUIRE(x.abs_exponent() == Ord(1));
  REQUIRE_FALSE(x.in_torus());
  LaurentNum y = LaurentNum::from_poly(pfrom_ints(F, {2, 1}));
  LaurentNum prod = lmul(F, x, y);
  REQUIRE(prod == LaurentNum::from_poly(pfrom_ints(F, {2, 0, 1})));
  REQUIRE(lmul(F, LaurentNum::monomial(F.one(), -1), LaurentNum::monomial(F.one(), 1)) ==
          LaurentNum::monomial(F.one(), 0));
  LaurentNum z = lsub(F, prod, prod);
  REQUIRE(z.is_zero());
  REQUIRE(z.abs_exponent().is_neg_inf());
  REQUIRE(z.abs_less_than(-1000));
}

TEST_CASE("laurent numbers: geometric expansion of 1/(u-1)") {
  Field F(3);
  // 1/(u-1) = u^-1 + u^-2 + u^-3 + ... over F_3.
  LaurentNum inv = poly_quotient_expand(F, pfrom_ints(F, {1}), pfrom_ints(F, {-1, 1}), -4);
  REQUIRE_FALSE(inv.is_exact());
  REQUIRE(inv.floor() == Ord(-4));
  for (long long e = -1; e >= -4; --e) REQUIRE(inv.coeff_at(e) == F.one());
  REQUIRE(inv.coeff_at(3) == F.zero());
  REQUIRE_THROWS_AS(inv.coeff_at(-5), InsufficientPrecision);
  REQUIRE(inv.in_torus());
  // Multiplying back by (u-1) gives 1 up to the tracked precision.
  LaurentNum back = lmul(F, inv, LaurentNum::from_poly(pfrom_ints(F, {-1, 1})));
  REQUIRE(back.coeff_at(0) == F.one());
  for (long long e = -1; e >= -3; --e) REQUIRE(back.coeff_at(e) == F.zero());
  REQUIRE(back.floor() == Ord(-3));  // one digit of precision spent on the product

  // Same expansion through the generic reciprocal.
  LaurentNum d = LaurentNum::from_poly(pfrom_ints(F, {-1, 1}));
  LaurentNum inv2 = linv_to(F, d, -4);
  REQUIRE(inv2 == inv.truncated_to(-4));
}

TEST_CASE("laurent numbers: exact division detected") {
  Field F(3);
  LaurentNum q = poly_quotient_expand(F, pfrom_ints(F, {2, 0, 1}), pfrom_ints(F, {1, 1}), -5);
  REQUIRE(q.is_exact());
  REQUIRE(q == LaurentNum::from_poly(pfrom_ints(F, {2, 1})));
  // Exact monomial divisor: exact reciprocal regardless of target.
  LaurentNum m = linv_to(F, LaurentNum::monomial(F.from_int(2), 3), -10);
  REQUIRE(m.is_exact());
  REQUIRE(m == LaurentNum::monomial(F.from_int(2), -3));  // 1/2 = 2 mod 3
}

TEST_CASE("laurent numbers: precision floors propagate") {
  Field F(3);
  LaurentNum small = LaurentNum::zero_to(-2);
  REQUIRE_THROWS_AS(small.is_zero(), InsufficientPrecision);
  REQUIRE_THROWS_AS(small.abs_exponent(), InsufficientPrecision);
  REQUIRE(small.abs_less_than(-2));  // ord <= -3 < -2
  REQUIRE_THROWS_AS(small.abs_less_than(-5), InsufficientPrecision);

  LaurentNum a = ladd(F, small, LaurentNum::monomial(F.from_int(2), -1));
  REQUIRE(a.coeff_at(-1) == F.from_int(2));
  REQUIRE(a.floor() == Ord(-2));
  REQUIRE_THROWS_AS(a.coeff_at(-3), InsufficientPrecision);

  // Truncation forgets digits; the difference against the original is
  // then only known to be small.
  LaurentNum e = LaurentNum::monomial(F.one(), -1);
  LaurentNum t = e.truncated_to(-3);
  REQUIRE_FALSE(t.is_exact());
  LaurentNum diff = lsub(F, e, t);
  REQUIRE(diff.abs_less_than(-2));
  REQUIRE_THROWS_AS(diff.is_zero(), InsufficientPrecision);
  REQUIRE(t.cell_representative() == e);

  // Multiplication floor: known(a) * tail(b).
  LaurentNum big = LaurentNum::monomial(F.one(), 2);
  LaurentNum prod = lmul(F, big, t);  // floor -3 + top 2 => floor -1
  REQUIRE(prod.floor() == Ord(-1));
  REQUIRE(prod.coeff_at(1) == F.one());

  // 0 * x is exactly 0 even when x carries a floor.
  REQUIRE(lmul(F, LaurentNum(), t).is_zero());
  REQUIRE(lscale(F, t, F.zero()).is_zero());
}

TEST_CASE("laurent numbers: fractional and integer parts") {
  Field F(3);
  // x = u^2 + u + u^-2
  LaurentNum x = ladd(F, LaurentNum::from_poly(pfrom_ints(F, {0, 1, 1})),
                      LaurentNum::monomial(F.one(), -2));
  LaurentNum fx = lfrac(x);
  REQUIRE(fx == LaurentNum::monomial(F.one(), -2));
  REQUIRE(lint_part(x) == pfrom_ints(F, {0, 1, 1}));
  REQUIRE(dist_less_than(x, -1));
  REQUIRE_FALSE(dist_less_than(x, -2));
  REQUIRE_THROWS_AS(lint_part(LaurentNum::zero_to(2)), InsufficientPrecision);
  REQUIRE(lfrac(LaurentNum::from_poly(pfrom_ints(F, {1, 2}))).is_zero());
}

TEST_CASE("division errors") {
  Field F(3);
  REQUIRE_THROWS_AS(linv_to(F, LaurentNum(), -2), DivisionByZero);
  REQUIRE_THROWS_AS(linv_to(F, LaurentNum::zero_to(-3), -2), InsufficientPrecision);
  REQUIRE_THROWS_AS(poly_quotient_expand(F, pfrom_ints(F, {1}), Poly{}, -2), DivisionByZero);
  REQUIRE_THROWS_MATCHES(linv_to(F, LaurentNum(), -2), DivisionByZero,
                         Catch::Matchers::Message("division by zero"));
}

TEST_CASE("work budget refuses oversized enumerations") {
  Budget b(BigInt(1000), BigInt(50));
  REQUIRE_NOTHROW(b.check_box(BigInt(1000), "test"));
  REQUIRE_THROWS_AS(b.check_box(BigInt(1001), "test"), BudgetExceeded);
  REQUIRE_THROWS_WITH(b.check_grid(BigInt(51), "test"),
                      Catch::Matchers::ContainsSubstring("budget exceeded"));
}

TEST_CASE("deterministic rng") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  Rng c(42);
  Rng d = c.fork();
  bool differs = false;
  for (int i = 0; i < 10; ++i)
    if (c.next_u64() != d.next_u64()) differs = true;
  REQUIRE(differs);
  Rng e(1);
  for (int i = 0; i < 200; ++i) REQUIRE(e.below(7) < 7);
}
