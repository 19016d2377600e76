#include <catch2/catch_amalgamated.hpp>

#include "ffmoduli/weyl.hpp"

using namespace ffmoduli;

namespace {
// P(y) = y^2 in one variable.
PointEval square_box() {
  return [](const Field& F, const std::vector<FqElem>& x) {
    return F.mul(x[0], x[0]);
  };
}
}  // namespace

TEST_CASE("differencing the square gives the polarized product") {
  // P(y) = y^2, t = 2: the alternating sum over {0,1}^2 is
  // (y1+y2)^2 - y1^2 - y2^2 + 0 = 2 y1 y2, swept over all of F_q^2.
  for (std::uint32_t q : {3u, 5u, 7u}) {
    Field F(q);
    for (std::uint64_t a = 0; a < q; ++a)
      for (std::uint64_t b = 0; b < q; ++b) {
        const FqElem y1 = F.at(a), y2 = F.at(b);
        const FqElem got = weyl_difference(F, square_box(), {{y1}, {y2}});
        REQUIRE(got == F.mul(F.from_int(2), F.mul(y1, y2)));
      }
  }
}

TEST_CASE("diagonal cube by hand") {
  // P(y) = y^3, t = 3 on the diagonal: (-1)^3 3! y^3 = -6 y^3, which is
  // y^3 over F_7.
  Field F(7);
  const PointEval cube = [](const Field& G, const std::vector<FqElem>& x) {
    return G.mul(x[0], G.mul(x[0], x[0]));
  };
  for (std::uint64_t a = 0; a < 7; ++a) {
    const FqElem y = F.at(a);
    const FqElem got = weyl_difference(F, cube, {{y}, {y}, {y}});
    REQUIRE(got == F.mul(y, F.mul(y, y)));
  }
}

TEST_CASE("one-step difference is a plain difference") {
  Field F(5);
  const FqElem z = F.from_int(3);
  // t = 1: the empty subset carries the + sign, so P_1(z) = P(0) - P(z).
  const FqElem got = weyl_difference(F, square_box(), {{z}});
  REQUIRE(got == F.neg(F.mul(z, z)));
}

TEST_CASE("degree-plus-one differences annihilate random polynomials") {
  for (std::uint32_t q : {3u, 5u}) {
    Field F(q);
    Rng rng(20260816 + q);
    const WeylBatteryReport rep = weyl_zero_battery(F, rng, 100);
    REQUIRE(rep.trials == 100);
    REQUIRE(rep.failures == 0);
    REQUIRE(rep.all_pass());
  }
}

TEST_CASE("diagonal identity across degrees and extensions") {
  // p = 3 forces interpolation through F_9 for t = 3, 4; p = 5 stays in
  // the prime field for every degree up to 4.
  for (std::uint32_t p : {3u, 5u}) {
    Rng rng(97 + p);
    const WeylBatteryReport rep = weyl_diagonal_battery(p, rng, 100);
    REQUIRE(rep.trials == 400);  // 100 points for each t = 1..4
    REQUIRE(rep.failures == 0);
  }
}

TEST_CASE("homogeneous component extraction is exact") {
  // P = x^2 + 3x + 1 (integer coefficients): the degree-2 component at
  // z is z^2, the degree-1 component 3z, the degree-0 component 1.
  Field F(5);
  const MixedPoly P(1, {{{2}, 1}, {{1}, 3}, {{0}, 1}});
  REQUIRE(P.degree() == 2);
  for (std::uint64_t a = 1; a < 5; ++a) {
    const FqElem z = F.at(a);
    REQUIRE(homogeneous_component_at(F, P.as_eval(), 2, {z}) == F.mul(z, z));
  }
  // Too few nodes in the field is a refused contract, not a wrong answer.
  Field F3(3);
  REQUIRE_THROWS_AS(homogeneous_component_at(F3, P.as_eval(), 4, {F3.one()}),
                    ParameterContract);
}

TEST_CASE("weyl operator contracts") {
  Field F(3);
  REQUIRE_THROWS_AS(weyl_difference(F, square_box(), {}), ParameterContract);
  REQUIRE_THROWS_AS(weyl_difference(F, square_box(), {{F.one()}, {F.one(), F.one()}}),
                    ParameterContract);
  const std::vector<std::vector<FqElem>> too_many(31, {F.one()});
  REQUIRE_THROWS_AS(weyl_difference(F, square_box(), too_many), ParameterContract);
  REQUIRE_THROWS_AS(MixedPoly(0, {}), ParameterContract);
  REQUIRE_THROWS_AS(MixedPoly(2, {{{1}, 1}}), ParameterContract);
}
