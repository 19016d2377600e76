#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "ffmoduli/dichotomy.hpp"

using namespace ffmoduli;

namespace {

HyperForm hyperbola() { return HyperForm(2, 2, {{{1, 1}, 1}}); }
HyperForm sum_sq() { return HyperForm(2, 2, {{{2, 0}, 1}, {{0, 2}, 1}}); }
HyperForm degenerate_square() { return HyperForm(2, 2, {{{2, 0}, 1}}); }
HyperForm pair_form() { return HyperForm(4, 2, {{{1, 1, 0, 0}, 1}, {{0, 0, 1, 1}, 1}}); }
HyperForm diag_cubic() { return HyperForm(2, 3, {{{3, 0}, 1}, {{0, 3}, 1}}); }

}  // namespace

TEST_CASE("sigma is exact by rank and nullity for bilinear blocks") {
  const Field F(3);

  SECTION("invertible pairing: sigma = n") {
    const SigmaReport r = sigma_estimate(F, hyperbola(), 1, 1);
    REQUIRE(r.exact);
    REQUIRE(r.ambient_dim == 2);
    REQUIRE(r.dim_estimate == 0);
    REQUIRE(r.sigma == 2);
  }

  SECTION("invertible pairing in four variables: sigma = n") {
    const SigmaReport r = sigma_estimate(F, pair_form(), 1, 1);
    REQUIRE(r.exact);
    REQUIRE(r.sigma == 4);
  }

  SECTION("rank-deficient control: sigma = n - 1") {
    const SigmaReport r = sigma_estimate(F, degenerate_square(), 1, 1);
    REQUIRE(r.exact);
    REQUIRE(r.dim_estimate == 1);
    REQUIRE(r.sigma == 1);
  }

  SECTION("pure y-space block of a diagonal quadric") {
    const SigmaReport r = sigma_estimate(F, sum_sq(), 1, 0);
    REQUIRE(r.exact);
    REQUIRE(r.ambient_dim == 2);
    REQUIRE(r.sigma == 2);
  }

  SECTION("sigma = n on the smooth quadric over the larger field") {
    const Field F5(5);
    const SigmaReport r = sigma_estimate(F5, pair_form(), 1, 1);
    REQUIRE(r.exact);
    REQUIRE(r.sigma == 4);
  }
}

TEST_CASE("exact-path extension counts match the kernel dimension") {
  const Field F(3);
  // dim 0 kernel: one point over every extension.
  const SigmaReport inv = sigma_estimate(F, hyperbola(), 1, 1, 2);
  REQUIRE(inv.counts == std::vector<BigInt>{1, 1});
  // dim 1 kernel: q^m points over the degree-m extension.
  const SigmaReport def = sigma_estimate(F, degenerate_square(), 1, 1, 2);
  REQUIRE(def.counts == std::vector<BigInt>{3, 9});
}

TEST_CASE("sigma by growth exponent for the diagonal cubic") {
  const Field F(7);
  // Block j=2 has bidegree (1,2): the critical set in (x, y)-space is
  // cut out by x_i y_i = 0, a union of four planes, so the count over
  // a field with Q elements is (2Q-1)^2 and the dimension is 2.
  const SigmaReport r = sigma_estimate(F, diag_cubic(), 1, 2, 2);
  REQUIRE_FALSE(r.exact);
  REQUIRE(r.ambient_dim == 4);
  REQUIRE(r.counts == std::vector<BigInt>{BigInt(13 * 13), BigInt(97 * 97)});
  REQUIRE(r.dim_estimate == 2);
  REQUIRE(r.sigma == 2);
  REQUIRE(r.sigma >= 2);  // the smoothness lower bound sigma >= n
}

TEST_CASE("growth path on blocks with a zero-dimensional critical set") {
  const Field F(7);
  // j=1 has bidegree (2,1): equations x_i^2 = 0 in x-space; j=0 and
  // j=3 have bidegree (0,3): equations y_i^2 = 0 in y-space. All three
  // critical sets are the origin.
  for (const int j : {0, 1, 3}) {
    const SigmaReport r = sigma_estimate(F, diag_cubic(), 1, j, 2);
    REQUIRE_FALSE(r.exact);
    REQUIRE(r.ambient_dim == 2);
    REQUIRE(r.counts == std::vector<BigInt>{1, 1});
    REQUIRE(r.dim_estimate == 0);
    REQUIRE(r.sigma == 2);
  }
}

TEST_CASE("sigma estimation failure modes") {
  const Field F7(7);
  REQUIRE_THROWS_AS(sigma_estimate(F7, diag_cubic(), 1, 2, 0), ParameterContract);
  // A single extension cannot witness growth.
  REQUIRE_THROWS_AS(sigma_estimate(F7, diag_cubic(), 1, 2, 1), DimNotStabilized);
  REQUIRE_THROWS_WITH(sigma_estimate(F7, diag_cubic(), 1, 2, 1),
                      Catch::Matchers::ContainsSubstring("dimension estimate did not stabilize"));
  REQUIRE_THROWS_WITH(sigma_estimate(F7, diag_cubic(), 1, 2, 2, Budget(100, 100)),
                      Catch::Matchers::ContainsSubstring("budget exceeded"));
}

TEST_CASE("dichotomy at alpha = 0 lands on the arcs") {
  const Field F(3);
  const HyperForm f = hyperbola();
  for (int j = 0; j <= 2; ++j) {
    const BidegreeForm G(F, f, 1, j);
    const SigmaReport sig = sigma_estimate(F, f, 1, j);
    const ArcParams ap = ArcParams::for_block(G.block(), 1);
    const DichotomyReport r = dichotomy_check(F, G, ap, LaurentNum(), sig);
    REQUIRE(r.on_arc);
    REQUIRE((r.outcome == DichotomyOutcome::kOnArc || r.outcome == DichotomyOutcome::kBoth));
    REQUIRE(r.E_value == r.E_zero);
  }
}

TEST_CASE("dichotomy full grid sweep on the quadratic instance") {
  const Field F(3);
  const HyperForm f = hyperbola();

  SECTION("the bilinear block, level 1") {
    const BidegreeForm G(F, f, 1, 1);
    const SigmaReport sig = sigma_estimate(F, f, 1, 1);
    const ArcParams ap = ArcParams::for_block(G.block(), 1);
    REQUIRE(ap.d1 == 1);
    REQUIRE(ap.d2 == 1);
    REQUIRE(ap.P1 == 1);
    REQUIRE(ap.P2 == 2);
    DichotomySweep sweep;
    REQUIRE_NOTHROW(sweep = dichotomy_grid_sweep(F, G, ap, sig));
    REQUIRE(sweep.cells == 9);
    REQUIRE(sweep.bound_only + sweep.arc_only + sweep.both == sweep.cells);
    // alpha = 0 is on the arcs and (i) fails there (E = E(0) > E(0)/q^sigma).
    REQUIRE(sweep.arc_only + sweep.both >= 1);
    // Off-arc cells exist at level 1 and all satisfy the bound.
    REQUIRE(sweep.bound_only >= 1);
  }

  SECTION("the pure y-space blocks hold as well") {
    for (const auto& [j, J] : std::vector<std::pair<int, int>>{{0, 1}, {2, 1}, {2, 2}}) {
      const BidegreeForm G(F, f, 1, j);
      const SigmaReport sig = sigma_estimate(F, f, 1, j);
      const ArcParams ap = ArcParams::for_block(G.block(), J);
      REQUIRE_NOTHROW(dichotomy_grid_sweep(F, G, ap, sig));
    }
  }

  SECTION("the smooth diagonal quadric") {
    const BidegreeForm G(F, sum_sq(), 1, 1);
    const SigmaReport sig = sigma_estimate(F, sum_sq(), 1, 1);
    const ArcParams ap = ArcParams::for_block(G.block(), 1);
    DichotomySweep sweep;
    REQUIRE_NOTHROW(sweep = dichotomy_grid_sweep(F, G, ap, sig));
    REQUIRE(sweep.cells == 9);
  }
}

TEST_CASE("dichotomy contracts") {
  const Field F(3);
  const HyperForm f = hyperbola();
  const BidegreeForm G(F, f, 1, 1);
  const SigmaReport sig = sigma_estimate(F, f, 1, 1);
  // J = 2 > P1 = 1 is outside the proved range.
  REQUIRE_THROWS_AS(
      dichotomy_check(F, G, ArcParams::for_block(G.block(), 2), LaurentNum(), sig),
      ParameterContract);
}

TEST_CASE("shell integral: guard path when the moment hypothesis fails") {
  const Field F(3);
  const HyperForm f = hyperbola();
  const BidegreeForm G(F, f, 1, 1);
  const SigmaReport sig = sigma_estimate(F, f, 1, 1);
  const ArcParams ap = ArcParams::for_block(G.block(), 1);
  // sigma*rho = 2*0.5 = 1 <= 2(d-1) = 2: bounds are meaningless.
  const ShellIntegralReport rep = arc_shell_integral(F, G, ap, 0.5L, sig);
  REQUIRE_FALSE(rep.delta_positive);
  REQUIRE_FALSE(rep.hypotheses_ok);
  REQUIRE(rep.note == "hypotheses not satisfied");
  // The decomposition itself is still computed and consistent.
  long double sum = rep.base_integral;
  for (const ShellEntry& s : rep.shells) sum += s.integral;
  REQUIRE_THAT(static_cast<double>(sum),
               Catch::Matchers::WithinRel(static_cast<double>(rep.total_integral), 1e-12));
}

TEST_CASE("shell integral on the quadratic instance") {
  const Field F(3);
  const HyperForm f = hyperbola();
  const BidegreeForm G(F, f, 1, 1);
  const SigmaReport sig = sigma_estimate(F, f, 1, 1);
  const ArcParams ap = ArcParams::for_block(G.block(), 1);

  for (const long double rho : {2.0L, 3.0L}) {
    const ShellIntegralReport rep = arc_shell_integral(F, G, ap, rho, sig);
    INFO("rho = " << static_cast<double>(rho));
    REQUIRE(rep.delta_positive);
    // For bidegree (1,1) with P2 = P1 + 1 the covering hypothesis on
    // P1 cannot hold; the bounds are still expected to pass here.
    REQUIRE_FALSE(rep.p1_condition);
    REQUIRE(rep.dirichlet_level == 2);
    REQUIRE(rep.digits == 2);

    REQUIRE(rep.base_pass);
    for (const ShellEntry& s : rep.shells) REQUIRE(s.pass);
    REQUIRE(rep.total_pass);
    REQUIRE(rep.all_pass);

    // The shell at the covering level is empty.
    REQUIRE(rep.shells.back().J == rep.dirichlet_level);
    REQUIRE(rep.shells.back().cells == 0);
    REQUIRE(rep.shells.back().integral == 0.0L);

    // Decomposition sums to the total.
    long double sum = rep.base_integral;
    for (const ShellEntry& s : rep.shells) sum += s.integral;
    REQUIRE_THAT(static_cast<double>(sum),
                 Catch::Matchers::WithinRel(static_cast<double>(rep.total_integral), 1e-12));
  }
}

TEST_CASE("shell integral hand values at rho = 2") {
  // Base piece: only the zero cell lies on the level-1 arcs, where
  // E = E(0) = 729; the cell has measure 1/9, so the base integral is
  // 729^2/9 = 59049 and meets its bound with equality.
  const Field F(3);
  const HyperForm f = hyperbola();
  const BidegreeForm G(F, f, 1, 1);
  const SigmaReport sig = sigma_estimate(F, f, 1, 1);
  const ArcParams ap = ArcParams::for_block(G.block(), 1);
  const ShellIntegralReport rep = arc_shell_integral(F, G, ap, 2.0L, sig);
  REQUIRE_THAT(static_cast<double>(rep.base_integral),
               Catch::Matchers::WithinRel(59049.0, 1e-12));
  REQUIRE_THAT(static_cast<double>(rep.base_bound),
               Catch::Matchers::WithinRel(59049.0, 1e-12));
  // Shell 1 bound: (d-1)^(n rho) E0^rho q^(-3+1-delta) with delta = 2.
  REQUIRE_THAT(static_cast<double>(rep.shells.front().bound),
               Catch::Matchers::WithinRel(6561.0, 1e-12));
}

TEST_CASE("shell integral contracts") {
  const Field F(3);
  const HyperForm f = hyperbola();
  const BidegreeForm G(F, f, 1, 1);
  const SigmaReport sig = sigma_estimate(F, f, 1, 1);
  const ArcParams ap = ArcParams::for_block(G.block(), 1);
  REQUIRE_THROWS_AS(arc_shell_integral(F, G, ap, 0.0L, sig), ParameterContract);
  REQUIRE_THROWS_AS(arc_shell_integral(F, G, ap, -1.0L, sig), ParameterContract);
  REQUIRE_THROWS_WITH(arc_shell_integral(F, G, ap, 2.0L, sig, 0, Budget(4, 4)),
                      Catch::Matchers::ContainsSubstring("budget exceeded"));
}
