#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "ffmoduli/approx.hpp"
#include "ffmoduli/exp_sums.hpp"
#include "ffmoduli/rng.hpp"

using namespace ffmoduli;

namespace {

// Exact torus point with `depth` random fractional digits.
LaurentNum random_torus_point(const Field& F, Rng& rng, long long depth) {
  std::vector<FqElem> w(static_cast<std::size_t>(depth));
  for (auto& c : w) c = F.random(rng);
  return LaurentNum::from_window(std::move(w), -1, Ord::neg_inf());
}

// ||g*alpha|| as an extended exponent (neg_inf for exact zero).
Ord dist_exponent(const Field& F, const Poly& g, const LaurentNum& alpha) {
  const LaurentNum frac = lfrac(lmul(F, LaurentNum::from_poly(g), alpha));
  if (frac.is_zero()) return Ord::neg_inf();
  return frac.abs_exponent();
}

// All monic polynomials of degree exactly k.
std::vector<Poly> monic_of_degree(const Field& F, long long k) {
  std::vector<Poly> out;
  const std::uint64_t lower = bigint_to_u64(poly_box_size(F, static_cast<int>(k)));
  for (std::uint64_t idx = 0; idx < lower; ++idx) {
    Poly g = poly_from_index(F, idx, static_cast<int>(k));
    g.resize(static_cast<std::size_t>(k) + 1);
    g[static_cast<std::size_t>(k)] = F.one();
    out.push_back(std::move(g));
  }
  return out;
}

// Smallest ||g*alpha|| over every monic g of degree <= cap.
Ord best_distance_exhaustive(const Field& F, const LaurentNum& alpha, long long cap) {
  Ord best(1);  // sentinel above any achievable distance (all are < q^0)
  bool first = true;
  for (long long k = 0; k <= cap; ++k) {
    for (const Poly& g : monic_of_degree(F, k)) {
      const Ord d = dist_exponent(F, g, alpha);
      if (first || d < best) best = d;
      first = false;
    }
  }
  return best;
}

// Arc membership by brute force over every admissible denominator.
bool arc_member_exhaustive(const Field& F, const LaurentNum& alpha, const ArcParams& ap) {
  const long long cap = arc_degree_cap(ap);
  const long long T = arc_threshold(ap);
  for (long long k = 0; k <= cap; ++k)
    for (const Poly& g : monic_of_degree(F, k))
      if (dist_less_than(lmul(F, LaurentNum::from_poly(g), alpha), T)) return true;
  return false;
}

}  // namespace

TEST_CASE("hand values for rational approximation") {
  const Field F(3);

  SECTION("alpha = 1/u is recovered exactly") {
    const LaurentNum alpha = LaurentNum::monomial(F.one(), -1);
    const RationalApprox r = rational_approx(F, alpha, 1);
    const Poly u_poly{FqElem(), F.one()};
    REQUIRE(r.g == u_poly);
    REQUIRE(r.a == Poly{F.one()});
    REQUIRE(r.residual.is_zero());
  }

  SECTION("alpha already smaller than q^-m keeps the trivial fraction") {
    const LaurentNum alpha = LaurentNum::monomial(F.one(), -2);
    const RationalApprox r = rational_approx(F, alpha, 1);
    REQUIRE(r.g == Poly{F.one()});
    REQUIRE(r.a.empty());
    REQUIRE(r.residual == alpha);
  }

  SECTION("alpha = 0 at any level") {
    const RationalApprox r = rational_approx(F, LaurentNum(), 3);
    REQUIRE(r.g == Poly{F.one()});
    REQUIRE(r.a.empty());
    REQUIRE(r.residual.is_zero());
  }
}

TEST_CASE("rational approximation satisfies its contract on random points") {
  for (const unsigned p : {3u, 5u}) {
    const Field F(p);
    Rng rng(9000 + p);
    const int trials_per_level = (p == 3) ? 250 : 50;
    for (int m = 1; m <= 4; ++m) {
      for (int t = 0; t < trials_per_level; ++t) {
        const LaurentNum alpha = random_torus_point(F, rng, 2 * m + 1);
        const RationalApprox r = rational_approx(F, alpha, m);
        REQUIRE(pis_monic(r.g));
        REQUIRE(pdeg(r.g).value() <= m);
        REQUIRE(r.residual.abs_less_than(-m));
        if (!r.a.empty()) REQUIRE(pgcd_monic(F, r.a, r.g) == Poly{F.one()});
        // Residual really is g*alpha - a.
        const LaurentNum check = lsub(
            F, lmul(F, LaurentNum::from_poly(r.g), alpha), LaurentNum::from_poly(r.a));
        REQUIRE(check == r.residual);
      }
    }
  }
}

TEST_CASE("rational approximation is optimal among all monic denominators") {
  // The returned distance |g*alpha - a| must equal the minimum of
  // ||g'*alpha|| over every monic g' of degree <= m.
  for (const unsigned p : {3u, 5u}) {
    const Field F(p);
    Rng rng(9100 + p);
    const int max_m = (p == 3) ? 4 : 2;
    const int trials = (p == 3) ? 125 : 50;
    for (int m = 1; m <= max_m; ++m) {
      for (int t = 0; t < trials; ++t) {
        const LaurentNum alpha = random_torus_point(F, rng, 2 * m + 1);
        const RationalApprox r = rational_approx(F, alpha, m);
        const Ord mine = r.residual.is_zero() ? Ord::neg_inf() : r.residual.abs_exponent();
        REQUIRE(mine == best_distance_exhaustive(F, alpha, m));
      }
    }
  }
}

TEST_CASE("rational approximation rejects bad inputs") {
  const Field F(3);
  const LaurentNum inside = LaurentNum::monomial(F.one(), -1);
  REQUIRE_THROWS_AS(rational_approx(F, inside, -1), ParameterContract);
  REQUIRE_THROWS_AS(rational_approx(F, LaurentNum::monomial(F.one(), 0), 1),
                    ParameterContract);
  // m = 1 needs digits down to u^-3; a window stopping at u^-2 cannot decide.
  REQUIRE_THROWS_AS(rational_approx(F, LaurentNum::zero_to(-2), 1), InsufficientPrecision);
  REQUIRE_THROWS_WITH(rational_approx(F, LaurentNum::zero_to(-2), 1),
                      Catch::Matchers::ContainsSubstring("precision"));
}

TEST_CASE("arc membership: zero is always on the arcs") {
  const Field F(3);
  for (int e = 1; e <= 2; ++e) {
    const FSystem sys(F, HyperForm(2, 2, {{{1, 1}, 1}}), e);
    for (int j = 0; j < sys.j_count(); ++j) {
      const BidegreeBlock b = bidegree_block(sys.d(), sys.e(), j);
      for (int J = 1; J <= 3; ++J) {
        const ArcMembership r = major_arc_test(F, LaurentNum(), ArcParams::for_block(b, J));
        REQUIRE(r.member);
        REQUIRE(r.g == Poly{F.one()});
        REQUIRE(r.a.empty());
      }
    }
  }
}

TEST_CASE("arc membership agrees with exhaustive search over denominators") {
  const Field F(3);

  SECTION("quadratic block, both levels, full cell grid") {
    const BidegreeBlock b = bidegree_block(2, 1, 1);  // d1 = d2 = 1, P1 = 1, P2 = 2
    for (int J = 1; J <= 2; ++J) {
      const ArcParams ap = ArcParams::for_block(b, J);
      const long long depth = std::max(1LL, arc_degree_cap(ap) - arc_threshold(ap));
      const std::uint64_t cells = bigint_to_u64(
          bigint_pow(BigInt(F.q()), static_cast<unsigned long long>(depth)));
      for (std::uint64_t idx = 0; idx < cells; ++idx) {
        std::vector<FqElem> w(static_cast<std::size_t>(depth));
        std::uint64_t rest = idx;
        for (std::size_t mdig = 0; mdig < w.size(); ++mdig) {
          w[w.size() - 1 - mdig] = F.at(rest % F.q());
          rest /= F.q();
        }
        const LaurentNum alpha = LaurentNum::from_window(std::move(w), -1, Ord::neg_inf());
        REQUIRE(major_arc_test(F, alpha, ap).member == arc_member_exhaustive(F, alpha, ap));
      }
    }
  }

  SECTION("cubic block with denominators up to degree two") {
    const BidegreeBlock b = bidegree_block(3, 1, 2);  // d1 = 1, d2 = 2, P1 = 1, P2 = 2
    const ArcParams ap = ArcParams::for_block(b, 2);
    REQUIRE(arc_degree_cap(ap) == 2);
    Rng rng(777);
    for (int t = 0; t < 200; ++t) {
      const LaurentNum alpha =
          random_torus_point(F, rng, arc_degree_cap(ap) - arc_threshold(ap));
      REQUIRE(major_arc_test(F, alpha, ap).member == arc_member_exhaustive(F, alpha, ap));
    }
  }
}

TEST_CASE("arc witnesses satisfy the defining inequality") {
  const Field F(3);
  const BidegreeBlock b = bidegree_block(3, 1, 2);
  const ArcParams ap = ArcParams::for_block(b, 2);
  Rng rng(778);
  int witnesses = 0;
  for (int t = 0; t < 300; ++t) {
    const LaurentNum alpha = random_torus_point(F, rng, 6);
    const ArcMembership r = major_arc_test(F, alpha, ap);
    if (!r.member) continue;
    ++witnesses;
    REQUIRE(pis_monic(r.g));
    REQUIRE(pdeg(r.g).value() <= r.g_degree_cap);
    if (!r.a.empty()) {
      REQUIRE(pdeg(r.a) < pdeg(r.g));
      REQUIRE(pgcd_monic(F, r.a, r.g) == Poly{F.one()});
    }
    const LaurentNum residual = lsub(
        F, lmul(F, LaurentNum::from_poly(r.g), alpha), LaurentNum::from_poly(r.a));
    REQUIRE(residual.abs_less_than(r.threshold));
  }
  REQUIRE(witnesses > 0);
}

TEST_CASE("at the Dirichlet level the arcs cover the whole torus") {
  const Field F(3);

  SECTION("quadratic block") {
    const BidegreeBlock b = bidegree_block(2, 1, 1);
    const ArcParams probe = ArcParams::for_block(b, 1);
    const int Jstar = dirichlet_threshold(probe);
    REQUIRE(Jstar == 2);
    const ArcParams ap = ArcParams::for_block(b, Jstar);
    const long long depth = std::max(1LL, arc_degree_cap(ap) - arc_threshold(ap));
    const ArcGridSweep sweep = major_arc_grid_sweep(F, ap, depth);
    REQUIRE(sweep.members == sweep.points);
  }

  SECTION("cubic blocks") {
    for (int j = 0; j <= 3; ++j) {
      const BidegreeBlock b = bidegree_block(3, 1, j);
      const ArcParams probe = ArcParams::for_block(b, 1);
      const ArcParams ap = ArcParams::for_block(b, dirichlet_threshold(probe));
      const long long depth = std::max(1LL, arc_degree_cap(ap) - arc_threshold(ap));
      const ArcGridSweep sweep = major_arc_grid_sweep(F, ap, depth);
      REQUIRE(sweep.members == sweep.points);
    }
  }
}

TEST_CASE("arc measure at the lowest level matches the covering bound") {
  // At J = 1 only g = 1 is admissible, so the arc set is exactly the
  // ball |alpha| < q^T of measure q^T; the general covering bound
  // q^(-d1*P1-d2*P2+(d-1)J+(d-1)(J-1)) is met with equality here.
  const Field F(3);
  const BidegreeBlock b = bidegree_block(2, 1, 1);
  const ArcParams ap = ArcParams::for_block(b, 1);
  const long long T = arc_threshold(ap);
  const long long depth = std::max(1LL, arc_degree_cap(ap) - T);
  const ArcGridSweep sweep = major_arc_grid_sweep(F, ap, depth);
  // members / q^depth == q^T  <=>  members == q^(depth + T)
  REQUIRE(depth + T >= 0);
  REQUIRE(sweep.members ==
          bigint_pow(BigInt(F.q()), static_cast<unsigned long long>(depth + T)));
}

TEST_CASE("arc membership is constant on precision cells") {
  const Field F(3);
  const BidegreeBlock b = bidegree_block(2, 1, 1);
  const ArcParams ap = ArcParams::for_block(b, 2);
  const long long depth = arc_degree_cap(ap) - arc_threshold(ap);
  Rng rng(779);
  for (int t = 0; t < 100; ++t) {
    const LaurentNum cell = random_torus_point(F, rng, depth);
    const bool base = major_arc_test(F, cell, ap).member;
    // Deepen the same cell with arbitrary extra digits: the verdict
    // must not move.
    for (int extra = 0; extra < 5; ++extra) {
      std::vector<FqElem> w;
      for (long long e = -1; e >= -depth; --e) w.push_back(cell.coeff_at(e));
      for (int k = 0; k < 3; ++k) w.push_back(F.random(rng));
      const LaurentNum deeper = LaurentNum::from_window(std::move(w), -1, Ord::neg_inf());
      REQUIRE(major_arc_test(F, deeper, ap).member == base);
    }
    // A window of exactly the cell depth is decidable and agrees.
    std::vector<FqElem> w;
    for (long long e = -1; e >= -depth; --e) w.push_back(cell.coeff_at(e));
    const LaurentNum windowed = LaurentNum::from_window(std::move(w), -1, Ord(-depth));
    REQUIRE(major_arc_test(F, windowed, ap).member == base);
  }
}

TEST_CASE("arc layer rejects bad inputs") {
  const Field F(3);
  const BidegreeBlock b = bidegree_block(2, 1, 1);
  const ArcParams ap2 = ArcParams::for_block(b, 2);  // needs 2 digits
  REQUIRE_THROWS_AS(major_arc_test(F, LaurentNum::zero_to(-1), ap2), InsufficientPrecision);
  REQUIRE_THROWS_AS(major_arc_test(F, LaurentNum::monomial(F.one(), 0), ap2),
                    ParameterContract);
  REQUIRE_THROWS_AS(major_arc_grid_sweep(F, ap2, 0), ParameterContract);
  REQUIRE_THROWS_WITH(major_arc_grid_sweep(F, ap2, 2, Budget(4, 4)),
                      Catch::Matchers::ContainsSubstring("budget exceeded"));
}
