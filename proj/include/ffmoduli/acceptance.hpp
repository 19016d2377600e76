#pragma once
////////////////////////////////////////////////////////////////////////////////
// acceptance.hpp
//
// The acceptance gate: eleven checks, each an exact property with its oracle
// values frozen ahead of time (hand computation, independent enumeration
// scripts, or closed forms), plus one observational trend whose direction was
// fixed by the pre-build oracle runs.  Every check returns a pass/fail verdict
// with a one-line summary; the dedicated binary prints one line per check and
// the command-line driver serializes the same rows as JSON.
//
// The "configured examples" are the five hypersurfaces shipped as JSON files
// under configs/; they are restated here programmatically so the gate needs
// no filesystem access and cannot drift from the shipped files silently (a
// unit test compares the two lists).
////////////////////////////////////////////////////////////////////////////////

#include <chrono>
#include <cstdint>
#include <exception>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "bigint.hpp"
#include "bilinear.hpp"
#include "counting.hpp"
#include "dichotomy.hpp"
#include "exp_sums.hpp"
#include "forms.hpp"
#include "rng.hpp"
#include "shrink.hpp"
#include "smallchar.hpp"
#include "weyl.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// The shipped example hypersurfaces.
//////////////////////////////////////////////////////////////////////

struct ConfiguredExample {
  const char* name;
  std::uint32_t p;
  HyperForm f;
};

inline std::vector<ConfiguredExample> configured_examples() {
  std::vector<ConfiguredExample> out;
  out.push_back({"quadric_q3", 3, HyperForm(2, 2, {{{2, 0}, 1}, {{0, 2}, 1}})});
  out.push_back({"hyperbola_q3", 3, HyperForm(2, 2, {{{1, 1}, 1}})});
  out.push_back({"pair_q3", 3,
                 HyperForm(4, 2, {{{1, 1, 0, 0}, 1}, {{0, 0, 1, 1}, 1}})});
  out.push_back({"pair_q5", 5,
                 HyperForm(4, 2, {{{1, 1, 0, 0}, 1}, {{0, 0, 1, 1}, 1}})});
  out.push_back({"conic_q3", 3,
                 HyperForm(3, 2, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}})});
  return out;
}

//////////////////////////////////////////////////////////////////////
// Result rows.
//////////////////////////////////////////////////////////////////////

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;  // one line: values seen, counts checked
};

struct AcceptanceOptions {
  unsigned threads = 0;        // 0 = auto
  std::uint64_t seed = 20260816;
  Budget budget = Budget();
};

namespace detail {

//////////////////////////////////////////////////////////////////////
// Small shared helpers for the criteria.
//////////////////////////////////////////////////////////////////////

inline void all_degree_exps(unsigned n, unsigned d, std::vector<unsigned>& cur,
                            std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned a = 0; a <= d; ++a) {
    cur.push_back(a);
    all_degree_exps(n, d - a, cur, out);
    cur.pop_back();
  }
}

// A random nonzero form of degree d in n variables over the prime field.
inline HyperForm random_form(const Field& F, Rng& rng, unsigned n, unsigned d) {
  std::vector<std::vector<unsigned>> exps;
  std::vector<unsigned> cur;
  all_degree_exps(n, d, cur, exps);
  for (;;) {
    HyperForm::IntTerms terms;
    bool nonzero = false;
    for (const auto& ev : exps) {
      const long long c = (long long)(rng.below(F.p()));
      if (c != 0) {
        nonzero = true;
        terms.emplace_back(ev, c);
      }
    }
    if (nonzero) return HyperForm(n, d, terms);
  }
}

// An exact torus point with `depth` random leading digits.
inline LaurentNum random_exact_torus(const Field& F, Rng& rng, int depth) {
  std::vector<FqElem> w(static_cast<std::size_t>(depth));
  for (auto& c : w) c = F.random(rng);
  return LaurentNum::from_window(std::move(w), -1, Ord::neg_inf());
}

// |frac(g * alpha)|, the distance from g*alpha to the nearest polynomial.
inline Ord dist_exponent(const Field& F, const Poly& g, const LaurentNum& alpha) {
  return lfrac(lmul(F, LaurentNum::from_poly(g), alpha)).abs_exponent();
}

// Monic polynomial of degree k whose lower coefficients encode idx.
inline Poly monic_from_index(const Field& F, std::uint64_t idx, unsigned k) {
  std::vector<FqElem> c(std::size_t(k) + 1);
  for (unsigned i = 0; i < k; ++i) {
    c[i] = F.at(std::uint32_t(idx % F.q()));
    idx /= F.q();
  }
  c[k] = F.one();
  return c;
}

inline std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << s;
  return os.str();
}

}  // namespace detail

//////////////////////////////////////////////////////////////////////
// Criterion 1: the exhaustive count and the character-sum integral are
// the same integer, and both match the frozen enumeration values.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_exact_integral(const AcceptanceOptions& o) {
  CriterionResult r{1, "exact-integral-identity", false, 0, ""};
  const Field F(3);
  const struct {
    const char* label;
    HyperForm f;
    long long frozen;
  } rows[] = {
      {"x1^2+x2^2", HyperForm(2, 2, {{{2, 0}, 1}, {{0, 2}, 1}}), 1},
      {"x1*x2", HyperForm(2, 2, {{{1, 1}, 1}}), 53},
  };
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    const CountResult c = count_N(F, row.f, 1, CountStrategy::kAuto, o.threads,
                                  o.budget);
    const IntegralResult i = exact_integral_N(F, row.f, 1, o.threads, o.budget);
    const bool here = c.N == BigInt(row.frozen) && i.N == c.N;
    ok = ok && here;
    if (!detail.empty()) detail += ", ";
    detail += std::string(row.label) + ": count=" + bigint_str(c.N) +
              " integral=" + bigint_str(i.N) +
              " frozen=" + std::to_string(row.frozen);
  }
  r.pass = ok;
  r.detail = detail;
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 2: the coefficient-form decomposition identity, on random
// instances across the parameter grid and on one full substitution box.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_decomposition(const AcceptanceOptions& o,
                                               Rng rng) {
  CriterionResult r{2, "decomposition-identity", false, 0, ""};
  long long trials = 0, failures = 0;
  for (unsigned d : {2u, 3u})
    for (int e : {1, 2})
      for (unsigned n : {2u, 3u})
        for (std::uint32_t q : {5u, 7u}) {
          const Field F(q);
          for (int it = 0; it < 100; ++it) {
            const HyperForm f = detail::random_form(F, rng, n, d);
            const FSystem sys(F, f, e);
            const SlotVec t = sys.random_slots(F, rng);
            trials += 1;
            if (!decomposition_check(F, sys, t).pass) failures += 1;
          }
        }
  // Full box: every substitution tuple for the smallest configuration.
  const Field F3(3);
  const HyperForm hyp(2, 2, {{{1, 1}, 1}});
  const FSystem sys(F3, hyp, 1);
  const std::uint64_t box =
      bigint_to_u64(bigint_pow(BigInt(3), std::uint64_t(box_dim(2, 1))));
  SlotVec t;
  for (std::uint64_t idx = 0; idx < box; ++idx) {
    detail::decode_box_point(F3, idx, 2, 1, t);
    trials += 1;
    if (!decomposition_check(F3, sys, t).pass) failures += 1;
  }
  r.pass = failures == 0;
  r.detail = std::to_string(trials) + " instances (" + std::to_string(box) +
             " of them the full box), " + std::to_string(failures) +
             " failures";
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 3: per-point orthogonality.  For random substitution
// points, the full character-grid sum is the grid size when every
// coefficient form vanishes and zero otherwise.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_orthogonality(const AcceptanceOptions& o,
                                               Rng rng) {
  CriterionResult r{3, "per-point-orthogonality", false, 0, ""};
  long long trials = 0, failures = 0, zero_profiles = 0;
  for (const ConfiguredExample& ex : configured_examples()) {
    const Field F(ex.p);
    const FSystem sys(F, ex.f, 1);
    const TraceTable tt(F);
    const int jc = sys.j_count();
    const BigInt grid = AlphaTuple::grid_size(F, jc);
    const std::uint64_t total = bigint_to_u64(grid);
    for (int it = 0; it < 1000; ++it) {
      const SlotVec t = sys.random_slots(F, rng);
      std::vector<std::uint64_t> key;
      bool all_vanish = true;
      for (int j = 0; j < jc; ++j) {
        const Poly fj = sys.F_j(F, t, j);
        for (int m = 0; m <= j; ++m) {
          key.push_back(pcoeff(fj, m).raw());
          if (key.back() != 0) all_vanish = false;
        }
      }
      CycloSum acc(F.p());
      std::vector<FqElem> digits;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        const AlphaTuple alpha = AlphaTuple::from_index(F, jc, BigInt(idx));
        digits = alpha.flat();
        acc.add_root_times(detail::phase_residue(F, tt, digits, key), 1);
      }
      const BigInt expected = all_vanish ? grid : BigInt(0);
      trials += 1;
      if (all_vanish) zero_profiles += 1;
      if (!acc.is_rational_integer() || acc.to_integer() != expected)
        failures += 1;
      key.clear();
    }
  }
  r.pass = failures == 0;
  r.detail = std::to_string(trials) + " random points across " +
             std::to_string(configured_examples().size()) + " examples (" +
             std::to_string(zero_profiles) + " with vanishing profile), " +
             std::to_string(failures) + " failures";
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 4: the differencing identities — the annihilation of
// low-degree polynomials and the diagonal factorial identity.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_weyl(const AcceptanceOptions& o, Rng rng) {
  CriterionResult r{4, "weyl-identities", false, 0, ""};
  const Field F(5);
  Rng r1 = rng.fork();
  Rng r2 = rng.fork();
  const WeylBatteryReport zero = weyl_zero_battery(F, r1, 100, 4);
  const WeylBatteryReport diag = weyl_diagonal_battery(5, r2, 100, 4);
  r.pass = zero.all_pass() && diag.all_pass();
  r.detail = "annihilation " + std::to_string(zero.trials) + " trials / " +
             std::to_string(zero.failures) + " failures; diagonal " +
             std::to_string(diag.trials) + " trials / " +
             std::to_string(diag.failures) + " failures";
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 5: decoupling and the block bound over the entire exact
// character grid of the two-variable quadric examples.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_decoupling(const AcceptanceOptions& o,
                                            Rng rng) {
  CriterionResult r{5, "decoupling-and-block-bound", false, 0, ""};
  bool ok = true;
  std::string detail;
  for (const ConfiguredExample& ex : configured_examples()) {
    if (ex.f.n() != 2 || ex.p != 3) continue;  // the full-grid shapes
    const Field F(ex.p);
    const SweepReport dec =
        decouple_grid_sweep(F, ex.f, 1, o.threads, o.budget);
    Rng sub = rng.fork();
    const SweepReport tb =
        lemma_T_grid_sweep(F, ex.f, 1, sub, 2, o.threads, o.budget);
    ok = ok && dec.all_pass && tb.all_pass;
    if (!detail.empty()) detail += "; ";
    detail += std::string(ex.name) + ": decouple " + bigint_str(dec.points) +
              " points/" + bigint_str(dec.failures) + " failures, block bound " +
              bigint_str(tb.points) + " points/" + bigint_str(tb.failures) +
              " failures";
  }
  r.pass = ok;
  r.detail = detail;
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 6: the box-shrinking inequality on random symmetric
// systems over two fields.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_shrink(const AcceptanceOptions& o, Rng rng) {
  CriterionResult r{6, "shrinking-inequality", false, 0, ""};
  Rng r3 = rng.fork();
  Rng r5 = rng.fork();
  const ShrinkBatteryReport b3 = shrink_battery(Field(3), r3, 100);
  const ShrinkBatteryReport b5 = shrink_battery(Field(5), r5, 100);
  r.pass = b3.all_pass() && b5.all_pass();
  r.detail = "q=3: " + std::to_string(b3.trials) + " trials/" +
             std::to_string(b3.failures) + " failures; q=5: " +
             std::to_string(b5.trials) + " trials/" +
             std::to_string(b5.failures) + " failures";
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 7: the decay-or-approximation dichotomy on the full
// precision-cell grid of the bilinear quadric block.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_dichotomy(const AcceptanceOptions& o) {
  CriterionResult r{7, "dichotomy-grid", false, 0, ""};
  bool ok = true;
  std::string detail;
  for (const ConfiguredExample& ex : configured_examples()) {
    if (ex.f.n() != 2 || ex.p != 3) continue;
    const Field F(ex.p);
    const FSystem sys(F, ex.f, 1);
    const BidegreeBlock b = bidegree_block(2, 1, 1);
    const ArcParams ap = ArcParams::for_block(b, 1);
    if (ap.d1 != 1 || ap.d2 != 1 || ap.P1 != 1 || ap.P2 != 2)
      throw std::logic_error("dichotomy criterion: unexpected block shape");
    const BidegreeForm G(sys.tensor(), b, ex.f.n());
    const SigmaReport sig = sigma_estimate(F, ex.f, 1, 1, 2, o.budget);
    const DichotomySweep sw =
        dichotomy_grid_sweep(F, G, ap, sig, o.threads, o.budget);
    const bool covered = sw.bound_only + sw.arc_only + sw.both == sw.cells;
    ok = ok && covered && sw.cells > 0;
    if (!detail.empty()) detail += "; ";
    detail += std::string(ex.name) + ": " + bigint_str(sw.cells) + " cells (" +
              bigint_str(sw.bound_only) + " bound-only, " +
              bigint_str(sw.arc_only) + " arc-only, " + bigint_str(sw.both) +
              " both), no double failure";
  }
  r.pass = ok;
  r.detail = detail;
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 8: the denominator-bounded approximation contract on
// random torus points, cross-checked against exhaustive search.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_approx(const AcceptanceOptions& o, Rng rng) {
  CriterionResult r{8, "rational-approximation", false, 0, ""};
  long long trials = 0, failures = 0;
  for (std::uint32_t q : {3u, 5u}) {
    const Field F(q);
    Rng sub = rng.fork();
    for (int it = 0; it < 1000; ++it) {
      const LaurentNum alpha = detail::random_exact_torus(F, sub, 9);
      // Exhaustive best distance per denominator degree, then prefix-min.
      std::vector<Ord> best(5, Ord::neg_inf());
      best[0] = detail::dist_exponent(F, Poly{F.one()}, alpha);
      for (unsigned k = 1; k <= 4; ++k) {
        Ord b = best[k - 1];
        std::uint64_t nk = 1;
        for (unsigned i = 0; i < k; ++i) nk *= q;
        for (std::uint64_t idx = 0; idx < nk; ++idx) {
          const Ord d =
              detail::dist_exponent(F, detail::monic_from_index(F, idx, k), alpha);
          if (d < b) b = d;
        }
        best[k] = b;
      }
      for (int m = 1; m <= 4; ++m) {
        const RationalApprox ra = rational_approx(F, alpha, m);
        trials += 1;
        const bool monic = !ra.g.empty() && plead(ra.g) == F.one();
        const bool degree_ok = pdeg(ra.g) <= Ord(m);
        const bool small = ra.residual.abs_less_than(-m);
        const bool coprime =
            ra.a.empty() || pgcd_monic(F, ra.a, ra.g) == Poly{F.one()};
        const bool optimal =
            ra.residual.abs_exponent() == best[std::size_t(m)];
        if (!(monic && degree_ok && small && coprime && optimal)) failures += 1;
      }
    }
  }
  r.pass = failures == 0;
  r.detail = std::to_string(trials) +
             " (point, degree-cap) checks over q=3 and q=5, " +
             std::to_string(failures) + " failures";
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 9: the critical-variety codimension by exact rank and
// nullity, and its lower bound n on every smooth shipped example.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_sigma(const AcceptanceOptions& o) {
  CriterionResult r{9, "critical-codimension", false, 0, ""};
  const Field F3(3);
  bool ok = true;
  std::string detail;

  // Full-rank pairings in 2, 3, 4 variables: sigma equals n exactly.
  const struct {
    const char* label;
    HyperForm f;
    int expect;
  } exact_rows[] = {
      {"x1*x2", HyperForm(2, 2, {{{1, 1}, 1}}), 2},
      {"diag3", HyperForm(3, 2, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}}), 3},
      {"pairs4", HyperForm(4, 2, {{{1, 1, 0, 0}, 1}, {{0, 0, 1, 1}, 1}}), 4},
  };
  for (const auto& row : exact_rows) {
    const SigmaReport s = sigma_estimate(F3, row.f, 1, 1, 2, o.budget);
    const bool here = s.exact && s.sigma == row.expect;
    ok = ok && here;
    if (!detail.empty()) detail += "; ";
    detail += std::string(row.label) + ": sigma=" + std::to_string(s.sigma);
  }

  // Rank-deficient control: one square in two variables drops to n-1.
  const SigmaReport def =
      sigma_estimate(F3, HyperForm(2, 2, {{{2, 0}, 1}}), 1, 1, 2, o.budget);
  ok = ok && def.exact && def.sigma == 1;
  detail += "; degenerate x1^2: sigma=" + std::to_string(def.sigma);

  // Lower bound sigma >= n on every smooth shipped example, all blocks.
  for (const ConfiguredExample& ex : configured_examples()) {
    const Field F(ex.p);
    if (smoothness_scan(ex.f, ex.p, 2, o.budget).singular_point_found) {
      ok = false;
      detail += "; " + std::string(ex.name) + ": unexpectedly singular";
      continue;
    }
    int worst = 1 << 20;
    for (int j = 0; j <= 2; ++j) {
      const SigmaReport s = sigma_estimate(F, ex.f, 1, j, 2, o.budget);
      ok = ok && s.exact && s.sigma >= int(ex.f.n());
      if (s.sigma < worst) worst = s.sigma;
    }
    detail += "; " + std::string(ex.name) + ": min sigma=" +
              std::to_string(worst) + " >= n=" + std::to_string(ex.f.n());
  }

  r.pass = ok;
  r.detail = detail;
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 10: the small-characteristic collapse at the distinguished
// degrees, with the off-shape control staying alive.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_smallchar(const AcceptanceOptions& o) {
  CriterionResult r{10, "small-characteristic", false, 0, ""};
  const Budget& b = o.budget;
  bool ok = true;
  std::string detail;
  const struct {
    int e;
    std::uint32_t p;
    std::uint64_t d;
  } rows[] = {{1, 2, 5}, {1, 3, 7}, {1, 5, 11}, {2, 2, 13}};
  for (const auto& row : rows) {
    const SmallCharReport rep = fermat_smallchar_check(row.e, row.p, b);
    const bool here = rep.d == row.d && rep.standard_shape &&
                      rep.f_next_vanishes && rep.head_vanishes &&
                      rep.chains_covered &&
                      rep.vanishing_count == rep.term_count;
    ok = ok && here;
    if (!detail.empty()) detail += ", ";
    detail += "d=" + std::to_string(rep.d) + (here ? " collapses" : " FAILED");
  }
  const SmallCharReport control = fermat_smallchar_check_explicit(3, 1, 5, b);
  const bool control_ok = !control.standard_shape && !control.f_next_vanishes &&
                          control.vanishing_count == 0;
  ok = ok && control_ok;
  detail += "; control d=3 mod 5 stays nonzero";
  r.pass = ok;
  r.detail = detail;
  return r;
}

//////////////////////////////////////////////////////////////////////
// Criterion 11: the observational count trend for the four-variable
// pair of hyperbolas, against the frozen pre-build enumeration values.
// The direction of |ratio - 1| was fixed by those oracle runs: the gap
// WIDENS from q=3 to q=5 for this small-n instance, and that observed
// direction is what the gate asserts.
//////////////////////////////////////////////////////////////////////

inline CriterionResult criterion_trend(const AcceptanceOptions& o) {
  CriterionResult r{11, "count-ratio-trend", false, 0, ""};
  const HyperForm pair(4, 2, {{{1, 1, 0, 0}, 1}, {{0, 0, 1, 1}, 1}});

  const CountResult c3 = count_N(Field(3), pair, 1, CountStrategy::kQuadricSolve,
                                 o.threads, o.budget);
  // Independent enumeration route at q=3 (cheap enough to repeat here).
  const CountResult c3b = count_N(Field(3), pair, 1, CountStrategy::kRootFirst,
                                  o.threads, o.budget);
  const CountResult c5 = count_N(Field(5), pair, 1, CountStrategy::kQuadricSolve,
                                 o.threads, o.budget);

  const bool frozen_ok = c3.N == BigInt(5409) && c3b.N == c3.N &&
                         c5.N == BigInt(183025);
  const BigRat one(1);
  const BigRat gap3 = c3.ratio > one ? c3.ratio - one : one - c3.ratio;
  const BigRat gap5 = c5.ratio > one ? c5.ratio - one : one - c5.ratio;
  const bool positive = c3.N > 0 && c5.N > 0;
  const bool direction = gap5 > gap3;  // frozen observed direction

  r.pass = frozen_ok && positive && direction;
  r.detail = "N(q=3)=" + bigint_str(c3.N) + " (both strategies), N(q=5)=" +
             bigint_str(c5.N) + "; |ratio-1| = " +
             std::to_string(bigrat_to_double(gap3)) + " at q=3 vs " +
             std::to_string(bigrat_to_double(gap5)) +
             " at q=5 (gap widens, as frozen by the oracle)";
  return r;
}

//////////////////////////////////////////////////////////////////////
// The gate.
//////////////////////////////////////////////////////////////////////

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o) {
  Rng master(o.seed);
  std::vector<CriterionResult> rows;
  const auto timed = [&rows](CriterionResult row,
                             const std::chrono::steady_clock::time_point& t0) {
    const auto t1 = std::chrono::steady_clock::now();
    row.seconds = std::chrono::duration<double>(t1 - t0).count();
    rows.push_back(std::move(row));
  };
  for (int idx = 1; idx <= 11; ++idx) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng sub = master.fork();
    try {
      switch (idx) {
        case 1: timed(criterion_exact_integral(o), t0); break;
        case 2: timed(criterion_decomposition(o, std::move(sub)), t0); break;
        case 3: timed(criterion_orthogonality(o, std::move(sub)), t0); break;
        case 4: timed(criterion_weyl(o, std::move(sub)), t0); break;
        case 5: timed(criterion_decoupling(o, std::move(sub)), t0); break;
        case 6: timed(criterion_shrink(o, std::move(sub)), t0); break;
        case 7: timed(criterion_dichotomy(o), t0); break;
        case 8: timed(criterion_approx(o, std::move(sub)), t0); break;
        case 9: timed(criterion_sigma(o), t0); break;
        case 10: timed(criterion_smallchar(o), t0); break;
        case 11: timed(criterion_trend(o), t0); break;
      }
    } catch (const std::exception& ex) {
      CriterionResult row;
      row.index = idx;
      row.name = "criterion-" + std::to_string(idx);
      row.pass = false;
      row.detail = std::string("exception: ") + ex.what();
      timed(std::move(row), t0);
    }
  }
  return rows;
}

inline bool acceptance_all_pass(const std::vector<CriterionResult>& rows) {
  if (rows.size() != 11) return false;
  for (const CriterionResult& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace ffmoduli
