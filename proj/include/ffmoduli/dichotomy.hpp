#pragma once

//////////////////////////////////////////////////////////////////////
// The critical variety of a bidegree block, the bound-or-structure
// dichotomy for the block sum E, and the shell decomposition of the
// moment integral of |E| over the torus.
//
// Attached to a block G of bidegree (d1, d2) is the critical set cut
// out by the n multilinear equations Gamma_G(x..x; y..y, e_i) = 0:
//   * d1 >= 1, d2 >= 2: a subvariety of the (x, y)-space A^{2n},
//     sigma = 2n - dim;
//   * d1 >= 1, d2 = 1: a subvariety of the x-space A^n, sigma = n - dim;
//   * d1 = 0, d2 >= 2: a subvariety of the y-space A^n, sigma = n - dim.
// (These are the vanishing loci of the y-gradient of G; for blocks of
// a nonsingular form, sigma >= n.)
//
// sigma_estimate computes sigma. For total degree 2 the equations are
// linear, so the dimension is exact by rank-nullity, and the point
// counts over extension fields are cross-checked against q^(m*dim).
// For higher degree the dimension is the growth exponent of the point
// counts: consecutive extension counts should grow by a factor near
// q^dim, and the estimate must agree across all consecutive pairs or
// the computation refuses to guess.
//
// dichotomy_check verifies the dichotomy: for 1 <= J <= P1, either
//   (i)  E(alpha) <= (d-1)^n E(0) q^(-sigma*J), or
//   (ii) alpha lies within q^T / |g| of a reduced fraction with
//        denominator degree at most (d-1)(J-1)
// (both may hold). A point violating both is a hard error: the
// surrounding theory proves it cannot exist.
//
// arc_shell_integral discretizes the moment integral of |E|^rho over
// the torus (exact grid for the phase data, long-double magnitudes),
// splits it into the level-1 arc set plus the shells between
// consecutive arc levels, and compares each piece against its bound:
//   I_J <= (d-1)^(n*rho) E(0)^rho q^(-d1P1-d2P2+d-1-delta*J),
//   total <= E(0)^rho q^(-d1P1-d2P2+d-1) (1 + (d-1)^(n*rho) q^-delta/(1-q^-delta)),
// with delta = sigma*rho - 2(d-1). The bounds are only meaningful for
// delta > 0; otherwise the report says so and asserts nothing.
//////////////////////////////////////////////////////////////////////

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ffmoduli/approx.hpp"
#include "ffmoduli/bilinear.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/forms.hpp"
#include "ffmoduli/linalg.hpp"
#include "ffmoduli/tolerance.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// sigma via the critical variety.
//////////////////////////////////////////////////////////////////////

struct SigmaReport {
  std::vector<BigInt> counts;  // critical-set points over the degree-m extension, m = 1..m_max
  int ambient_dim = 0;         // 2n, n, or n according to the block shape
  int dim_estimate = 0;
  int sigma = 0;
  bool exact = false;          // true on the rank-nullity path (total degree 2)
};

namespace detail {

// Evaluator for the n critical equations of one block over one field.
class CriticalEquations {
 public:
  CriticalEquations(const Field& E, const HyperForm& f, const BidegreeBlock& b)
      : tensor_(SymTensor::from_form(E, f)), b_(b), n_(f.n()) {
    c0_zero_ = E.from_int(static_cast<long long>(b.C0 % E.p())).is_zero();
    units_.assign(n_, std::vector<FqElem>(n_));
    for (unsigned i = 0; i < n_; ++i) units_[i][i] = E.one();
  }

  bool xy_space() const { return b_.d1 >= 1 && b_.d2 >= 2; }

  // x feeds the d1 leading slots, y the d2-1 remaining ones (the last
  // slot runs over the unit vectors). Unused roles may alias.
  bool all_vanish(const Field& E, const std::vector<FqElem>& x,
                  const std::vector<FqElem>& y) const {
    if (c0_zero_) return true;
    std::vector<const std::vector<FqElem>*> args;
    args.reserve(b_.d1 + b_.d2);
    for (unsigned a = 0; a < b_.d1; ++a) args.push_back(&x);
    for (unsigned a = 0; a + 1 < b_.d2; ++a) args.push_back(&y);
    args.push_back(nullptr);
    for (unsigned i = 0; i < n_; ++i) {
      args.back() = &units_[i];
      if (!tensor_.eval(E, args).is_zero()) return false;
    }
    return true;
  }

 private:
  SymTensor tensor_;
  BidegreeBlock b_;
  unsigned n_;
  bool c0_zero_ = false;
  std::vector<std::vector<FqElem>> units_;
};

// Brute-force count of the critical set over the degree-m extension
// of F.
inline BigInt critical_count(const Field& F, const HyperForm& f, const BidegreeBlock& b,
                             int m, const Budget& budget) {
  const Field E =
      (m == 1) ? F : Field::extension(F.p(), F.k() * static_cast<std::uint32_t>(m));
  const CriticalEquations eqs(E, f, b);
  const unsigned n = f.n();
  const unsigned ambient = eqs.xy_space() ? 2 * n : n;

  const BigInt total = bigint_pow(BigInt(E.q()), ambient);
  budget.check_box(total, "critical_count");

  const std::uint64_t lim = bigint_to_u64(total);
  const std::uint64_t qm = E.q();
  BigInt count = 0;
  std::vector<FqElem> x(n), y(n);
  for (std::uint64_t idx = 0; idx < lim; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < n; ++i) {
      x[i] = E.at(rest % qm);
      rest /= qm;
    }
    if (eqs.xy_space())
      for (unsigned i = 0; i < n; ++i) {
        y[i] = E.at(rest % qm);
        rest /= qm;
      }
    // For a pure y-space block the first n digits land in x, which
    // then feeds the y-copies below.
    const bool vanish = (b.d1 == 0) ? eqs.all_vanish(E, y, x) : eqs.all_vanish(E, x, y);
    if (vanish) count += 1;
  }
  return count;
}

}  // namespace detail

// Dimension and sigma of the critical set of block j for the degree-e
// system of f. Point counts are taken over the extensions of degree
// m = 1..m_max; total degree 2 gets the exact linear-algebra route and
// uses the counts only as a cross-check.
inline SigmaReport sigma_estimate(const Field& F, const HyperForm& f, int e, int j,
                                  int m_max = 2, const Budget& budget = Budget()) {
  if (m_max < 1) throw ParameterContract("sigma_estimate: m_max must be >= 1");
  const BidegreeBlock b = bidegree_block(f.d(), e, j);
  if (b.d1 + b.d2 < 2)
    throw ParameterContract("sigma_estimate: total degree must be at least 2");
  const unsigned n = f.n();
  const bool xy = b.d1 >= 1 && b.d2 >= 2;

  SigmaReport r;
  r.ambient_dim = static_cast<int>(xy ? 2 * n : n);
  for (int m = 1; m <= m_max; ++m)
    r.counts.push_back(detail::critical_count(F, f, b, m, budget));

  if (f.d() == 2) {
    // The critical equations are linear in the one remaining vector
    // variable; the kernel dimension is exact.
    const SymTensor tensor = SymTensor::from_form(F, f);
    const FqElem c0 = F.from_int(static_cast<long long>(b.C0 % F.p()));
    Mat M(n, std::vector<FqElem>(n));
    std::vector<FqElem> ek(n), ei(n);
    for (unsigned i = 0; i < n; ++i) {
      ei.assign(n, FqElem());
      ei[i] = F.one();
      for (unsigned k = 0; k < n; ++k) {
        ek.assign(n, FqElem());
        ek[k] = F.one();
        M[i][k] = F.mul(c0, tensor.eval(F, {&ek, &ei}));
      }
    }
    const std::size_t rk = rank(F, M);
    r.exact = true;
    r.dim_estimate = static_cast<int>(n - rk);
    r.sigma = r.ambient_dim - r.dim_estimate;
    // The kernel is a linear space, so each extension count must be
    // exactly q^(m*dim); anything else is a bug.
    for (int m = 1; m <= m_max; ++m) {
      const BigInt expect = bigint_pow(
          bigint_pow(BigInt(F.q()), static_cast<unsigned long long>(m)),
          static_cast<unsigned long long>(r.dim_estimate));
      if (r.counts[static_cast<std::size_t>(m - 1)] != expect)
        throw std::logic_error("sigma_estimate: extension count disagrees with kernel dimension");
    }
    return r;
  }

  // Growth-exponent estimate: counts over consecutive extensions grow
  // by a factor near q^dim once the leading component dominates.
  if (m_max < 2)
    throw DimNotStabilized("need point counts over at least two extensions, have " +
                           std::to_string(m_max));
  const long double logq = std::log(static_cast<long double>(F.q()));
  int est = -1;
  for (int m = 2; m <= m_max; ++m) {
    const long double lo = static_cast<long double>(
        bigint_to_double(r.counts[static_cast<std::size_t>(m - 2)]));
    const long double hi = static_cast<long double>(
        bigint_to_double(r.counts[static_cast<std::size_t>(m - 1)]));
    const long double expnt = std::log(hi / lo) / logq;
    const int rounded = static_cast<int>(std::llround(static_cast<double>(expnt)));
    if (std::fabs(static_cast<double>(expnt - rounded)) > 0.35)
      throw DimNotStabilized("growth exponent " + std::to_string(static_cast<double>(expnt)) +
                             " between extensions " + std::to_string(m - 1) + " and " +
                             std::to_string(m) + " is not near an integer");
    if (est >= 0 && rounded != est)
      throw DimNotStabilized("growth exponents across consecutive extensions disagree: " +
                             std::to_string(est) + " vs " + std::to_string(rounded));
    est = rounded;
  }
  r.dim_estimate = std::clamp(est, 0, r.ambient_dim);
  r.sigma = r.ambient_dim - r.dim_estimate;
  return r;
}

//////////////////////////////////////////////////////////////////////
// The dichotomy for E.
//////////////////////////////////////////////////////////////////////

enum class DichotomyOutcome { kBoundHolds, kOnArc, kBoth };

struct DichotomyReport {
  DichotomyOutcome outcome = DichotomyOutcome::kBoth;
  bool bound_holds = false;  // alternative (i)
  bool on_arc = false;       // alternative (ii)
  BigInt E_value = 0;
  BigInt E_zero = 0;
  BigInt bound_scaled = 0;   // E * q^(sigma*J), compared against bound_rhs
  BigInt bound_rhs = 0;      // (d-1)^n * E(0)
  int sigma = 0;
};

// Evaluate both alternatives at alpha and insist at least one holds.
// The level J must satisfy 1 <= J <= P1 (the range the dichotomy is
// proved for).
inline DichotomyReport dichotomy_check(const Field& F, const BidegreeForm& G,
                                       const ArcParams& ap, const LaurentNum& alpha,
                                       const SigmaReport& sig, unsigned nthreads = 0,
                                       const Budget& budget = Budget(),
                                       const BigInt* E_hint = nullptr) {
  if (ap.J > ap.P1)
    throw ParameterContract("dichotomy_check: requires J <= P1, got J=" +
                            std::to_string(ap.J) + ", P1=" + std::to_string(ap.P1));
  if (sig.sigma < 0) throw ParameterContract("dichotomy_check: sigma must be >= 0");

  DichotomyReport r;
  r.sigma = sig.sigma;
  if (E_hint) {
    r.E_value = *E_hint;
    r.E_zero = eval_E_zero(F, ap, G.n());
  } else {
    const EResult er = eval_E(F, G, ap, alpha, nthreads, budget);
    r.E_value = er.as_integer;
    r.E_zero = er.zero_value;
  }

  // (i) as an exact integer comparison: E * q^(sigma J) <= (d-1)^n E(0).
  r.bound_scaled =
      r.E_value * bigint_pow(BigInt(F.q()),
                             static_cast<unsigned long long>(sig.sigma) *
                                 static_cast<unsigned long long>(ap.J));
  r.bound_rhs = bigint_pow(BigInt(ap.d() - 1), G.n()) * r.E_zero;
  r.bound_holds = r.bound_scaled <= r.bound_rhs;

  r.on_arc = major_arc_test(F, alpha, ap).member;

  if (!r.bound_holds && !r.on_arc)
    throw std::logic_error(
        "dichotomy violated: E exceeds the level-" + std::to_string(ap.J) +
        " bound at a point off the arcs (E=" + bigint_str(r.E_value) + ")");
  r.outcome = r.bound_holds ? (r.on_arc ? DichotomyOutcome::kBoth
                                        : DichotomyOutcome::kBoundHolds)
                            : DichotomyOutcome::kOnArc;
  return r;
}

// Number of fractional digits on which both sides of the dichotomy
// depend: E reads deg(Gamma_G)+1 digits, arc membership reads its
// cell depth.
inline long long dichotomy_grid_digits(const ArcParams& ap) {
  const long long deg_gamma = static_cast<long long>(ap.d1) * (ap.P1 - 1) +
                              static_cast<long long>(ap.d2) * (ap.P2 - 1);
  const long long cell = std::max(0LL, arc_degree_cap(ap) - arc_threshold(ap));
  return std::max({deg_gamma + 1, cell, 1LL});
}

struct DichotomySweep {
  BigInt cells = 0;
  BigInt bound_only = 0;
  BigInt arc_only = 0;
  BigInt both = 0;
  long long digits = 0;
};

// Run the dichotomy on every cell of the exact grid. Throws on the
// first violation (none can exist).
inline DichotomySweep dichotomy_grid_sweep(const Field& F, const BidegreeForm& G,
                                           const ArcParams& ap, const SigmaReport& sig,
                                           unsigned nthreads = 0,
                                           const Budget& budget = Budget()) {
  DichotomySweep sweep;
  sweep.digits = dichotomy_grid_digits(ap);
  const BigInt total = bigint_pow(BigInt(F.q()), static_cast<unsigned long long>(sweep.digits));
  budget.check_grid(total, "dichotomy_grid_sweep");
  sweep.cells = total;

  const std::uint64_t lim = bigint_to_u64(total);
  for (std::uint64_t idx = 0; idx < lim; ++idx) {
    std::vector<FqElem> w(static_cast<std::size_t>(sweep.digits));
    std::uint64_t rest = idx;
    for (long long mdig = 0; mdig < sweep.digits; ++mdig) {
      w[static_cast<std::size_t>(sweep.digits - 1 - mdig)] = F.at(rest % F.q());
      rest /= F.q();
    }
    const LaurentNum alpha = LaurentNum::from_window(std::move(w), -1, Ord::neg_inf());
    const DichotomyReport r = dichotomy_check(F, G, ap, alpha, sig, nthreads, budget);
    switch (r.outcome) {
      case DichotomyOutcome::kBoundHolds: sweep.bound_only += 1; break;
      case DichotomyOutcome::kOnArc: sweep.arc_only += 1; break;
      case DichotomyOutcome::kBoth: sweep.both += 1; break;
    }
  }
  return sweep;
}

//////////////////////////////////////////////////////////////////////
// Shell decomposition of the moment integral.
//////////////////////////////////////////////////////////////////////

struct ShellEntry {
  int J = 0;                 // shell between arc levels J and J+1
  BigInt cells = 0;          // grid cells in the shell
  long double integral = 0;  // discretized contribution of the shell
  long double bound = 0;     // per-shell bound, when delta > 0
  bool pass = true;          // integral <= bound (tolerance), when delta > 0
};

struct ShellIntegralReport {
  long double rho = 0;
  int sigma = 0;
  long double delta = 0;          // sigma*rho - 2(d-1)
  bool delta_positive = false;    // the moment hypothesis
  bool p1_condition = false;      // P1 >= (d1 P1 + d2 P2 + d - 1) / (2(d-1))
  bool hypotheses_ok = false;     // both of the above
  std::string note;
  long long digits = 0;
  int dirichlet_level = 0;        // the arcs cover the torus from this level on
  long double base_integral = 0;  // over the level-1 arc set
  long double base_bound = 0;
  bool base_pass = true;
  std::vector<ShellEntry> shells;  // J = 1 .. dirichlet_level
  long double total_integral = 0;
  long double total_bound = 0;
  bool total_pass = true;
  bool all_pass = true;  // every compared bound held (vacuous when delta <= 0)
};

// Discretize the moment integral of |E|^rho over the torus, decompose
// it into the level-1 arc set plus the shells between consecutive
// levels, and compare every piece against its bound. All comparisons
// are reported, none are asserted.
inline ShellIntegralReport arc_shell_integral(const Field& F, const BidegreeForm& G,
                                              const ArcParams& ap, long double rho,
                                              const SigmaReport& sig, unsigned nthreads = 0,
                                              const Budget& budget = Budget()) {
  if (!(rho > 0)) throw ParameterContract("arc_shell_integral: rho must be > 0");
  if (sig.sigma < 0) throw ParameterContract("arc_shell_integral: sigma must be >= 0");
  const int d = static_cast<int>(ap.d());

  ShellIntegralReport rep;
  rep.rho = rho;
  rep.sigma = sig.sigma;
  rep.delta = static_cast<long double>(sig.sigma) * rho - 2.0L * (d - 1);
  rep.delta_positive = rep.delta > 0;
  rep.p1_condition = 2LL * (d - 1) * ap.P1 >= static_cast<long long>(ap.d1) * ap.P1 +
                                                  static_cast<long long>(ap.d2) * ap.P2 +
                                                  d - 1;
  rep.hypotheses_ok = rep.delta_positive && rep.p1_condition;
  if (!rep.delta_positive)
    rep.note = "hypotheses not satisfied";
  else if (!rep.p1_condition)
    rep.note = "covering hypothesis on P1 not satisfied; bounds reported without guarantee";

  rep.digits = dichotomy_grid_digits(ap);
  rep.dirichlet_level = dirichlet_threshold(ap);
  const int J_star = rep.dirichlet_level;
  rep.shells.resize(static_cast<std::size_t>(J_star));
  for (int J = 1; J <= J_star; ++J)
    rep.shells[static_cast<std::size_t>(J - 1)].J = J;

  const BigInt total_cells =
      bigint_pow(BigInt(F.q()), static_cast<unsigned long long>(rep.digits));
  budget.check_grid(total_cells, "arc_shell_integral");
  const long double cell_measure =
      std::pow(static_cast<long double>(F.q()), static_cast<long double>(-rep.digits));

  const std::uint64_t lim = bigint_to_u64(total_cells);
  for (std::uint64_t idx = 0; idx < lim; ++idx) {
    std::vector<FqElem> w(static_cast<std::size_t>(rep.digits));
    std::uint64_t rest = idx;
    for (long long mdig = 0; mdig < rep.digits; ++mdig) {
      w[static_cast<std::size_t>(rep.digits - 1 - mdig)] = F.at(rest % F.q());
      rest /= F.q();
    }
    const LaurentNum alpha = LaurentNum::from_window(std::move(w), -1, Ord::neg_inf());

    const EResult er = eval_E(F, G, ap, alpha, nthreads, budget);
    const long double term =
        std::pow(static_cast<long double>(bigint_to_double(er.as_integer)), rho) *
        cell_measure;
    rep.total_integral += term;

    // Least level whose arcs contain alpha (exists: the arcs cover
    // the torus from the Dirichlet level on).
    int J_min = 0;
    for (int J = 1; J <= J_star; ++J) {
      const ArcParams level(ap.d1, ap.d2, ap.P1, ap.P2, J);
      if (major_arc_test(F, alpha, level).member) {
        J_min = J;
        break;
      }
    }
    if (J_min == 0)
      throw std::logic_error(
          "arc_shell_integral: a torus point escaped every arc level up to the covering level");
    if (J_min == 1) {
      rep.base_integral += term;
    } else {
      ShellEntry& shell = rep.shells[static_cast<std::size_t>(J_min - 2)];
      shell.integral += term;
      shell.cells += 1;
    }
  }

  if (rep.delta_positive) {
    const long double E0 = static_cast<long double>(bigint_to_double(
        eval_E_zero(F, ap, G.n())));
    const long double E0_rho = std::pow(E0, rho);
    const long double lead_exp = static_cast<long double>(
        -static_cast<long long>(ap.d1) * ap.P1 - static_cast<long long>(ap.d2) * ap.P2 +
        d - 1);
    const long double q_ld = static_cast<long double>(F.q());
    const long double lead = E0_rho * std::pow(q_ld, lead_exp);
    const long double dfac = std::pow(static_cast<long double>(d - 1),
                                      static_cast<long double>(G.n()) * rho);

    rep.base_bound = lead;
    rep.base_pass = leq_rel_tol(rep.base_integral, rep.base_bound);
    rep.all_pass = rep.base_pass;
    for (ShellEntry& shell : rep.shells) {
      shell.bound = dfac * lead * std::pow(q_ld, -rep.delta * shell.J);
      shell.pass = leq_rel_tol(shell.integral, shell.bound);
      rep.all_pass = rep.all_pass && shell.pass;
    }
    const long double qd = std::pow(q_ld, -rep.delta);
    rep.total_bound = lead * (1.0L + dfac * qd / (1.0L - qd));
    rep.total_pass = leq_rel_tol(rep.total_integral, rep.total_bound);
    rep.all_pass = rep.all_pass && rep.total_pass;
  }
  return rep;
}

}  // namespace ffmoduli
