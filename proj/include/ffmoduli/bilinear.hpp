#pragma once

//////////////////////////////////////////////////////////////////////
// bilinear.hpp
//
// The bilinearized leading-block sums.
//
// Each coefficient index j of the condition system has a leading
// two-slot block: a multilinear form Gamma_G in d1 x-vectors and d2
// y-vectors (forms.hpp). Over the boxes |x| < q^{P1}, |y| < q^{P2}
// the block drives three interlocking quantities:
//
//   E(alpha)  = sum over d1 x-vectors and d2 y-vectors of
//               psi(alpha * Gamma_G(x..; y..)),
//   N2/N1     = box counts with norm conditions on the partial
//               evaluations alpha * Gamma_G(x..; y..', e_i),
//   T(alpha)  = the inner two-slot sum of the full character sum,
//               with the remaining slots frozen.
//
// The checkable facts: E(alpha) = |Y| * N2^(0) exactly (a ball-sum
// identity, verified on every call); the shrinking-lemma chain
// N2^(0) <= q^{-d1 Q1 n - (d2-1) Q2 n} N1^(d1); the Weyl bound
// |T(alpha)|^{2^{d-1}} <= q^{2^{d-1}(P1+P2)n} E(0)^{-1} E(alpha) with
// equality at alpha = 0; and the aggregate decoupling inequality that
// splits |S(alpha)| into per-component E factors.
//////////////////////////////////////////////////////////////////////

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/character.hpp"
#include "ffmoduli/counting.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/exp_sums.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/forms.hpp"
#include "ffmoduli/laurent.hpp"
#include "ffmoduli/poly.hpp"
#include "ffmoduli/rng.hpp"
#include "ffmoduli/tolerance.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// ArcParams: the box and arc exponents.
//
// d1 + d2 is the block arity split, P1 <= P2 the box exponents, J >= 1
// the arc depth. The shrink exponents Q_i = J - P_i are derived; the
// counts that consume them enforce their own sign conditions.
//////////////////////////////////////////////////////////////////////

struct ArcParams {
  unsigned d1;
  unsigned d2;
  int P1;
  int P2;
  int J;

  ArcParams(unsigned d1_, unsigned d2_, int P1_, int P2_, int J_ = 1)
      : d1(d1_), d2(d2_), P1(P1_), P2(P2_), J(J_) {
    if (d2 < 1) throw ParameterContract("ArcParams: d2 must be >= 1");
    if (P1 < 1 || P1 > P2)
      throw ParameterContract("ArcParams: need 1 <= P1 <= P2");
    if (J < 1) throw ParameterContract("ArcParams: J must be >= 1");
    if (d1 == 0 && P1 != P2)
      throw ParameterContract("ArcParams: P1 = P2 is required when d1 = 0");
  }

  static ArcParams for_block(const BidegreeBlock& b, int J = 1) {
    return ArcParams(b.d1, b.d2, b.P1, b.P2, J);
  }

  unsigned d() const { return d1 + d2; }
  int Q1() const { return J - P1; }
  int Q2() const { return J - P2; }
};

//////////////////////////////////////////////////////////////////////
// BidegreeForm: a block's multilinear form, ready to evaluate.
//////////////////////////////////////////////////////////////////////

class BidegreeForm {
 public:
  // The leading block of coefficient index j for the degree-e system
  // of the form f.
  BidegreeForm(const Field& F, const HyperForm& f, int e, int j)
      : tensor_(SymTensor::from_form(F, f)),
        block_(bidegree_block(f.d(), e, j)),
        n_(f.n()) {}

  BidegreeForm(SymTensor tensor, BidegreeBlock block, unsigned n)
      : tensor_(std::move(tensor)), block_(std::move(block)), n_(n) {}

  const SymTensor& tensor() const { return tensor_; }
  const BidegreeBlock& block() const { return block_; }
  unsigned n() const { return n_; }

  // Gamma_G at d1 x-vectors and d2 y-vectors of polynomials.
  Poly gamma(const Field& F, const std::vector<const std::vector<Poly>*>& xs,
             const std::vector<const std::vector<Poly>*>& ys) const {
    return gamma_G_poly(F, tensor_, block_, xs, ys);
  }

 private:
  SymTensor tensor_;
  BidegreeBlock block_;
  unsigned n_;
};

namespace detail {

// A group of `count` polynomial vectors, every coordinate of degree
// < P (so q^P choices per coordinate).
struct PolyBoxGroup {
  unsigned count;
  int P;
};

inline BigInt poly_box_total(const Field& F, unsigned n,
                             const std::vector<PolyBoxGroup>& groups) {
  std::uint64_t digits = 0;
  for (const auto& g : groups) digits += std::uint64_t(g.count) * unsigned(g.P) * n;
  return bigint_pow(BigInt(F.q()), digits);
}

inline void decode_poly_box(const Field& F, std::uint64_t idx, unsigned n,
                            const std::vector<PolyBoxGroup>& groups,
                            std::vector<std::vector<Poly>>& out) {
  out.clear();
  for (const auto& g : groups)
    for (unsigned v = 0; v < g.count; ++v) {
      const std::uint64_t w = slot_box_u64(F, n, g.P - 1);
      out.emplace_back();
      decode_slot(F, idx % w, n, g.P - 1, out.back());
      idx /= w;
    }
}

// Digits of alpha at u^{-1} .. u^{-(D+1)}; throws InsufficientPrecision
// if the window asks below alpha's floor.
inline std::vector<FqElem> alpha_digits(const Field& F, const LaurentNum& alpha,
                                        int D) {
  (void)F;
  std::vector<FqElem> a(std::size_t(D) + 1);
  for (int m = 0; m <= D; ++m) a[std::size_t(m)] = alpha.coeff_at(-1 - m);
  return a;
}

// Residue of tr(coefficient of u^{-1} in alpha * P) for deg P <= D.
inline std::uint32_t poly_phase_residue(const Field& F, const TraceTable& tt,
                                        const std::vector<FqElem>& adig,
                                        const Poly& P) {
  FqElem s{};
  for (std::size_t m = 0; m < P.size(); ++m) {
    if (P[m].is_zero()) continue;
    s = F.add(s, F.mul(P[m], adig.at(m)));
  }
  return tt(F, s);
}

inline std::vector<Poly> unit_vector(const Field& F, unsigned n, unsigned i) {
  std::vector<Poly> e(n);
  e[i] = pconst(F.one());
  return e;
}

}  // namespace detail

//////////////////////////////////////////////////////////////////////
// The box counts N1^(t), N2^(t).
//////////////////////////////////////////////////////////////////////

enum class WhichCount { kN1, kN2 };

inline BigInt n_counts(const Field& F, const BidegreeForm& G, const ArcParams& ap,
                       const LaurentNum& alpha, int t, WhichCount which,
                       unsigned nthreads = 0, const Budget& budget = Budget()) {
  const BidegreeBlock& b = G.block();
  if (ap.d1 != b.d1 || ap.d2 != b.d2)
    throw ParameterContract("n_counts: params split (d1, d2) does not match the block");
  const unsigned n = G.n();
  const int d1 = int(ap.d1), d2 = int(ap.d2);

  std::vector<detail::PolyBoxGroup> groups;
  long long threshold;
  if (which == WhichCount::kN2) {
    if (t < 0 || t > d2 - 1)
      throw ParameterContract("n_counts: N2 wants 0 <= t <= d2 - 1");
    if (t >= 1 && ap.Q2() > 0)
      throw ParameterContract("n_counts: N2 with t >= 1 wants Q2 <= 0");
    if (d1 > 0) groups.push_back({unsigned(d1), ap.P1});
    if (t > 0) groups.push_back({unsigned(t), ap.Q2() + ap.P2});
    if (d2 - 1 - t > 0) groups.push_back({unsigned(d2 - 1 - t), ap.P2});
    threshold = (long long)(t)*ap.Q2() - ap.P2;
  } else {
    if (t < 0 || t > d1) throw ParameterContract("n_counts: N1 wants 0 <= t <= d1");
    if (t >= 1 && ap.Q1() > 0)
      throw ParameterContract("n_counts: N1 with t >= 1 wants Q1 <= 0");
    if (ap.Q2() > 0) throw ParameterContract("n_counts: N1 wants Q2 <= 0");
    if (t > 0) groups.push_back({unsigned(t), ap.Q1() + ap.P1});
    if (d1 - t > 0) groups.push_back({unsigned(d1 - t), ap.P1});
    if (d2 - 1 > 0) groups.push_back({unsigned(d2 - 1), ap.Q2() + ap.P2});
    threshold =
        (long long)(t)*ap.Q1() + (long long)(d2 - 1) * ap.Q2() - ap.P2;
  }

  const BigInt total_big = detail::poly_box_total(F, n, groups);
  budget.check_box(total_big, "n_counts");
  const std::uint64_t total = bigint_to_u64(total_big);
  nthreads = detail::resolve_threads(nthreads);

  // Vector layout after decode: d1 x-vectors then the d2-1 y'-vectors
  // (in N2 order: enlarged first — order inside a group never matters,
  // the boxes are products).
  return detail::parallel_count(
      total, nthreads, [&](std::uint64_t lo, std::uint64_t hi, BigInt& acc) {
        std::vector<std::vector<Poly>> vecs;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          detail::decode_poly_box(F, idx, n, groups, vecs);
          std::vector<const std::vector<Poly>*> xs, ys;
          for (int v = 0; v < d1; ++v) xs.push_back(&vecs[std::size_t(v)]);
          for (int v = d1; v < d1 + d2 - 1; ++v) ys.push_back(&vecs[std::size_t(v)]);
          ys.push_back(nullptr);  // slot for the unit vector
          bool ok = true;
          for (unsigned i = 0; i < n && ok; ++i) {
            const std::vector<Poly> unit = detail::unit_vector(F, n, i);
            ys.back() = &unit;
            const Poly g = G.gamma(F, xs, ys);
            ok = dist_less_than(lmul(F, alpha, LaurentNum::from_poly(g)), threshold);
          }
          if (ok) acc += 1;
        }
      });
}

struct CountInequality {
  BigInt n2_zero;  // N2^(0)
  BigInt n1_top;   // N1^(d1)
  BigInt rhs;      // q^{-d1 Q1 n - (d2-1) Q2 n} * N1^(d1)
  bool pass = false;
};

// The shrinking-lemma chain: N2^(0) <= q^{-d1 Q1 n - (d2-1) Q2 n} N1^(d1),
// compared exactly.
inline CountInequality n_counts_inequality(const Field& F, const BidegreeForm& G,
                                           const ArcParams& ap, const LaurentNum& alpha,
                                           unsigned nthreads = 0,
                                           const Budget& budget = Budget()) {
  if (ap.Q1() > 0 || ap.Q2() > 0)
    throw ParameterContract("n_counts_inequality: wants Q1 <= 0 and Q2 <= 0");
  CountInequality r;
  r.n2_zero = n_counts(F, G, ap, alpha, 0, WhichCount::kN2, nthreads, budget);
  r.n1_top = n_counts(F, G, ap, alpha, int(ap.d1), WhichCount::kN1, nthreads, budget);
  const std::uint64_t expo =
      std::uint64_t(-(long long)(ap.d1) * ap.Q1() * (long long)(G.n()) -
                    (long long)(ap.d2 - 1) * ap.Q2() * (long long)(G.n()));
  r.rhs = bigint_pow(BigInt(F.q()), expo) * r.n1_top;
  r.pass = r.n2_zero <= r.rhs;
  return r;
}

//////////////////////////////////////////////////////////////////////
// E(alpha), with its mandatory identity cross-check.
//////////////////////////////////////////////////////////////////////

struct EResult {
  CycloSum value;      // the raw character sum
  BigInt as_integer;   // = |Y| * N2^(0); always equals `value`
  BigInt zero_value;   // E(0) = q^{(d1 P1 + d2 P2) n}
};

inline BigInt eval_E_zero(const Field& F, const ArcParams& ap, unsigned n) {
  const std::uint64_t expo =
      std::uint64_t((long long)(ap.d1) * ap.P1 + (long long)(ap.d2) * ap.P2) * n;
  return bigint_pow(BigInt(F.q()), expo);
}

inline EResult eval_E(const Field& F, const BidegreeForm& G, const ArcParams& ap,
                      const LaurentNum& alpha, unsigned nthreads = 0,
                      const Budget& budget = Budget()) {
  const BidegreeBlock& b = G.block();
  if (ap.d1 != b.d1 || ap.d2 != b.d2)
    throw ParameterContract("eval_E: params split (d1, d2) does not match the block");
  const unsigned n = G.n();
  const int d1 = int(ap.d1), d2 = int(ap.d2);

  std::vector<detail::PolyBoxGroup> groups;
  if (d1 > 0) groups.push_back({unsigned(d1), ap.P1});
  groups.push_back({unsigned(d2), ap.P2});
  const BigInt total_big = detail::poly_box_total(F, n, groups);
  budget.check_box(total_big, "eval_E");
  const std::uint64_t total = bigint_to_u64(total_big);
  nthreads = detail::resolve_threads(nthreads);

  // Direct route: the full box sum.
  const int D = d1 * (ap.P1 - 1) + d2 * (ap.P2 - 1);
  const std::vector<FqElem> adig = detail::alpha_digits(F, alpha, D);
  const TraceTable tt(F);
  auto fn = [&](std::uint64_t lo, std::uint64_t hi, CycloSum& acc) {
    std::vector<std::vector<Poly>> vecs;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      detail::decode_poly_box(F, idx, n, groups, vecs);
      std::vector<const std::vector<Poly>*> xs, ys;
      for (int v = 0; v < d1; ++v) xs.push_back(&vecs[std::size_t(v)]);
      for (int v = d1; v < d1 + d2; ++v) ys.push_back(&vecs[std::size_t(v)]);
      acc.add_root(detail::poly_phase_residue(F, tt, adig, G.gamma(F, xs, ys)));
    }
  };
  EResult r{detail::parallel_fold(total, nthreads, CycloSum(F.p()), fn), 0, 0};

  // Identity route: E(alpha) = |Y| * N2^(0) by summing the inner
  // y_{d2} coordinates as balls. Any mismatch is an arithmetic bug.
  const BigInt y_box = bigint_pow(BigInt(F.q()), std::uint64_t(ap.P2) * n);
  const BigInt n2 = n_counts(F, G, ap, alpha, 0, WhichCount::kN2, nthreads, budget);
  r.as_integer = y_box * n2;
  r.zero_value = eval_E_zero(F, ap, n);
  if (!(r.value == CycloSum::integer(F.p(), r.as_integer)))
    throw OrthogonalityViolated(
        "eval_E: direct sum disagrees with |Y| * N2^(0) = " + bigint_str(r.as_integer));
  return r;
}

//////////////////////////////////////////////////////////////////////
// The two-slot inner sum T and the Weyl bound.
//////////////////////////////////////////////////////////////////////

struct TBoundReport {
  CycloSum T;            // inner sum over the block slots (dead x-box
                         // included as a scalar factor when d1 = 0)
  BigInt E_value = 0;    // E(alpha_j) as an integer
  BigInt E_zero = 0;     // E(0)
  bool exact_route = false;
  BigInt lhs_exact = 0;  // |T|^2 when the exact route applies
  BigInt rhs_exact = 0;
  long double lhs = 0;   // |T|^{2^{d-1}}
  long double rhs = 0;   // q^{2^{d-1}(P1+P2)n} E(0)^{-1} E(alpha_j)
  bool pass = false;
};

// Checks |T(alpha_j)|^{2^{d-1}} <= q^{2^{d-1}(P1+P2)n} E(0)^{-1} E(alpha_j)
// where T sums psi(alpha_j F_j(t)) over the block slots of t, all other
// slots frozen at `outer` (use FSystem::random_slots for random outers;
// the block-slot entries of `outer` are ignored). For p = 3, d = 2 the
// comparison is exact in integers; otherwise numeric with tolerance.
// E_hint, when given, must be eval_E at the same (j, alpha_j); sweeps
// pass it to avoid recomputing E per outer freeze.
inline TBoundReport lemma_T_bound_check(const Field& F, const FSystem& sys, int j,
                                        const LaurentNum& alpha_j, const SlotVec& outer,
                                        unsigned nthreads = 0,
                                        const Budget& budget = Budget(),
                                        const BigInt* E_hint = nullptr) {
  const unsigned d = sys.d();
  const unsigned n = sys.n();
  const BidegreeBlock b = bidegree_block(d, sys.e(), j);
  const ArcParams ap = ArcParams::for_block(b);
  sys.require_slots(outer);

  // Inner sum over the live block slots.
  const std::uint64_t y_box = detail::slot_box_u64(F, n, b.y_slot);
  const std::uint64_t x_box = b.d1 > 0 ? detail::slot_box_u64(F, n, b.x_slot) : 1;
  const BigInt work = BigInt(x_box) * BigInt(y_box);
  budget.check_box(work, "lemma_T_bound_check");
  nthreads = detail::resolve_threads(nthreads);

  const std::vector<FqElem> adig = detail::alpha_digits(F, alpha_j, j);
  const TraceTable tt(F);
  auto fn = [&](std::uint64_t lo, std::uint64_t hi, CycloSum& acc) {
    SlotVec t = outer;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      detail::decode_slot(F, idx % y_box, n, b.y_slot, t[std::size_t(b.y_slot)]);
      if (b.d1 > 0)
        detail::decode_slot(F, idx / y_box, n, b.x_slot, t[std::size_t(b.x_slot)]);
      acc.add_root(detail::poly_phase_residue(F, tt, adig, sys.F_j(F, t, j)));
    }
  };
  CycloSum T = detail::parallel_fold(bigint_to_u64(work), nthreads, CycloSum(F.p()), fn);
  // When d1 = 0 the x-box of the bound is a dead factor of the sum.
  if (b.d1 == 0) T = T.scaled(bigint_pow(BigInt(F.q()), std::uint64_t(ap.P1) * n));

  TBoundReport r{T};
  if (E_hint != nullptr) {
    r.E_value = *E_hint;
  } else {
    const BidegreeForm G(sys.tensor(), b, n);
    r.E_value = eval_E(F, G, ap, alpha_j, nthreads, budget).as_integer;
  }
  r.E_zero = eval_E_zero(F, ap, n);

  const std::uint64_t pw = std::uint64_t(1) << (d - 1);
  const long double q_ld = (long double)(F.q());
  r.lhs = std::pow((long double)(T.abs_double()), (long double)(pw));
  r.rhs = std::pow(q_ld, (long double)(pw) * (ap.P1 + ap.P2) * n) *
          bigint_to_double(r.E_value) / bigint_to_double(r.E_zero);
  if (F.p() == 3 && d == 2) {
    r.exact_route = true;
    r.lhs_exact = (T * T.conj()).to_integer();
    // q^{2(P1+P2)n} / E(0) = q^{2(P1+P2)n - (d1 P1 + d2 P2) n}, a
    // nonnegative power since d1 + d2 = 2.
    const std::uint64_t expo =
        std::uint64_t(2) * unsigned(ap.P1 + ap.P2) * n -
        std::uint64_t((long long)(ap.d1) * ap.P1 + (long long)(ap.d2) * ap.P2) * n;
    r.rhs_exact = bigint_pow(BigInt(F.q()), expo) * r.E_value;
    r.pass = r.lhs_exact <= r.rhs_exact;
  } else {
    r.pass = leq_rel_tol(r.lhs, r.rhs);
  }
  return r;
}

//////////////////////////////////////////////////////////////////////
// The aggregate decoupling inequality.
//////////////////////////////////////////////////////////////////////

struct DecoupleReport {
  long double lhs = 0;  // |S(alpha)|^{2^{d-1}}
  long double rhs = 0;  // |U|^{2^{d-1}} prod_j (E_j(alpha_j)/E_j(0))^{1/(de+1)}
  std::vector<BigInt> E_values;
  std::vector<BigInt> E_zeros;
  bool pass = false;
};

namespace detail {

// rhs of the decoupling bound from per-component E values, computed in
// log space: 2^{d-1} log|U| + sum_j (log E_j - log E_j(0)) / (de+1).
inline long double decouple_rhs(const Field& F, long long boxdim, unsigned d,
                                const std::vector<BigInt>& E_values,
                                const std::vector<BigInt>& E_zeros) {
  const long double logq = std::log((long double)(F.q()));
  const std::size_t jc = E_values.size();
  long double log_rhs = (long double)(std::uint64_t(1) << (d - 1)) * boxdim * logq;
  for (std::size_t j = 0; j < jc; ++j) {
    const long double le = std::log(bigint_to_double(E_values[j]));
    const long double lz = std::log(bigint_to_double(E_zeros[j]));
    log_rhs += (le - lz) / (long double)(jc);
  }
  return std::exp(log_rhs);
}

}  // namespace detail

// |S(alpha)|^{2^{d-1}} <= E^{2^{d-1}} |U|^{2^{d-1}} prod_j |E_j|^{1/(de+1)}
// with E^{2^{d-1}} = prod_j E_j(0)^{-1/(de+1)} recomputed on the fly.
inline DecoupleReport decouple_check(const Field& F, const HyperForm& f, int e,
                                     const AlphaTuple& alpha, unsigned nthreads = 0,
                                     const Budget& budget = Budget()) {
  const FSystem sys(F, f, e);
  if (alpha.j_count() != sys.j_count())
    throw ParameterContract("decouple_check: alpha component count mismatch");
  DecoupleReport r;
  for (int j = 0; j < sys.j_count(); ++j) {
    const BidegreeBlock b = bidegree_block(f.d(), e, j);
    const ArcParams ap = ArcParams::for_block(b);
    const BidegreeForm G(sys.tensor(), b, f.n());
    r.E_values.push_back(
        eval_E(F, G, ap, alpha.component(F, j), nthreads, budget).as_integer);
    r.E_zeros.push_back(eval_E_zero(F, ap, f.n()));
  }
  const CycloSum S = eval_S(F, sys, alpha, nthreads, budget);
  const std::uint64_t pw = std::uint64_t(1) << (f.d() - 1);
  r.lhs = std::pow((long double)(S.abs_double()), (long double)(pw));
  r.rhs = detail::decouple_rhs(F, box_dim(f.n(), e), f.d(), r.E_values, r.E_zeros);
  r.pass = leq_rel_tol(r.lhs, r.rhs);
  return r;
}

//////////////////////////////////////////////////////////////////////
// Grid sweeps (the loops the acceptance gate runs).
//////////////////////////////////////////////////////////////////////

struct SweepReport {
  BigInt points = 0;
  BigInt failures = 0;
  long double worst_margin = 0;  // max of lhs/rhs over the sweep
  bool all_pass = false;
};

// Decoupling over the entire exact grid. E_j values are memoized per
// component value; S comes from the profile histogram.
inline SweepReport decouple_grid_sweep(const Field& F, const HyperForm& f, int e,
                                       unsigned nthreads = 0,
                                       const Budget& budget = Budget()) {
  const FSystem sys(F, f, e);
  const int jc = sys.j_count();
  const ProfileHistogram hist = profile_histogram(F, sys, nthreads, budget);

  // Memoize E_j over each component grid.
  std::vector<std::vector<BigInt>> Ej(static_cast<std::size_t>(jc));
  std::vector<BigInt> Ez(static_cast<std::size_t>(jc));
  for (int j = 0; j < jc; ++j) {
    const BidegreeBlock b = bidegree_block(f.d(), e, j);
    const ArcParams ap = ArcParams::for_block(b);
    const BidegreeForm G(sys.tensor(), b, f.n());
    Ez[std::size_t(j)] = eval_E_zero(F, ap, f.n());
    const std::uint64_t comp = bigint_to_u64(bigint_pow(BigInt(F.q()), unsigned(j) + 1));
    for (std::uint64_t v = 0; v < comp; ++v)
      Ej[std::size_t(j)].push_back(
          eval_E(F, G, ap, grid_alpha(F, j, v), nthreads, budget).as_integer);
  }

  const BigInt grid = AlphaTuple::grid_size(F, jc);
  budget.check_grid(grid * BigInt(hist.entries.size()), "decouple_grid_sweep");
  const std::uint64_t total = bigint_to_u64(grid);
  const std::uint64_t pw = std::uint64_t(1) << (f.d() - 1);

  SweepReport rep;
  rep.points = grid;
  std::vector<BigInt> evals(static_cast<std::size_t>(jc));
  const std::vector<BigInt>& ezeros = Ez;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const AlphaTuple alpha = AlphaTuple::from_index(F, jc, BigInt(idx));
    // Component value index within its own grid.
    for (int j = 0; j < jc; ++j) {
      std::uint64_t v = 0, scale = 1;
      for (int m = 0; m <= j; ++m) {
        v += scale * F.index_of(alpha.digit(j, m));
        scale *= F.q();
      }
      evals[std::size_t(j)] = Ej[std::size_t(j)][v];
    }
    const CycloSum S = eval_S_from_histogram(F, hist, alpha);
    const long double lhs =
        std::pow((long double)(S.abs_double()), (long double)(pw));
    const long double rhs =
        detail::decouple_rhs(F, box_dim(f.n(), e), f.d(), evals, ezeros);
    const long double margin = lhs / rhs;
    if (margin > rep.worst_margin) rep.worst_margin = margin;
    if (!leq_rel_tol(lhs, rhs)) rep.failures += 1;
  }
  rep.all_pass = rep.failures == 0;
  return rep;
}

// The Weyl bound over every component value of every block, each point
// tried with `outer_reps` random freezes of the outer slots.
inline SweepReport lemma_T_grid_sweep(const Field& F, const HyperForm& f, int e,
                                      Rng& rng, int outer_reps = 2,
                                      unsigned nthreads = 0,
                                      const Budget& budget = Budget()) {
  const FSystem sys(F, f, e);
  SweepReport rep;
  rep.all_pass = true;
  for (int j = 0; j < sys.j_count(); ++j) {
    const BidegreeBlock b = bidegree_block(f.d(), e, j);
    const ArcParams ap = ArcParams::for_block(b);
    const BidegreeForm G(sys.tensor(), b, f.n());
    const std::uint64_t comp = bigint_to_u64(bigint_pow(BigInt(F.q()), unsigned(j) + 1));
    for (std::uint64_t v = 0; v < comp; ++v) {
      const LaurentNum alpha_j = grid_alpha(F, j, v);
      const BigInt E_here = eval_E(F, G, ap, alpha_j, nthreads, budget).as_integer;
      for (int repi = 0; repi < outer_reps; ++repi) {
        const SlotVec outer = sys.random_slots(F, rng);
        const TBoundReport tb = lemma_T_bound_check(F, sys, j, alpha_j, outer,
                                                    nthreads, budget, &E_here);
        rep.points += 1;
        if (!tb.pass) rep.failures += 1;
        const long double margin =
            tb.exact_route
                ? bigint_to_double(tb.lhs_exact) /
                      std::max<long double>(1.0L, bigint_to_double(tb.rhs_exact))
                : tb.lhs / std::max<long double>(1.0L, tb.rhs);
        if (margin > rep.worst_margin) rep.worst_margin = margin;
      }
    }
  }
  rep.all_pass = rep.failures == 0;
  return rep;
}

}  // namespace ffmoduli
