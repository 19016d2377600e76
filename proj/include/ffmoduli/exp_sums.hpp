#pragma once

//////////////////////////////////////////////////////////////////////
// exp_sums.hpp
//
// Character sums over the coefficient box and the exact phase-grid
// integral that recovers the solution count from them.
//
// The condition system {F_j(t) = 0, j = 0..de} is detected by additive
// characters: each F_j is a u-polynomial of degree <= j, and for a
// phase component
//
//   alpha_j = a_{j,0} u^{-1} + a_{j,1} u^{-2} + ... + a_{j,j} u^{-(j+1)}
//
// the pairing psi(alpha_j F_j(t)) reads exactly the j+1 stored digits
// of alpha_j and nothing deeper. Averaging the full sum
//
//   S(alpha) = sum over the slot box t of psi(sum_j alpha_j F_j(t))
//
// over the grid of q^{sum_j (j+1)} = q^{C(de+2,2)} digit tuples kills
// every t with some F_j(t) != 0 and counts the rest with weight one:
//
//   N(e) * q^{C(de+2,2)} = sum over the grid of S(alpha),
//
// an exact identity in Z[zeta_p]. The evaluator below computes the
// right-hand side point by point (never by swapping the two sums,
// which would reduce the check to a tautology) and verifies that the
// total is a rational integer divisible by the grid size.
//////////////////////////////////////////////////////////////////////

#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/character.hpp"
#include "ffmoduli/counting.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/forms.hpp"
#include "ffmoduli/laurent.hpp"
#include "ffmoduli/poly.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// AlphaTuple: one point of the phase grid.
//
// Component j holds digits a_{j,m} = coefficient of u^{-(m+1)} for
// m = 0..j. Flattened order is j ascending, m ascending within j, so
// tuple index 1 is alpha_0 = u^{-1} with everything else zero. The
// grid is a complete set of cell representatives: deeper digits of
// alpha_j never reach psi(alpha_j F_j(t)) because deg F_j <= j.
//////////////////////////////////////////////////////////////////////

class AlphaTuple {
 public:
  AlphaTuple(const Field& F, int j_count) {
    (void)F;
    if (j_count < 1) throw ParameterContract("AlphaTuple: j_count must be >= 1");
    digits_.resize(std::size_t(j_count));
    for (int j = 0; j < j_count; ++j)
      digits_[std::size_t(j)].assign(std::size_t(j) + 1, FqElem{});
  }

  static BigInt grid_size(const Field& F, int j_count) {
    if (j_count < 1) throw ParameterContract("AlphaTuple: j_count must be >= 1");
    const std::uint64_t digits =
        std::uint64_t(j_count) * std::uint64_t(j_count + 1) / 2;
    return bigint_pow(BigInt(F.q()), digits);
  }

  // Mixed-radix decode, least significant digit first in flattened order.
  static AlphaTuple from_index(const Field& F, int j_count, BigInt idx) {
    if (idx < 0 || idx >= grid_size(F, j_count))
      throw ParameterContract("AlphaTuple: index outside the grid");
    AlphaTuple a(F, j_count);
    const BigInt q(F.q());
    for (int j = 0; j < j_count; ++j)
      for (int m = 0; m <= j; ++m) {
        a.digits_[std::size_t(j)][std::size_t(m)] =
            F.at(bigint_to_u64(idx % q));
        idx /= q;
      }
    return a;
  }

  BigInt index_of(const Field& F) const {
    BigInt idx = 0;
    const BigInt q(F.q());
    for (std::size_t j = digits_.size(); j-- > 0;)
      for (std::size_t m = digits_[j].size(); m-- > 0;)
        idx = idx * q + BigInt(F.index_of(digits_[j][m]));
    return idx;
  }

  int j_count() const { return int(digits_.size()); }
  int digit_count() const { return j_count() * (j_count() + 1) / 2; }

  FqElem digit(int j, int m) const {
    check_pos(j, m);
    return digits_[std::size_t(j)][std::size_t(m)];
  }
  void set_digit(int j, int m, FqElem a) {
    check_pos(j, m);
    digits_[std::size_t(j)][std::size_t(m)] = a;
  }

  // Component j as an exact torus element (zero stays exactly zero).
  LaurentNum component(const Field& F, int j) const {
    (void)F;
    check_pos(j, 0);
    const auto& d = digits_[std::size_t(j)];
    // Window descending from u^{-1}: index m holds the u^{-(m+1)} digit.
    std::vector<FqElem> win(d.begin(), d.end());
    return LaurentNum::from_window(std::move(win), -1, Ord::neg_inf());
  }

  bool is_zero() const {
    for (const auto& row : digits_)
      for (FqElem a : row)
        if (!a.is_zero()) return false;
    return true;
  }

  // All digits in flattened order (j ascending, m ascending).
  std::vector<FqElem> flat() const {
    std::vector<FqElem> out;
    out.reserve(std::size_t(digit_count()));
    for (const auto& row : digits_)
      for (FqElem a : row) out.push_back(a);
    return out;
  }

  std::string str(const Field& F) const {
    std::string s = "(";
    for (int j = 0; j < j_count(); ++j) {
      if (j) s += "; ";
      s += component(F, j).str(F);
    }
    return s + ")";
  }

 private:
  void check_pos(int j, int m) const {
    if (j < 0 || j >= j_count() || m < 0 || m > j)
      throw ParameterContract("AlphaTuple: digit position out of range");
  }

  std::vector<std::vector<FqElem>> digits_;
};

// One component of the grid on its own: the j-th phase factor ranges
// over q^{j+1} values, digit m of idx landing at u^{-(m+1)}. Exact.
inline LaurentNum grid_alpha(const Field& F, int j, std::uint64_t idx) {
  if (j < 0) throw ParameterContract("grid_alpha: j must be >= 0");
  std::vector<FqElem> win(std::size_t(j) + 1);
  for (int m = 0; m <= j; ++m) {
    win[std::size_t(m)] = F.at(idx % F.q());
    idx /= F.q();
  }
  if (idx != 0) throw ParameterContract("grid_alpha: index outside the component grid");
  return LaurentNum::from_window(std::move(win), -1, Ord::neg_inf());
}

namespace detail {

inline unsigned resolve_threads(unsigned nthreads) {
  if (nthreads != 0) return nthreads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : (hw > 16 ? 16 : hw);
}

// Split [0, total) into contiguous chunks, fold fn into per-thread
// copies of init, combine with += in thread order. Addition in every
// accumulator we use is commutative and exact, so the result is
// deterministic regardless of scheduling.
template <class Acc, class Fn>
inline Acc parallel_fold(std::uint64_t total, unsigned nthreads, Acc init, Fn&& fn) {
  if (nthreads <= 1 || total < 2 * nthreads) {
    fn(std::uint64_t(0), total, init);
    return init;
  }
  std::vector<Acc> acc(nthreads, init);
  std::vector<std::exception_ptr> errs(nthreads);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const std::uint64_t step = total / nthreads;
  for (unsigned t = 0; t < nthreads; ++t) {
    const std::uint64_t lo = t * step;
    const std::uint64_t hi = (t + 1 == nthreads) ? total : lo + step;
    pool.emplace_back([&, t, lo, hi] {
      try {
        fn(lo, hi, acc[t]);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& ep : errs)
    if (ep) std::rethrow_exception(ep);
  for (unsigned t = 1; t < nthreads; ++t) acc[0] += acc[t];
  return std::move(acc[0]);
}

// Decode a flat box index into the slot vector (slot 0 least
// significant, matching the counting loops).
inline void decode_box_point(const Field& F, std::uint64_t idx, unsigned n, int e,
                             SlotVec& t) {
  t.resize(std::size_t(e) + 1);
  for (int s = 0; s <= e; ++s) {
    const std::uint64_t w = slot_box_u64(F, n, s);
    decode_slot(F, idx % w, n, s, t[std::size_t(s)]);
    idx /= w;
  }
}

// Residue of tr(sum_{j,m} digit_{j,m} * coeff_{j,m}) given both sides
// flattened in the same order.
inline std::uint32_t phase_residue(const Field& F, const TraceTable& tt,
                                   const std::vector<FqElem>& digits,
                                   const std::vector<std::uint64_t>& profile_raw) {
  FqElem s{};
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i].is_zero()) continue;
    s = F.add(s, F.mul(digits[i], FqElem::from_raw(profile_raw[i])));
  }
  return tt(F, s);
}

}  // namespace detail

//////////////////////////////////////////////////////////////////////
// Coefficient profiles. The phase of a box point t depends on t only
// through the u-coefficients of (F_0(t), ..., F_de(t)) — that flat
// vector of C(de+2,2) field elements is the point's profile. The
// histogram of profiles compresses the box without losing any exact
// information, since S(alpha) is a profile-weighted character sum.
//////////////////////////////////////////////////////////////////////

struct ProfileHistogram {
  // Distinct profiles (raw FqElem encodings, flattened j ascending then
  // m ascending) with box multiplicities.
  std::vector<std::pair<std::vector<std::uint64_t>, BigInt>> entries;
  BigInt box_points = 0;
  int j_count = 0;
};

namespace detail {

struct HistAcc {
  std::map<std::vector<std::uint64_t>, BigInt> m;
  HistAcc& operator+=(const HistAcc& o) {
    for (const auto& [k, v] : o.m) m[k] += v;
    return *this;
  }
};

}  // namespace detail

inline ProfileHistogram profile_histogram(const Field& F, const FSystem& sys,
                                          unsigned nthreads = 0,
                                          const Budget& budget = Budget()) {
  nthreads = detail::resolve_threads(nthreads);
  const BigInt box = bigint_pow(BigInt(F.q()),
                                std::uint64_t(box_dim(sys.n(), sys.e())));
  budget.check_box(box, "profile_histogram");
  const std::uint64_t total = bigint_to_u64(box);

  auto fn = [&](std::uint64_t lo, std::uint64_t hi, detail::HistAcc& acc) {
    SlotVec t;
    std::vector<std::uint64_t> key;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      detail::decode_box_point(F, idx, sys.n(), sys.e(), t);
      key.clear();
      for (int j = 0; j < sys.j_count(); ++j) {
        const Poly fj = sys.F_j(F, t, j);
        for (int m = 0; m <= j; ++m) key.push_back(pcoeff(fj, m).raw());
      }
      acc.m[key] += 1;
    }
  };
  detail::HistAcc merged =
      detail::parallel_fold(total, nthreads, detail::HistAcc{}, fn);

  ProfileHistogram h;
  h.j_count = sys.j_count();
  h.box_points = box;
  BigInt mass = 0;
  h.entries.reserve(merged.m.size());
  for (auto& [k, v] : merged.m) {
    mass += v;
    h.entries.emplace_back(k, v);
  }
  if (mass != box)
    throw std::logic_error("profile_histogram: multiplicities do not sum to the box size");
  return h;
}

//////////////////////////////////////////////////////////////////////
// S(alpha), two independent routes.
//////////////////////////////////////////////////////////////////////

// Direct route: walk the whole slot box and accumulate psi phases.
inline CycloSum eval_S(const Field& F, const FSystem& sys, const AlphaTuple& alpha,
                       unsigned nthreads = 0, const Budget& budget = Budget()) {
  if (alpha.j_count() != sys.j_count())
    throw ParameterContract("eval_S: alpha has " + std::to_string(alpha.j_count()) +
                            " components, the system wants " +
                            std::to_string(sys.j_count()));
  nthreads = detail::resolve_threads(nthreads);
  const BigInt box = bigint_pow(BigInt(F.q()),
                                std::uint64_t(box_dim(sys.n(), sys.e())));
  budget.check_box(box, "eval_S");
  const std::uint64_t total = bigint_to_u64(box);
  const TraceTable tt(F);
  const std::vector<FqElem> digits = alpha.flat();

  auto fn = [&](std::uint64_t lo, std::uint64_t hi, CycloSum& acc) {
    SlotVec t;
    std::vector<std::uint64_t> key;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      detail::decode_box_point(F, idx, sys.n(), sys.e(), t);
      key.clear();
      for (int j = 0; j < sys.j_count(); ++j) {
        const Poly fj = sys.F_j(F, t, j);
        for (int m = 0; m <= j; ++m) key.push_back(pcoeff(fj, m).raw());
      }
      acc.add_root(detail::phase_residue(F, tt, digits, key));
    }
  };
  return detail::parallel_fold(total, nthreads, CycloSum(F.p()), fn);
}

// Histogram route: profile-weighted character sum.
inline CycloSum eval_S_from_histogram(const Field& F, const ProfileHistogram& hist,
                                      const AlphaTuple& alpha) {
  if (alpha.j_count() != hist.j_count)
    throw ParameterContract("eval_S_from_histogram: component count mismatch");
  const TraceTable tt(F);
  const std::vector<FqElem> digits = alpha.flat();
  CycloSum acc(F.p());
  for (const auto& [key, count] : hist.entries)
    acc.add_root_times(detail::phase_residue(F, tt, digits, key), count);
  return acc;
}

//////////////////////////////////////////////////////////////////////
// The exact grid integral.
//////////////////////////////////////////////////////////////////////

struct IntegralResult {
  BigInt N = 0;               // recovered solution count
  BigInt grid_points = 0;     // q^{C(de+2,2)}
  BigInt box_points = 0;      // q^{n C(e+2,2)}
  BigInt profile_classes = 0; // distinct coefficient profiles seen
  long long muhat = 0;
  BigRat ratio;               // N / q^{muhat}
  unsigned threads_used = 1;
};

inline IntegralResult exact_integral_N(const Field& F, const HyperForm& f, int e,
                                       unsigned nthreads = 0,
                                       const Budget& budget = Budget()) {
  if (e < 0) throw ParameterContract("exact_integral_N: e must be >= 0");
  nthreads = detail::resolve_threads(nthreads);
  const FSystem sys(F, f, e);
  const ProfileHistogram hist = profile_histogram(F, sys, nthreads, budget);

  const int jc = sys.j_count();
  const BigInt grid = AlphaTuple::grid_size(F, jc);
  budget.check_grid(grid * BigInt(hist.entries.size()), "exact_integral_N");
  const std::uint64_t total = bigint_to_u64(grid);
  const TraceTable tt(F);

  auto fn = [&](std::uint64_t lo, std::uint64_t hi, CycloSum& acc) {
    std::vector<FqElem> digits;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const AlphaTuple alpha = AlphaTuple::from_index(F, jc, BigInt(idx));
      digits = alpha.flat();
      for (const auto& [key, count] : hist.entries)
        acc.add_root_times(detail::phase_residue(F, tt, digits, key), count);
    }
  };
  const CycloSum totalsum =
      detail::parallel_fold(total, nthreads, CycloSum(F.p()), fn);

  if (!totalsum.is_rational_integer())
    throw OrthogonalityViolated(
        "grid sum of S(alpha) is not a rational integer: " + totalsum.str());
  const BigInt T = totalsum.to_integer();
  if (T < 0 || T % grid != 0)
    throw OrthogonalityViolated("grid sum " + bigint_str(T) +
                                " is not a nonnegative multiple of the grid size " +
                                bigint_str(grid));

  IntegralResult r;
  r.N = T / grid;
  r.grid_points = grid;
  r.box_points = hist.box_points;
  r.profile_classes = BigInt(hist.entries.size());
  r.muhat = muhat_dim(sys.n(), sys.d(), e);
  r.ratio = power_ratio(r.N, F.q(), r.muhat);
  r.threads_used = nthreads;
  return r;
}

}  // namespace ffmoduli
