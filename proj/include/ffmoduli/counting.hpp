#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/forms.hpp"
#include "ffmoduli/linalg.hpp"
#include "ffmoduli/poly.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Exact solution counting for the coefficient system.
//
// The count is #{ t in the slot box : F_j(t) = 0 for all j }, with the
// slot box as in FSystem (slot s ranges over q^{n(s+1)} vectors). The
// heuristic prediction is q^muhat, so the result also carries the
// exact ratio N / q^muhat.
//
// Strategies:
//   naive        — walk the whole box, reject on the first nonzero F_j
//                  (falls back to the monomial route when the tensor
//                  does not exist mod p).
//   root-first   — depth-first over slots; after fixing slots 0..s the
//                  forms F_0..F_s are determined, so each level prunes.
//   quadric-solve— degree 2 only: fix slots 0..e-1 as in root-first;
//                  the conditions F_e..F_{2e-1} are affine in the last
//                  slot, so solve them exactly and enumerate only the
//                  affine solution space, checking F_{2e} = f(t_e).
// All strategies return identical counts; that agreement is itself one
// of the library's cross-checks.
//////////////////////////////////////////////////////////////////////

enum class CountStrategy { kAuto, kNaive, kRootFirst, kQuadricSolve };

struct CountResult {
  BigInt N = 0;
  BigInt box_size = 0;
  long long box_dimension = 0;
  long long muhat = 0;
  long long mu = 0;
  BigRat ratio = 0;  // N / q^muhat, exact
  std::string strategy_used;
  unsigned threads_used = 1;
};

// n must exceed this for the asymptotic count to be within the range
// of the sieve argument; small configs run outside it by design.
inline long long theorem_n_threshold(unsigned d, int e) {
  return (1LL << d) * (long long)(d - 1) * ((long long)(d)*e + 1);
}

namespace detail {

// Decode a base-q digit block into slot s (digits k = 0..s per
// coordinate, coordinate-major).
inline void decode_slot(const Field& F, std::uint64_t idx, unsigned n, int s,
                        std::vector<Poly>& out) {
  out.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    Poly c(std::size_t(s) + 1);
    for (int k = 0; k <= s; ++k) {
      c[std::size_t(k)] = F.at(idx % F.q());
      idx /= F.q();
    }
    ptrim(c);
    out[i] = std::move(c);
  }
}

inline std::uint64_t slot_box_u64(const Field& F, unsigned n, int s) {
  return bigint_to_u64(bigint_pow(BigInt(F.q()), std::uint64_t(n) * unsigned(s + 1)));
}

// Shared cancellation-free work meter: threads bump it and compare to
// the cap, throwing BudgetExceeded past the line.
struct WorkMeter {
  std::atomic<std::uint64_t> done{0};
  std::uint64_t cap;
  explicit WorkMeter(const BigInt& limit)
      : cap(limit > BigInt(~std::uint64_t(0)) ? ~std::uint64_t(0) : bigint_to_u64(limit)) {}
  void bump(std::uint64_t k, const char* where) {
    if (done.fetch_add(k, std::memory_order_relaxed) + k > cap)
      throw BudgetExceeded(std::string(where) + ": enumeration passed the work cap");
  }
};

// Run fn(chunk_lo, chunk_hi, acc) over [0, total) split across
// nthreads; rethrows the first exception; returns the sum of per-chunk
// counts (deterministic: addition is commutative).
template <class Fn>
inline BigInt parallel_count(std::uint64_t total, unsigned nthreads, Fn&& fn) {
  if (nthreads <= 1 || total < 2 * nthreads) {
    BigInt acc = 0;
    fn(std::uint64_t(0), total, acc);
    return acc;
  }
  std::vector<BigInt> acc(nthreads, BigInt(0));
  std::vector<std::exception_ptr> errs(nthreads);
  std::vector<std::thread> pool;
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
  BigInt sum = 0;
  for (const auto& a : acc) sum += a;
  return sum;
}

}  // namespace detail

//////////////////////////////////////////////////////////////////////
// Strategy bodies. Each takes the field, the form, e, thread count,
// and budget, and returns the bare count.
//////////////////////////////////////////////////////////////////////

inline BigInt count_naive(const Field& F, const HyperForm& f, int e, unsigned nthreads,
                          const Budget& budget) {
  const unsigned n = f.n();
  const BigInt total_big = bigint_pow(BigInt(F.q()), std::uint64_t(box_dim(n, e)));
  budget.check_box(total_big, "count_N(naive)");
  const std::uint64_t total = bigint_to_u64(total_big);
  const bool have_tensor = F.p() > f.d();
  // Tensor route when it exists; otherwise check the bivariate
  // expansion f(g) = 0 directly from the monomials.
  if (have_tensor) {
    const FSystem sys(F, f, e);
    return detail::parallel_count(total, nthreads,
                                  [&](std::uint64_t lo, std::uint64_t hi, BigInt& acc) {
      SlotVec t(std::size_t(e) + 1);
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        std::uint64_t rest = idx;
        for (int s = 0; s <= e; ++s) {
          const std::uint64_t w = detail::slot_box_u64(F, n, s);
          detail::decode_slot(F, rest % w, n, s, t[std::size_t(s)]);
          rest /= w;
        }
        bool ok = true;
        for (int j = 0; j <= int(f.d()) * e && ok; ++j) ok = pis_zero(sys.F_j(F, t, j));
        if (ok) ++acc;
      }
    });
  }
  return detail::parallel_count(total, nthreads,
                                [&](std::uint64_t lo, std::uint64_t hi, BigInt& acc) {
    SlotVec t(std::size_t(e) + 1);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t rest = idx;
      for (int s = 0; s <= e; ++s) {
        const std::uint64_t w = detail::slot_box_u64(F, n, s);
        detail::decode_slot(F, rest % w, n, s, t[std::size_t(s)]);
        rest /= w;
      }
      // f(g) with v specialized along each coefficient: expand via the
      // bivariate route used by decomposition_check, inline and small.
      detail::Bivar fg;
      std::vector<detail::Bivar> g(n);
      for (unsigned i = 0; i < n; ++i)
        for (int s = 0; s <= e; ++s) {
          const Poly& c = t[std::size_t(s)][i];
          for (long long k = 0; k < (long long)c.size(); ++k)
            detail::bivar_add_term(F, g[i], int(k), e - s, c[std::size_t(k)]);
        }
      for (const auto& [exps, cc] : f.terms()) {
        detail::Bivar term;
        detail::bivar_add_term(F, term, 0, 0, F.from_int(cc));
        for (unsigned i = 0; i < n; ++i)
          for (unsigned a = 0; a < exps[i]; ++a) term = detail::bivar_mul(F, term, g[i]);
        for (const auto& [key, c2] : term) detail::bivar_add_term(F, fg, key.first, key.second, c2);
      }
      if (fg.empty()) ++acc;
    }
  });
}

inline BigInt count_root_first(const Field& F, const HyperForm& f, int e, unsigned nthreads,
                               const Budget& budget) {
  const unsigned n = f.n();
  budget.check_box(bigint_pow(BigInt(F.q()), std::uint64_t(box_dim(n, e))),
                   "count_N(root-first)");
  const FSystem sys(F, f, e);
  const int jmax = int(f.d()) * e;
  const std::uint64_t top_box = detail::slot_box_u64(F, n, 0);
  return detail::parallel_count(top_box, nthreads,
                                [&](std::uint64_t lo, std::uint64_t hi, BigInt& acc) {
    SlotVec t(std::size_t(e) + 1);
    for (int s = 0; s <= e; ++s) t[std::size_t(s)].assign(n, Poly{});
    auto dfs = [&](auto&& self, int s) -> void {
      const std::uint64_t w = detail::slot_box_u64(F, n, s);
      const std::uint64_t from = (s == 0) ? lo : 0;
      const std::uint64_t to = (s == 0) ? hi : w;
      for (std::uint64_t idx = from; idx < to; ++idx) {
        detail::decode_slot(F, idx, n, s, t[std::size_t(s)]);
        if (s < e) {
          if (!pis_zero(sys.F_j(F, t, s))) continue;
          self(self, s + 1);
        } else {
          bool ok = true;
          for (int j = (e < jmax ? e : 0); j <= jmax && ok; ++j)
            ok = pis_zero(sys.F_j(F, t, j));
          if (ok) ++acc;
        }
      }
    };
    dfs(dfs, 0);
  });
}

inline BigInt count_quadric_solve(const Field& F, const HyperForm& f, int e, unsigned nthreads,
                                  const Budget& budget) {
  if (f.d() != 2)
    throw ParameterContract("count_N(quadric-solve): strategy requires degree 2");
  const unsigned n = f.n();
  if (e == 0) return count_root_first(F, f, e, nthreads, budget);
  const FSystem sys(F, f, e);
  detail::WorkMeter meter(budget.box_limit());
  const std::uint64_t top_box = detail::slot_box_u64(F, n, 0);
  const std::uint64_t last_w = std::uint64_t(n) * unsigned(e + 1);  // unknowns in t_e
  return detail::parallel_count(top_box, nthreads,
                                [&](std::uint64_t lo, std::uint64_t hi, BigInt& acc) {
    SlotVec t(std::size_t(e) + 1);
    for (int s = 0; s <= e; ++s) t[std::size_t(s)].assign(n, Poly{});
    // Rows: u-coefficients 0..j of F_j for j = e..2e-1.
    auto affine_rows = [&](std::vector<FqElem>& out) {
      out.clear();
      for (int j = e; j <= 2 * e - 1; ++j) {
        const Poly fj = sys.F_j(F, t, j);
        for (int k = 0; k <= j; ++k) out.push_back(pcoeff(fj, k));
      }
    };
    auto dfs = [&](auto&& self, int s) -> void {
      if (s == e) {
        meter.bump(1, "count_N(quadric-solve)");
        // Constant part: t_e = 0.
        t[std::size_t(e)].assign(n, Poly{});
        std::vector<FqElem> c0;
        affine_rows(c0);
        // Columns: unit coefficient vectors of t_e.
        Mat A(c0.size(), std::vector<FqElem>(last_w));
        std::vector<FqElem> col;
        for (std::uint64_t u = 0; u < last_w; ++u) {
          const unsigned i = unsigned(u / unsigned(e + 1));
          const int k = int(u % unsigned(e + 1));
          t[std::size_t(e)].assign(n, Poly{});
          t[std::size_t(e)][i] = pmonomial(F, F.one(), std::size_t(k));
          affine_rows(col);
          for (std::size_t r = 0; r < col.size(); ++r) A[r][u] = F.sub(col[r], c0[r]);
        }
        std::vector<FqElem> rhs(c0.size());
        for (std::size_t r = 0; r < c0.size(); ++r) rhs[r] = F.neg(c0[r]);
        const AffineSolution solb = solve_affine(F, A, rhs);
        if (!solb.consistent) return;
        // Enumerate particular + span(nullspace).
        const std::size_t dim = solb.nullspace.size();
        const std::uint64_t count = bigint_to_u64(bigint_pow(BigInt(F.q()), dim));
        std::vector<FqElem> x(last_w);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
          if ((idx & 0xfff) == 0) meter.bump(0x1000, "count_N(quadric-solve)");
          x = solb.particular;
          std::uint64_t rest = idx;
          for (std::size_t m = 0; m < dim; ++m) {
            const FqElem lam = F.at(rest % F.q());
            rest /= F.q();
            if (lam.is_zero()) continue;
            for (std::uint64_t u = 0; u < last_w; ++u)
              x[u] = F.add(x[u], F.mul(lam, solb.nullspace[m][u]));
          }
          for (unsigned i = 0; i < n; ++i) {
            Poly c(std::size_t(e) + 1);
            for (int k = 0; k <= e; ++k) c[std::size_t(k)] = x[i * unsigned(e + 1) + unsigned(k)];
            ptrim(c);
            t[std::size_t(e)][i] = std::move(c);
          }
          if (pis_zero(sys.F_j(F, t, 2 * e))) ++acc;
        }
        return;
      }
      const std::uint64_t w = detail::slot_box_u64(F, n, s);
      const std::uint64_t from = (s == 0) ? lo : 0;
      const std::uint64_t to = (s == 0) ? hi : w;
      for (std::uint64_t idx = from; idx < to; ++idx) {
        detail::decode_slot(F, idx, n, s, t[std::size_t(s)]);
        if (!pis_zero(sys.F_j(F, t, s))) continue;
        self(self, s + 1);
      }
    };
    dfs(dfs, 0);
  });
}

//////////////////////////////////////////////////////////////////////
// Dispatch, bookkeeping, ratio.
//////////////////////////////////////////////////////////////////////

inline const char* strategy_name(CountStrategy s) {
  switch (s) {
    case CountStrategy::kNaive: return "naive";
    case CountStrategy::kRootFirst: return "root-first";
    case CountStrategy::kQuadricSolve: return "quadric-solve";
    default: return "auto";
  }
}

inline BigRat power_ratio(const BigInt& N, std::uint64_t q, long long expo) {
  if (expo >= 0) return BigRat(N, bigint_pow(BigInt(q), std::uint64_t(expo)));
  return BigRat(N * bigint_pow(BigInt(q), std::uint64_t(-expo)), 1);
}

inline CountResult count_N(const Field& F, const HyperForm& f, int e,
                           CountStrategy strategy = CountStrategy::kAuto,
                           unsigned nthreads = 0, const Budget& budget = Budget()) {
  if (e < 0) throw ParameterContract("count_N: e must be >= 0");
  if (nthreads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    nthreads = hw == 0 ? 1 : (hw > 16 ? 16 : hw);
  }
  CountStrategy chosen = strategy;
  if (chosen == CountStrategy::kAuto) {
    if (F.p() <= f.d()) chosen = CountStrategy::kNaive;  // no tensor mod p
    else if (f.d() == 2 && e >= 1) chosen = CountStrategy::kQuadricSolve;
    else chosen = CountStrategy::kRootFirst;
  }
  CountResult r;
  switch (chosen) {
    case CountStrategy::kNaive: r.N = count_naive(F, f, e, nthreads, budget); break;
    case CountStrategy::kRootFirst: r.N = count_root_first(F, f, e, nthreads, budget); break;
    case CountStrategy::kQuadricSolve:
      r.N = count_quadric_solve(F, f, e, nthreads, budget);
      break;
    default: throw ParameterContract("count_N: unresolved strategy");
  }
  r.box_dimension = box_dim(f.n(), e);
  r.box_size = bigint_pow(BigInt(F.q()), std::uint64_t(r.box_dimension));
  r.muhat = muhat_dim(f.n(), f.d(), e);
  r.mu = r.muhat - 1;
  r.ratio = power_ratio(r.N, F.q(), r.muhat);
  r.strategy_used = strategy_name(chosen);
  r.threads_used = nthreads;
  return r;
}

}  // namespace ffmoduli
