#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/laurent.hpp"
#include "ffmoduli/poly.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Exact sums of p-th roots of unity.
//
// A CycloSum stores integer multiplicities m_r of zeta^r for
// r = 0..p-1, zeta = exp(2*pi*i/p). The only relation among the
// powers is 1 + zeta + ... + zeta^{p-1} = 0, so two multiplicity
// vectors represent the same number iff they differ by a constant
// vector; the canonical form shifts the minimum entry to zero.
// Character sums land in this ring, which lets every identity check
// run in exact arithmetic.
//////////////////////////////////////////////////////////////////////

class CycloSum {
 public:
  static constexpr std::uint32_t kMaxP = 101;

  explicit CycloSum(std::uint32_t p) : p_(p), m_(p) {
    if (p < 2 || p > kMaxP)
      throw ParameterContract("CycloSum order must be a prime in [2, " +
                              std::to_string(kMaxP) + "], got " + std::to_string(p));
  }

  static CycloSum integer(std::uint32_t p, BigInt v) {
    CycloSum s(p);
    s.m_[0] = std::move(v);
    return s;
  }
  static CycloSum root(std::uint32_t p, std::uint32_t r) {
    CycloSum s(p);
    s.m_[r % p] = 1;
    return s;
  }

  std::uint32_t p() const { return p_; }
  const std::vector<BigInt>& counts() const { return m_; }

  void add_root(std::uint32_t r) { ++m_[r % p_]; }
  void add_root_times(std::uint32_t r, const BigInt& k) { m_[r % p_] += k; }

  CycloSum& operator+=(const CycloSum& o) {
    require_same_p(o);
    for (std::uint32_t r = 0; r < p_; ++r) m_[r] += o.m_[r];
    return *this;
  }
  CycloSum& operator-=(const CycloSum& o) {
    require_same_p(o);
    for (std::uint32_t r = 0; r < p_; ++r) m_[r] -= o.m_[r];
    return *this;
  }
  friend CycloSum operator+(CycloSum a, const CycloSum& b) { return a += b; }
  friend CycloSum operator-(CycloSum a, const CycloSum& b) { return a -= b; }
  CycloSum operator-() const {
    CycloSum s(p_);
    for (std::uint32_t r = 0; r < p_; ++r) s.m_[r] = -m_[r];
    return s;
  }
  CycloSum scaled(const BigInt& k) const {
    CycloSum s(p_);
    for (std::uint32_t r = 0; r < p_; ++r) s.m_[r] = m_[r] * k;
    return s;
  }
  // Product in Z[zeta_p]: zeta^a * zeta^b = zeta^{a+b mod p}.
  friend CycloSum operator*(const CycloSum& a, const CycloSum& b) {
    a.require_same_p(b);
    CycloSum s(a.p_);
    for (std::uint32_t i = 0; i < a.p_; ++i) {
      if (a.m_[i] == 0) continue;
      for (std::uint32_t j = 0; j < a.p_; ++j) {
        if (b.m_[j] == 0) continue;
        s.m_[(i + j) % a.p_] += a.m_[i] * b.m_[j];
      }
    }
    return s;
  }
  CycloSum conj() const {
    CycloSum s(p_);
    for (std::uint32_t r = 0; r < p_; ++r) s.m_[(p_ - r) % p_] = m_[r];
    return s;
  }

  // Canonical multiplicities: minimum entry shifted to zero.
  CycloSum canonical() const {
    CycloSum s = *this;
    BigInt mn = s.m_[0];
    for (std::uint32_t r = 1; r < p_; ++r)
      if (s.m_[r] < mn) mn = s.m_[r];
    for (std::uint32_t r = 0; r < p_; ++r) s.m_[r] -= mn;
    return s;
  }

  friend bool operator==(const CycloSum& a, const CycloSum& b) {
    a.require_same_p(b);
    // Same value iff the multiplicity vectors differ by a constant.
    const BigInt d = a.m_[0] - b.m_[0];
    for (std::uint32_t r = 1; r < a.p_; ++r)
      if (a.m_[r] - b.m_[r] != d) return false;
    return true;
  }
  friend bool operator!=(const CycloSum& a, const CycloSum& b) { return !(a == b); }

  bool is_zero() const { return *this == CycloSum(p_); }

  // The value is a rational integer iff zeta,...,zeta^{p-1} carry equal
  // multiplicities; the value is then m_0 - m_1.
  bool is_rational_integer() const {
    for (std::uint32_t r = 2; r < p_; ++r)
      if (m_[r] != m_[1]) return false;
    return true;
  }
  BigInt to_integer() const {
    if (!is_rational_integer())
      throw std::logic_error("CycloSum: value is not a rational integer");
    return m_[0] - m_[1];
  }

  // Complex magnitude, for inequality checks (those are allowed a
  // floating tolerance; identities stay exact).
  double abs_double() const {
    long double re = 0, im = 0;
    const long double tau = 2.0L * 3.141592653589793238462643383279502884L;
    for (std::uint32_t r = 0; r < p_; ++r) {
      if (m_[r] == 0) continue;
      const long double c = bigint_to_double(m_[r]);
      re += c * std::cos(tau * r / p_);
      im += c * std::sin(tau * r / p_);
    }
    return double(std::sqrt(re * re + im * im));
  }

  std::string str() const {
    CycloSum c = canonical();
    if (c.is_rational_integer()) return bigint_str(c.to_integer());
    std::string s;
    for (std::uint32_t r = 0; r < p_; ++r) {
      if (c.m_[r] == 0) continue;
      if (!s.empty()) s += "+";
      s += bigint_str(c.m_[r]);
      if (r > 0) s += "*z^" + std::to_string(r);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void require_same_p(const CycloSum& o) const {
    if (p_ != o.p_) throw ParameterContract("CycloSum: mixed root orders");
  }
  std::uint32_t p_;
  std::vector<BigInt> m_;
};

//////////////////////////////////////////////////////////////////////
// The additive character psi on F_q((1/u)): psi(x) = e_q(res x) where
// res x is the coefficient of u^-1 and e_q(a) = zeta_p^{tr(a)}, with
// tr the absolute trace F_q -> F_p.
//////////////////////////////////////////////////////////////////////

// Lookup table of absolute-trace residues, indexed by Field::index_of.
class TraceTable {
 public:
  explicit TraceTable(const Field& F) : tab_(F.q()) {
    for (std::uint64_t i = 0; i < F.q(); ++i) tab_[i] = F.trace_residue(F.at(i));
  }
  std::uint32_t operator()(const Field& F, FqElem a) const { return tab_[F.index_of(a)]; }
  std::uint32_t by_index(std::uint64_t i) const { return tab_[i]; }

 private:
  std::vector<std::uint32_t> tab_;
};

inline std::uint32_t psi_residue(const Field& F, const LaurentNum& x) {
  return F.trace_residue(x.coeff_at(-1));
}

inline CycloSum psi(const Field& F, const LaurentNum& x) {
  return CycloSum::root(F.p(), psi_residue(F, x));
}

// e_q on a single field element.
inline CycloSum additive_char(const Field& F, FqElem a) {
  return CycloSum::root(F.p(), F.trace_residue(a));
}

//////////////////////////////////////////////////////////////////////
// The two bootstrap identities every larger sum reduces to.
//
// (ball sum)      sum_{|b| < q^N} psi(gamma*b) = q^N if |gamma| < q^-N,
//                                                0   otherwise
//                 for gamma in the unit torus and N >= 0.
//
// (ball average)  integrating psi(alpha*gamma) over |alpha| < q^M
//                 (M <= 0) gives q^M if |gamma| < q^-M, else 0. The
//                 integral is discretized over the finitely many alpha
//                 digits psi can see, which is exact.
//////////////////////////////////////////////////////////////////////

inline CycloSum char_ball_sum(const Field& F, const LaurentNum& gamma, int N,
                              const Budget& budget = Budget()) {
  if (N < 0) throw ParameterContract("char_ball_sum: N must be >= 0");
  if (!gamma.in_torus()) throw ParameterContract("char_ball_sum: gamma must lie in |x| < 1");
  const BigInt total = poly_box_size(F, N);
  budget.check_box(total, "char_ball_sum");
  CycloSum acc(F.p());
  const std::uint64_t n64 = bigint_to_u64(total);
  for (std::uint64_t i = 0; i < n64; ++i) {
    const Poly b = poly_from_index(F, i, N);
    acc.add_root(psi_residue(F, lmul(F, gamma, LaurentNum::from_poly(b))));
  }
  return acc;
}

// Verifies the ball-sum identity by enumeration; throws on mismatch.
inline void orthogonality_check(const Field& F, const LaurentNum& gamma, int N,
                                const Budget& budget = Budget()) {
  const CycloSum lhs = char_ball_sum(F, gamma, N, budget);
  const bool small = gamma.abs_less_than(-N);
  const CycloSum rhs =
      small ? CycloSum::integer(F.p(), bigint_pow(BigInt(F.q()), std::uint64_t(N)))
            : CycloSum(F.p());
  if (lhs != rhs)
    throw OrthogonalityViolated("ball sum with N=" + std::to_string(N) + " gave " + lhs.str() +
                                ", expected " + rhs.str());
}

// Verifies the ball-average identity for polynomial gamma: the grid
// sum over the alpha digits that psi(alpha*gamma) can see must equal
// (grid size) when |gamma| < q^-M and vanish otherwise.
inline void ortho_average_check(const Field& F, const Poly& gamma, int M,
                                const Budget& budget = Budget()) {
  if (M > 0) throw ParameterContract("ortho_average_check: M must be <= 0");
  // psi(alpha*gamma) sees alpha digits at exponents -1-deg(gamma)..M-1.
  long long L = 0;
  if (!pis_zero(gamma)) L = std::max(0LL, (M - 1) - (-1 - pdeg(gamma).value()) + 1);
  budget.check_grid(poly_box_size(F, int(L)), "ortho_average_check");
  CycloSum acc(F.p());
  const std::uint64_t grid = bigint_to_u64(poly_box_size(F, int(L)));
  const LaurentNum g = LaurentNum::from_poly(gamma);
  for (std::uint64_t i = 0; i < grid; ++i) {
    // alpha = digits placed at exponents M-1, M-2, ..., M-L.
    const Poly digits = poly_from_index(F, i, int(L));
    std::vector<FqElem> w(static_cast<std::size_t>(L));
    for (long long t = 0; t < L; ++t) w[std::size_t(t)] = pcoeff(digits, t);
    const LaurentNum alpha = LaurentNum::from_window(std::move(w), M - 1, Ord::neg_inf());
    acc.add_root(psi_residue(F, lmul(F, alpha, g)));
  }
  const bool small = pis_zero(gamma) || pdeg(gamma).value() < -M;
  const CycloSum rhs = small ? CycloSum::integer(F.p(), BigInt(grid)) : CycloSum(F.p());
  if (acc != rhs)
    throw OrthogonalityViolated("ball average with M=" + std::to_string(M) + " gave " +
                                acc.str() + ", expected " + rhs.str());
}

}  // namespace ffmoduli
