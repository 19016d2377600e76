#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffmoduli/rng.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// F_q = F_{p^k} with exact modular arithmetic.
//
// Elements are packed into a single 64-bit word: byte i holds the
// coefficient of t^i (< p) in the standard basis of F_p[t]/(modulus).
// This keeps FqElem a trivially copyable value; every operation goes
// through the owning Field. Desk-scale caps: p <= 251, k <= 8.
//////////////////////////////////////////////////////////////////////

class FqElem {
 public:
  constexpr FqElem() : bits_(0) {}
  static constexpr FqElem from_raw(std::uint64_t bits) {
    FqElem e;
    e.bits_ = bits;
    return e;
  }
  constexpr std::uint64_t raw() const { return bits_; }
  constexpr bool is_zero() const { return bits_ == 0; }
  friend constexpr bool operator==(FqElem a, FqElem b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(FqElem a, FqElem b) { return a.bits_ != b.bits_; }
  friend constexpr bool operator<(FqElem a, FqElem b) { return a.bits_ < b.bits_; }

 private:
  std::uint64_t bits_;
};

namespace detail {

// Dense F_p[x] arithmetic on raw coefficient vectors; only used for
// validating / searching extension moduli, so clarity over speed.
inline void fppoly_trim(std::vector<std::uint32_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<std::uint32_t> fppoly_mul(const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>& b,
                                             std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  std::vector<std::uint32_t> out(acc.begin(), acc.end());
  fppoly_trim(out);
  return out;
}

// Remainder modulo a monic modulus m.
inline std::vector<std::uint32_t> fppoly_mod(std::vector<std::uint32_t> a,
                                             const std::vector<std::uint32_t>& m,
                                             std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (c != 0) {
      for (std::size_t j = 0; j < dm; ++j) {
        std::uint64_t sub = (c * m[j]) % p;
        a[shift + j] = std::uint32_t((a[shift + j] + p - sub) % p);
      }
    }
    a.pop_back();
    fppoly_trim(a);
    if (a.size() <= dm) break;
  }
  fppoly_trim(a);
  return a;
}

inline std::vector<std::uint32_t> fppoly_powmod_x(std::uint64_t exp,
                                                  const std::vector<std::uint32_t>& m,
                                                  std::uint32_t p) {
  // x^exp mod m by square-and-multiply.
  std::vector<std::uint32_t> base = fppoly_mod({0, 1}, m, p);
  std::vector<std::uint32_t> r = {1};
  while (exp) {
    if (exp & 1) r = fppoly_mod(fppoly_mul(r, base, p), m, p);
    base = fppoly_mod(fppoly_mul(base, base, p), m, p);
    exp >>= 1;
  }
  return r;
}

inline std::vector<std::uint32_t> fppoly_gcd(std::vector<std::uint32_t> a,
                                             std::vector<std::uint32_t> b, std::uint32_t p) {
  auto inv_mod_p = [p](std::uint32_t v) {
    std::int64_t t = 0, nt = 1, r = p, nr = v % p;
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::swap(t -= qq * nt, nt);
      std::swap(r -= qq * nr, nr);
    }
    return std::uint32_t((t % p + p) % p);
  };
  while (!b.empty()) {
    // a mod b with b made monic on the fly.
    std::uint32_t lead_inv = inv_mod_p(b.back());
    std::vector<std::uint32_t> bm(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bm[i] = std::uint32_t((std::uint64_t(b[i]) * lead_inv) % p);
    a = fppoly_mod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Deterministic irreducibility test for a monic degree-k modulus over F_p:
// x^{p^k} == x (mod m) and gcd(x^{p^{k/r}} - x, m) = 1 for prime r | k.
inline bool fppoly_irreducible(const std::vector<std::uint32_t>& m, std::uint32_t p) {
  const std::size_t k = m.size() - 1;
  if (k == 0) return false;
  auto pow_u64 = [](std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
  };
  std::vector<std::uint32_t> xq = fppoly_powmod_x(pow_u64(p, std::uint32_t(k)), m, p);
  // x^{p^k} - x must vanish mod m.
  std::vector<std::uint32_t> diff = xq;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = std::uint32_t((diff[1] + p - 1) % p);
  fppoly_trim(diff);
  if (!diff.empty()) return false;
  for (std::uint32_t r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime_u32(r)) continue;
    std::vector<std::uint32_t> xs = fppoly_powmod_x(pow_u64(p, std::uint32_t(k / r)), m, p);
    if (xs.size() < 2) xs.resize(2, 0);
    xs[1] = std::uint32_t((xs[1] + p - 1) % p);
    fppoly_trim(xs);
    std::vector<std::uint32_t> g = fppoly_gcd(m, xs, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class Field {
 public:
  static constexpr std::uint32_t kMaxP = 251;
  static constexpr std::uint32_t kMaxK = 8;

  // Prime field F_p.
  explicit Field(std::uint32_t p) : p_(p), k_(1), q_(p) { validate_p(); }

  // Extension field F_{p^k} with a caller-supplied monic irreducible modulus
  // (coefficient i of x^i, length k+1).
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus)
      : p_(p), k_(std::uint32_t(modulus.size() - 1)), mod_(std::move(modulus)) {
    validate_p();
    if (k_ < 1 || k_ > kMaxK) throw std::invalid_argument("Field: extension degree out of range");
    for (auto& c : mod_) c %= p_;
    if (mod_.back() != 1) throw std::invalid_argument("Field: modulus must be monic");
    if (k_ > 1 && !detail::fppoly_irreducible(mod_, p_))
      throw std::invalid_argument("Field: modulus is reducible");
    q_ = 1;
    for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
  }

  // F_{p^k} with the lexicographically least monic irreducible modulus:
  // deterministic, so results are reproducible without a stored modulus.
  static Field extension(std::uint32_t p, std::uint32_t k) {
    if (k == 1) return Field(p);
    if (k < 1 || k > kMaxK) throw std::invalid_argument("Field: extension degree out of range");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> m(k + 1);
      std::uint64_t v = idx;
      for (std::uint32_t i = 0; i < k; ++i) {
        m[i] = std::uint32_t(v % p);
        v /= p;
      }
      m[k] = 1;
      if (detail::fppoly_irreducible(m, p)) return Field(p, m);
    }
    throw std::logic_error("Field: no irreducible modulus found");  // unreachable
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t q() const { return q_; }
  bool is_prime_field() const { return k_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  FqElem zero() const { return FqElem(); }
  FqElem one() const { return FqElem::from_raw(1); }

  FqElem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return FqElem::from_raw(std::uint64_t(r));
  }

  FqElem from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() > k_) throw std::invalid_argument("Field: too many coefficients");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < c.size(); ++i) bits |= std::uint64_t(c[i] % p_) << (8 * i);
    return FqElem::from_raw(bits);
  }

  std::vector<std::uint32_t> coeffs_of(FqElem e) const {
    std::vector<std::uint32_t> c(k_);
    for (std::uint32_t i = 0; i < k_; ++i) c[i] = byte(e, i);
    return c;
  }

  // Mixed-radix enumeration of all q elements; at(0) is zero.
  FqElem at(std::uint64_t index) const {
    std::uint64_t bits = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      bits |= (index % p_) << (8 * i);
      index /= p_;
    }
    return FqElem::from_raw(bits);
  }
  std::uint64_t index_of(FqElem e) const {
    std::uint64_t idx = 0;
    for (std::uint32_t i = k_; i-- > 0;) idx = idx * p_ + byte(e, i);
    return idx;
  }

  FqElem random(Rng& rng) const { return at(rng.below(q_)); }

  FqElem add(FqElem a, FqElem b) const {
    std::uint64_t bits = 0;
    for (std::uint32_t i = 0; i < k_; ++i)
      bits |= std::uint64_t((byte(a, i) + byte(b, i)) % p_) << (8 * i);
    return FqElem::from_raw(bits);
  }
  FqElem neg(FqElem a) const {
    std::uint64_t bits = 0;
    for (std::uint32_t i = 0; i < k_; ++i)
      bits |= std::uint64_t((p_ - byte(a, i)) % p_) << (8 * i);
    return FqElem::from_raw(bits);
  }
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

  FqElem mul(FqElem a, FqElem b) const {
    if (k_ == 1) return FqElem::from_raw((a.raw() * b.raw()) % p_);
    std::uint64_t acc[2 * kMaxK - 1] = {};
    for (std::uint32_t i = 0; i < k_; ++i) {
      const std::uint64_t ai = byte(a, i);
      if (!ai) continue;
      for (std::uint32_t j = 0; j < k_; ++j) acc[i + j] = (acc[i + j] + ai * byte(b, j)) % p_;
    }
    // Reduce by the monic modulus: x^k == -(mod_[k-1] x^{k-1} + ... + mod_[0]).
    for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
      const std::uint64_t c = acc[i];
      if (c) {
        for (std::uint32_t j = 0; j < k_; ++j)
          acc[i - k_ + j] = (acc[i - k_ + j] + c * (p_ - mod_[j])) % p_;
      }
      if (i == k_) break;
    }
    std::uint64_t bits = 0;
    for (std::uint32_t i = 0; i < k_; ++i) bits |= acc[i] << (8 * i);
    return FqElem::from_raw(bits);
  }

  FqElem pow(FqElem a, std::uint64_t e) const {
    FqElem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  FqElem inv(FqElem a) const {
    if (a.is_zero()) throw std::domain_error("Field: inverse of zero");
    if (k_ == 1) {
      std::int64_t t = 0, nt = 1, r = p_, nr = std::int64_t(a.raw());
      while (nr != 0) {
        std::int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
      }
      return FqElem::from_raw(std::uint64_t((t % p_ + p_) % p_));
    }
    return pow(a, q_ - 2);
  }

  // tr(x) = x + x^p + ... + x^{p^{k-1}}; always lands in the prime subfield.
  FqElem trace(FqElem a) const {
    FqElem acc = a;
    FqElem frob = a;
    for (std::uint32_t i = 1; i < k_; ++i) {
      frob = pow(frob, p_);
      acc = add(acc, frob);
    }
    return acc;
  }
  std::uint32_t trace_residue(FqElem a) const {
    FqElem t = trace(a);
    if (!in_prime_subfield(t)) throw std::logic_error("Field: trace left the prime subfield");
    return byte(t, 0);
  }

  bool in_prime_subfield(FqElem a) const { return (a.raw() >> 8) == 0; }
  std::uint32_t prime_residue(FqElem a) const {
    if (!in_prime_subfield(a)) throw std::domain_error("Field: element not in prime subfield");
    return byte(a, 0);
  }

  bool same_as(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_ && mod_ == other.mod_;
  }

 private:
  void validate_p() {
    if (p_ < 2 || p_ > kMaxP || !detail::is_prime_u32(p_))
      throw std::invalid_argument("Field: characteristic must be a prime <= 251");
  }
  static std::uint32_t byte(FqElem e, std::uint32_t i) {
    return std::uint32_t((e.raw() >> (8 * i)) & 0xff);
  }

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> mod_;  // empty for prime fields
};

}  // namespace ffmoduli

template <>
struct std::hash<ffmoduli::FqElem> {
  std::size_t operator()(ffmoduli::FqElem e) const noexcept {
    return std::hash<std::uint64_t>()(e.raw());
  }
};
