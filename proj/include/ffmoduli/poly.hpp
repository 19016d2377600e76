#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/ord.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Polynomials in u over F_q.
//
// A Poly is a coefficient vector, index i = coefficient of u^i, kept
// canonical: no trailing zeros, so the zero polynomial is the empty
// vector and operator== is structural equality. All arithmetic is by
// free functions that take the owning Field explicitly.
//////////////////////////////////////////////////////////////////////

using Poly = std::vector<FqElem>;

inline void ptrim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline bool pis_zero(const Poly& a) { return a.empty(); }

inline Ord pdeg(const Poly& a) {
  if (a.empty()) return Ord::neg_inf();
  return Ord(static_cast<long long>(a.size()) - 1);
}

inline FqElem pcoeff(const Poly& a, long long i) {
  if (i < 0 || std::size_t(i) >= a.size()) return FqElem();
  return a[std::size_t(i)];
}

inline FqElem plead(const Poly& a) {
  if (a.empty()) throw std::domain_error("plead: zero polynomial");
  return a.back();
}

inline Poly pconst(FqElem c) {
  if (c.is_zero()) return {};
  return Poly{c};
}

inline Poly pmonomial(const Field& F, FqElem c, std::size_t e) {
  (void)F;
  if (c.is_zero()) return {};
  Poly a(e + 1);
  a[e] = c;
  return a;
}

inline Poly padd(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(pcoeff(a, i), pcoeff(b, i));
  ptrim(r);
  return r;
}

inline Poly pneg(const Field& F, const Poly& a) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
  return r;
}

inline Poly psub(const Field& F, const Poly& a, const Poly& b) { return padd(F, a, pneg(F, b)); }

inline Poly pscale(const Field& F, const Poly& a, FqElem c) {
  if (c.is_zero()) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

inline Poly pmul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;  // leading coeff is a product of nonzeros, already canonical
}

// Multiply by u^e.
inline Poly pshift(const Poly& a, std::size_t e) {
  if (a.empty()) return {};
  Poly r(a.size() + e);
  for (std::size_t i = 0; i < a.size(); ++i) r[i + e] = a[i];
  return r;
}

inline std::pair<Poly, Poly> pdivrem(const Field& F, Poly a, const Poly& b) {
  if (b.empty()) throw std::domain_error("pdivrem: division by zero");
  if (a.size() < b.size()) return {Poly{}, std::move(a)};
  const FqElem lead_inv = F.inv(b.back());
  Poly quot(a.size() - b.size() + 1);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (i >= a.size() || a[i].is_zero()) {
      if (i + 1 == b.size()) break;
      continue;
    }
    const FqElem c = F.mul(a[i], lead_inv);
    const std::size_t shift = i - (b.size() - 1);
    quot[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
    if (i + 1 == b.size()) break;
  }
  ptrim(a);
  ptrim(quot);
  return {std::move(quot), std::move(a)};
}

inline Poly pmod(const Field& F, Poly a, const Poly& b) {
  return pdivrem(F, std::move(a), b).second;
}
inline Poly pquot(const Field& F, Poly a, const Poly& b) {
  return pdivrem(F, std::move(a), b).first;
}

inline Poly pmonic(const Field& F, const Poly& a) {
  if (a.empty()) return {};
  return pscale(F, a, F.inv(a.back()));
}

inline Poly pgcd_monic(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    a = pmod(F, std::move(a), b);
    std::swap(a, b);
  }
  return pmonic(F, a);
}

inline FqElem peval(const Field& F, const Poly& a, FqElem x) {
  FqElem r;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

inline bool pis_monic(const Poly& a) { return !a.empty() && a.back().raw() == 1; }

// Convenience for tests / configs: coefficients as plain integers.
inline Poly pfrom_ints(const Field& F, const std::vector<long long>& c) {
  Poly r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) r[i] = F.from_int(c[i]);
  ptrim(r);
  return r;
}

//////////////////////////////////////////////////////////////////////
// Enumeration of the box |x| < q^N, i.e. polynomials with coefficients
// in slots u^0..u^{N-1}. Indexing is mixed-radix base q, so index 0 is
// the zero polynomial and sweeps are reproducible.
//////////////////////////////////////////////////////////////////////

inline BigInt poly_box_size(const Field& F, int ncoeffs) {
  return bigint_pow(BigInt(F.q()), std::uint64_t(ncoeffs < 0 ? 0 : ncoeffs));
}

inline Poly poly_from_index(const Field& F, std::uint64_t index, int ncoeffs) {
  Poly r(std::size_t(ncoeffs < 0 ? 0 : ncoeffs));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.at(index % F.q());
    index /= F.q();
  }
  ptrim(r);
  return r;
}

inline Poly random_poly(const Field& F, Rng& rng, int ncoeffs) {
  Poly r(std::size_t(ncoeffs < 0 ? 0 : ncoeffs));
  for (auto& c : r) c = F.random(rng);
  ptrim(r);
  return r;
}

//////////////////////////////////////////////////////////////////////
// Display form, e.g. "u^2+2*u+1"; extension coefficients print as
// their basis vectors, e.g. "[1,2]*u".
//////////////////////////////////////////////////////////////////////

inline std::string fq_str(const Field& F, FqElem c) {
  if (F.is_prime_field()) return std::to_string(c.raw());
  std::string s = "[";
  auto cs = F.coeffs_of(c);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(cs[i]);
  }
  return s + "]";
}

inline std::string poly_str(const Field& F, const Poly& a) {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i].is_zero()) continue;
    if (!s.empty()) s += "+";
    const std::string cs = fq_str(F, a[i]);
    if (i == 0) {
      s += cs;
    } else {
      if (cs != "1") s += cs + "*";
      s += (i == 1) ? "u" : "u^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace ffmoduli
