#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ffmoduli/bigint.hpp"
#include "ffmoduli/budget.hpp"
#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"
#include "ffmoduli/poly.hpp"
#include "ffmoduli/rng.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Degree-d forms in n variables, their symmetric tensors, and the
// derived coefficient system.
//
// A HyperForm keeps its monomials with integer coefficients, so the
// same configured form can be instantiated over F_p and over every
// extension F_{p^k} (constants embed along the prime subfield). All
// field-dependent arithmetic takes the field explicitly.
//////////////////////////////////////////////////////////////////////

class HyperForm {
 public:
  using IntTerms = std::vector<std::pair<std::vector<unsigned>, long long>>;

  HyperForm(unsigned n, unsigned d, const IntTerms& monomials) : n_(n), d_(d) {
    if (n < 1) throw ParameterContract("HyperForm: need at least one variable");
    if (d < 1) throw ParameterContract("HyperForm: degree must be positive");
    std::map<std::vector<unsigned>, long long> merged;
    for (const auto& [exps, c] : monomials) {
      if (exps.size() != n)
        throw ParameterContract("HyperForm: monomial exponent vector has wrong length");
      unsigned total = 0;
      for (unsigned a : exps) total += a;
      if (total != d)
        throw ParameterContract("HyperForm: monomial degree " + std::to_string(total) +
                                " != form degree " + std::to_string(d));
      merged[exps] += c;
    }
    for (auto& [exps, c] : merged)
      if (c != 0) terms_.emplace_back(exps, c);
    if (terms_.empty()) throw ParameterContract("HyperForm: form is identically zero");
  }

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  const IntTerms& terms() const { return terms_; }

  FqElem eval(const Field& F, const std::vector<FqElem>& x) const {
    FqElem acc;
    for (const auto& [exps, c] : terms_) {
      FqElem t = F.from_int(c);
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned a = 0; a < exps[i]; ++a) t = F.mul(t, x[i]);
      acc = F.add(acc, t);
    }
    return acc;
  }

  Poly eval_poly(const Field& F, const std::vector<Poly>& x) const {
    Poly acc;
    for (const auto& [exps, c] : terms_) {
      Poly t = pconst(F.from_int(c));
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned a = 0; a < exps[i]; ++a) t = pmul(F, t, x[i]);
      acc = padd(F, acc, t);
    }
    return acc;
  }

  // Formal partial derivative (integer coefficients again).
  HyperForm partial(unsigned i) const {
    IntTerms out;
    for (const auto& [exps, c] : terms_) {
      if (exps[i] == 0) continue;
      auto e2 = exps;
      e2[i] -= 1;
      out.emplace_back(e2, c * static_cast<long long>(exps[i]));
    }
    if (out.empty()) out.emplace_back(std::vector<unsigned>(n_, 0), 0);  // zero derivative
    return HyperForm::allow_zero(n_, d_ - 1, out);
  }

  bool is_zero_mod(const Field& F) const {
    for (const auto& [exps, c] : terms_)
      if (!F.from_int(c).is_zero()) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    for (const auto& [exps, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(c);
      for (unsigned i = 0; i < n_; ++i) {
        if (exps[i] == 0) continue;
        s += "*x" + std::to_string(i + 1);
        if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
      }
    }
    return s;
  }

 private:
  HyperForm() = default;
  static HyperForm allow_zero(unsigned n, unsigned d, const IntTerms& monomials) {
    HyperForm f;
    f.n_ = n;
    f.d_ = d;
    std::map<std::vector<unsigned>, long long> merged;
    for (const auto& [exps, c] : monomials) merged[exps] += c;
    for (auto& [exps, c] : merged)
      if (c != 0) f.terms_.emplace_back(exps, c);
    return f;
  }

  unsigned n_;
  unsigned d_;
  IntTerms terms_;
};

//////////////////////////////////////////////////////////////////////
// Number of distinct orderings of a sorted tuple (multinomial
// d! / prod(multiplicities!)) — the bridge between monomial
// coefficients and symmetric-tensor entries.
//////////////////////////////////////////////////////////////////////

inline BigInt orderings_count(const std::vector<unsigned>& sorted_tuple) {
  BigInt num = 1;
  for (std::size_t i = 1; i <= sorted_tuple.size(); ++i) num *= BigInt(i);
  std::size_t i = 0;
  while (i < sorted_tuple.size()) {
    std::size_t j = i;
    while (j < sorted_tuple.size() && sorted_tuple[j] == sorted_tuple[i]) ++j;
    BigInt fac = 1;
    for (std::size_t m = 1; m <= j - i; ++m) fac *= BigInt(m);
    num /= fac;
    i = j;
  }
  return num;
}

//////////////////////////////////////////////////////////////////////
// The symmetric d-tensor of a form: the unique symmetric coefficient
// array c with f(x) = sum over all index tuples of c * x_{i_1}...x_{i_d}.
// Recovering it divides each monomial coefficient by its number of
// orderings, which must be invertible mod p.
//////////////////////////////////////////////////////////////////////

class SymTensor {
 public:
  static SymTensor from_form(const Field& F, const HyperForm& f) {
    SymTensor t;
    t.n_ = f.n();
    t.d_ = f.d();
    for (const auto& [exps, c] : f.terms()) {
      // Index multiset: variable i repeated exps[i] times.
      std::vector<unsigned> idx;
      for (unsigned i = 0; i < f.n(); ++i)
        for (unsigned a = 0; a < exps[i]; ++a) idx.push_back(i);
      const BigInt ord = orderings_count(idx);
      const FqElem ord_mod = F.from_int(static_cast<long long>(ord % F.p()));
      if (ord_mod.is_zero())
        throw CharTooSmall("monomial with " + bigint_str(ord) +
                           " orderings is not splittable mod " + std::to_string(F.p()));
      const FqElem v = F.mul(F.from_int(c), F.inv(ord_mod));
      if (!v.is_zero()) t.c_[idx] = v;
    }
    return t;
  }

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }

  FqElem coeff(std::vector<unsigned> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = c_.find(idx);
    return it == c_.end() ? FqElem() : it->second;
  }

  // Full multilinear evaluation at d vectors: for each stored index
  // multiset, sum the product over every distinct ordering (argument k
  // reads the k-th index of the ordering).
  FqElem eval(const Field& F, const std::vector<const std::vector<FqElem>*>& args) const {
    require_arity(args.size());
    FqElem acc;
    for (const auto& [idx, c] : c_) {
      std::vector<unsigned> perm = idx;
      FqElem sub;
      do {
        FqElem t = F.one();
        for (std::size_t k = 0; k < perm.size(); ++k) t = F.mul(t, (*args[k])[perm[k]]);
        sub = F.add(sub, t);
      } while (std::next_permutation(perm.begin(), perm.end()));
      acc = F.add(acc, F.mul(c, sub));
    }
    return acc;
  }

  // Same evaluation with polynomial coordinates.
  Poly eval_poly(const Field& F, const std::vector<const std::vector<Poly>*>& args) const {
    require_arity(args.size());
    Poly acc;
    for (const auto& [idx, c] : c_) {
      std::vector<unsigned> perm = idx;
      Poly sub;
      do {
        Poly t = pconst(F.one());
        for (std::size_t k = 0; k < perm.size(); ++k) t = pmul(F, t, (*args[k])[perm[k]]);
        sub = padd(F, sub, t);
      } while (std::next_permutation(perm.begin(), perm.end()));
      acc = padd(F, acc, pscale(F, sub, c));
    }
    return acc;
  }

  FqElem eval_same(const Field& F, const std::vector<FqElem>& x) const {
    std::vector<const std::vector<FqElem>*> args(d_, &x);
    return eval(F, args);
  }

 private:
  void require_arity(std::size_t got) const {
    if (got != d_)
      throw ParameterContract("SymTensor: expected " + std::to_string(d_) + " arguments, got " +
                              std::to_string(got));
  }
  unsigned n_ = 0;
  unsigned d_ = 0;
  std::map<std::vector<unsigned>, FqElem> c_;
};

//////////////////////////////////////////////////////////////////////
// Slot variables and the coefficient system.
//
// A degree-e tuple assigns to each slot s = 0..e a vector
// t[s] in F_q[u]^n with deg t[s][i] <= s. The j-th coefficient form is
//
//   F_j(t) = sum over ordered (s_1..s_d) in [0,e]^d with sum j of
//            Gamma_f(t[s_1], ..., t[s_d]),
//
// a u-polynomial of degree <= j. The system {F_j = 0, j = 0..de}
// encodes one global identity between two expansions (checked by
// decomposition_check below, which never goes through the tensor).
//////////////////////////////////////////////////////////////////////

using SlotVec = std::vector<std::vector<Poly>>;  // t[s][i]

// All nondecreasing d-tuples from [0,e] with a given sum, plus their
// ordered multiplicity mod p.
inline void slot_multisets(unsigned d, int e, int j,
                           std::vector<std::pair<std::vector<unsigned>, BigInt>>& out) {
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned pos, int min_s, int remaining) -> void {
    if (pos == d) {
      if (remaining == 0) out.emplace_back(cur, orderings_count(cur));
      return;
    }
    for (int s = min_s; s <= e && s <= remaining; ++s) {
      cur.push_back(unsigned(s));
      self(self, pos + 1, s, remaining - s);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0, j);
}

class FSystem {
 public:
  FSystem(const Field& F, const HyperForm& f, int e)
      : form_(f), e_(e), tensor_(SymTensor::from_form(F, f)) {
    if (e < 0) throw ParameterContract("FSystem: e must be >= 0");
    // Cache the composition tables: counting loops hit F_j millions of
    // times and the tables depend only on (d, e, j).
    msets_.resize(std::size_t(j_count()));
    for (int j = 0; j < j_count(); ++j) {
      std::vector<std::pair<std::vector<unsigned>, BigInt>> raw;
      slot_multisets(f.d(), e, j, raw);
      for (auto& [ms, count] : raw) {
        const FqElem w = F.from_int(static_cast<long long>(count % F.p()));
        if (!w.is_zero()) msets_[std::size_t(j)].emplace_back(std::move(ms), w);
      }
    }
  }

  const HyperForm& form() const { return form_; }
  const SymTensor& tensor() const { return tensor_; }
  int e() const { return e_; }
  unsigned d() const { return form_.d(); }
  unsigned n() const { return form_.n(); }
  int j_count() const { return int(form_.d()) * e_ + 1; }

  Poly F_j(const Field& F, const SlotVec& t, int j) const {
    require_slots(t);
    if (j < 0 || j > int(form_.d()) * e_)
      throw ParameterContract("FSystem: j out of range");
    Poly acc;
    for (const auto& [ms, w] : msets_[std::size_t(j)]) {
      std::vector<const std::vector<Poly>*> args;
      args.reserve(ms.size());
      for (unsigned s : ms) args.push_back(&t[s]);
      acc = padd(F, acc, pscale(F, tensor_.eval_poly(F, args), w));
    }
    return acc;
  }

  std::vector<Poly> F_all(const Field& F, const SlotVec& t) const {
    std::vector<Poly> out;
    out.reserve(std::size_t(j_count()));
    for (int j = 0; j < j_count(); ++j) out.push_back(F_j(F, t, j));
    return out;
  }

  SlotVec random_slots(const Field& F, Rng& rng) const {
    SlotVec t(std::size_t(e_) + 1);
    for (int s = 0; s <= e_; ++s) {
      t[std::size_t(s)].resize(form_.n());
      for (unsigned i = 0; i < form_.n(); ++i)
        t[std::size_t(s)][i] = random_poly(F, rng, s + 1);
    }
    return t;
  }

  void require_slots(const SlotVec& t) const {
    if (t.size() != std::size_t(e_) + 1)
      throw ParameterContract("FSystem: expected " + std::to_string(e_ + 1) + " slots");
    for (int s = 0; s <= e_; ++s) {
      if (t[std::size_t(s)].size() != form_.n())
        throw ParameterContract("FSystem: slot " + std::to_string(s) + " has wrong width");
      for (unsigned i = 0; i < form_.n(); ++i)
        if (pdeg(t[std::size_t(s)][i]) > Ord(s))
          throw ParameterContract("FSystem: slot " + std::to_string(s) +
                                  " coordinate exceeds its degree cap");
    }
  }

 private:
  HyperForm form_;
  int e_;
  SymTensor tensor_;
  std::vector<std::vector<std::pair<std::vector<unsigned>, FqElem>>> msets_;
};

//////////////////////////////////////////////////////////////////////
// Dimension bookkeeping for the slot box and the condition count.
//////////////////////////////////////////////////////////////////////

inline long long triangle(long long m) { return m * (m + 1) / 2; }  // C(m+1, 2)

// Slot box dimension: sum over s of n*(s+1).
inline long long box_dim(unsigned n, int e) { return (long long)(n)*triangle(e + 1); }
// Scalar conditions: sum over j of (j+1).
inline long long condition_count(unsigned d, int e) { return triangle((long long)(d)*e + 1); }
// Expected dimension of the solution locus, and the heuristic count
// exponent (expected dimension of the affine cone over the moduli
// space of degree-e maps, up to the usual +1 shift).
inline long long muhat_dim(unsigned n, unsigned d, int e) {
  return box_dim(n, e) - condition_count(d, e);
}
inline long long mu_dim(unsigned n, unsigned d, int e) { return muhat_dim(n, d, e) - 1; }

//////////////////////////////////////////////////////////////////////
// Bidegree blocks: the leading two-slot structure of each F_j.
//
// For j >= 1 write j = (ell-1)d + r with 1 <= r <= d; for j = 0 take
// ell = 0, r = d. The slots that carry the leading coefficient are
// x = t[ell-1] and y = t[ell] (just y = t[ell] when r = d), and the
// leading form is
//
//   G_j(x; y) = C0 * Gamma_f(x,...,x, y,...,y),   C0 = binom(d, r),
//                         (d-r copies) (r copies)
//
// of bidegree (d1, d2) = (d-r, r). The box exponents are P1 = ell,
// P2 = ell+1 for r < d and P1 = P2 = ell+1 for r = d, which satisfies
// d1*P1 + d2*P2 = j + d — the relation that makes every later
// discretization land on the same grid as the j-th coefficient.
//////////////////////////////////////////////////////////////////////

struct BidegreeBlock {
  int j;
  int ell;
  int r;
  unsigned d1, d2;
  int P1, P2;
  BigInt C0;    // binomial(d, r) as an integer
  int x_slot;   // = ell-1; meaningful only when d1 > 0
  int y_slot;   // = ell
};

inline BigInt binomial(long long m, long long k) {
  if (k < 0 || k > m) return 0;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= BigInt(m - k + i);
    r /= BigInt(i);
  }
  return r;
}

inline BidegreeBlock bidegree_block(unsigned d, int e, int j) {
  if (j < 0 || j > int(d) * e) throw ParameterContract("bidegree_block: j out of range");
  BidegreeBlock b;
  b.j = j;
  if (j == 0) {
    b.ell = 0;
    b.r = int(d);
  } else {
    b.ell = (j - 1) / int(d) + 1;
    b.r = j - (b.ell - 1) * int(d);
  }
  b.d1 = d - unsigned(b.r);
  b.d2 = unsigned(b.r);
  if (b.r < int(d)) {
    b.P1 = b.ell;
    b.P2 = b.ell + 1;
  } else {
    b.P1 = b.ell + 1;
    b.P2 = b.ell + 1;
  }
  b.C0 = binomial(d, b.r);
  b.x_slot = b.ell - 1;
  b.y_slot = b.ell;
  // The grid-compatibility relation; violating it is a bug.
  if ((long long)(b.d1) * b.P1 + (long long)(b.d2) * b.P2 != (long long)(j) + d)
    throw std::logic_error("bidegree_block: box exponents violate the grid relation");
  return b;
}

// Gamma_G: the multilinear form attached to the block, evaluated at d1
// x-vectors and d2 y-vectors of polynomials.
inline Poly gamma_G_poly(const Field& F, const SymTensor& gamma, const BidegreeBlock& b,
                         const std::vector<const std::vector<Poly>*>& xs,
                         const std::vector<const std::vector<Poly>*>& ys) {
  if (xs.size() != b.d1 || ys.size() != b.d2)
    throw ParameterContract("gamma_G_poly: wrong argument arity");
  std::vector<const std::vector<Poly>*> args;
  args.reserve(b.d1 + b.d2);
  for (auto* x : xs) args.push_back(x);
  for (auto* y : ys) args.push_back(y);
  const FqElem c0 = F.from_int(static_cast<long long>(b.C0 % F.p()));
  return pscale(F, gamma.eval_poly(F, args), c0);
}

// G_j evaluated diagonally: x repeated d1 times, y repeated d2 times.
inline Poly G_j_poly(const Field& F, const SymTensor& gamma, const BidegreeBlock& b,
                     const std::vector<Poly>& x, const std::vector<Poly>& y) {
  std::vector<const std::vector<Poly>*> xs(b.d1, &x), ys(b.d2, &y);
  return gamma_G_poly(F, gamma, b, xs, ys);
}

//////////////////////////////////////////////////////////////////////
// The two-route identity check: expand f(g) for the bivariate curve
// g_i(u, v) = sum_s t[s][i](u) * v^(e-s) directly from the monomials
// of f (no tensor anywhere), slice by powers of v, and compare slice
// de-j against F_j(t) from the tensor route. Also checks the degree
// cap deg F_j <= j.
//////////////////////////////////////////////////////////////////////

struct DecompReport {
  bool pass = true;
  std::vector<bool> slice_match;  // index j
  std::vector<bool> degree_ok;    // index j
  std::string detail;
};

namespace detail {
// Minimal bivariate polynomials in (u, v) for the independent route.
using Bivar = std::map<std::pair<int, int>, FqElem>;  // (u-exp, v-exp) -> c

inline void bivar_add_term(const Field& F, Bivar& b, int eu, int ev, FqElem c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(eu, ev);
  auto it = b.find(key);
  if (it == b.end()) {
    b.emplace(key, c);
  } else {
    it->second = F.add(it->second, c);
    if (it->second.is_zero()) b.erase(it);
  }
}

inline Bivar bivar_mul(const Field& F, const Bivar& a, const Bivar& b) {
  Bivar r;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      bivar_add_term(F, r, ka.first + kb.first, ka.second + kb.second, F.mul(ca, cb));
  return r;
}
}  // namespace detail

inline DecompReport decomposition_check(const Field& F, const FSystem& sys, const SlotVec& t) {
  sys.require_slots(t);
  const unsigned n = sys.n(), d = sys.d();
  const int e = sys.e(), jmax = int(d) * e;
  // Route 1: direct bivariate expansion of f(g).
  std::vector<detail::Bivar> g(n);
  for (unsigned i = 0; i < n; ++i)
    for (int s = 0; s <= e; ++s) {
      const Poly& c = t[std::size_t(s)][i];
      for (long long k = 0; k < (long long)c.size(); ++k)
        detail::bivar_add_term(F, g[i], int(k), e - s, c[std::size_t(k)]);
    }
  detail::Bivar fg;
  for (const auto& [exps, c] : sys.form().terms()) {
    detail::Bivar term;
    detail::bivar_add_term(F, term, 0, 0, F.from_int(c));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned a = 0; a < exps[i]; ++a) term = detail::bivar_mul(F, term, g[i]);
    for (const auto& [k, cc] : term) detail::bivar_add_term(F, fg, k.first, k.second, cc);
  }
  // Route 2: tensor route, sliced and compared.
  DecompReport rep;
  rep.slice_match.resize(std::size_t(jmax) + 1);
  rep.degree_ok.resize(std::size_t(jmax) + 1);
  for (int j = 0; j <= jmax; ++j) {
    const Poly fj = sys.F_j(F, t, j);
    rep.degree_ok[std::size_t(j)] = pdeg(fj) <= Ord(j);
    // Slice of v^(de-j) from route 1.
    Poly slice;
    for (const auto& [k, c] : fg)
      if (k.second == int(d) * e - j) {
        if (k.first >= (int)slice.size()) slice.resize(std::size_t(k.first) + 1);
        slice[std::size_t(k.first)] = c;
      }
    ptrim(slice);
    rep.slice_match[std::size_t(j)] = (slice == fj);
    if (!rep.slice_match[std::size_t(j)] || !rep.degree_ok[std::size_t(j)]) {
      rep.pass = false;
      if (rep.detail.empty())
        rep.detail = "first failure at j=" + std::to_string(j) + ": slice " +
                     poly_str(F, slice) + " vs " + poly_str(F, fj);
    }
  }
  // No v-exponent outside [0, de] may appear.
  for (const auto& [k, c] : fg) {
    (void)c;
    if (k.second < 0 || k.second > int(d) * e) {
      rep.pass = false;
      rep.detail = "stray v-exponent " + std::to_string(k.second);
    }
  }
  return rep;
}

//////////////////////////////////////////////////////////////////////
// Smoothness scan: a projective hypersurface f = 0 is singular iff
// the n partials share a nonzero root (p > d makes Euler's relation
// recover f itself from them). The scan walks F_{p^k} points for
// k = 1..k_max; a clean scan is evidence, not proof, and is reported
// as such.
//////////////////////////////////////////////////////////////////////

struct SmoothnessReport {
  bool singular_point_found = false;
  unsigned witness_k = 0;
  std::vector<std::uint64_t> witness;  // element indices, if found
  unsigned k_max_scanned = 0;
};

inline SmoothnessReport smoothness_scan(const HyperForm& f, std::uint32_t p, unsigned k_max,
                                        const Budget& budget = Budget()) {
  SmoothnessReport rep;
  std::vector<HyperForm> partials;
  partials.reserve(f.n());
  for (unsigned i = 0; i < f.n(); ++i) partials.push_back(f.partial(i));
  for (unsigned k = 1; k <= k_max; ++k) {
    const Field F = Field::extension(p, k);
    const BigInt points = bigint_pow(BigInt(F.q()), f.n());
    budget.check_box(points, "smoothness_scan");
    const std::uint64_t np = bigint_to_u64(points);
    std::vector<FqElem> x(f.n());
    for (std::uint64_t idx = 1; idx < np; ++idx) {  // skip the origin
      std::uint64_t v = idx;
      for (unsigned i = 0; i < f.n(); ++i) {
        x[i] = F.at(v % F.q());
        v /= F.q();
      }
      bool all_zero = true;
      for (const auto& pf : partials)
        if (!pf.eval(F, x).is_zero()) {
          all_zero = false;
          break;
        }
      if (all_zero && f.eval(F, x).is_zero()) {
        rep.singular_point_found = true;
        rep.witness_k = k;
        std::uint64_t w = idx;
        for (unsigned i = 0; i < f.n(); ++i) {
          rep.witness.push_back(w % F.q());
          w /= F.q();
        }
        rep.k_max_scanned = k;
        return rep;
      }
    }
    rep.k_max_scanned = k;
  }
  return rep;
}

}  // namespace ffmoduli
