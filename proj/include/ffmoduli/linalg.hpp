#pragma once

#include <cstdint>
#include <vector>

#include "ffmoduli/errors.hpp"
#include "ffmoduli/field.hpp"

namespace ffmoduli {

//////////////////////////////////////////////////////////////////////
// Dense linear algebra over F_q, sized for condition systems with at
// most a few hundred unknowns.
//////////////////////////////////////////////////////////////////////

using Mat = std::vector<std::vector<FqElem>>;  // row-major

// In-place row echelon reduction; returns the pivot column per row.
inline std::vector<std::size_t> row_reduce(const Field& F, Mat& A) {
  std::vector<std::size_t> pivots;
  if (A.empty()) return pivots;
  const std::size_t w = A[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < w && row < A.size(); ++col) {
    std::size_t sel = row;
    while (sel < A.size() && A[sel][col].is_zero()) ++sel;
    if (sel == A.size()) continue;
    std::swap(A[sel], A[row]);
    const FqElem inv = F.inv(A[row][col]);
    for (std::size_t c = col; c < w; ++c) A[row][c] = F.mul(A[row][c], inv);
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      const FqElem m = A[r][col];
      for (std::size_t c = col; c < w; ++c) A[r][c] = F.sub(A[r][c], F.mul(m, A[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const Field& F, Mat A) { return row_reduce(F, A).size(); }

// Solution of A x = b: consistency, one particular solution, and a
// basis of the homogeneous solutions (so the full set is
// particular + span(nullspace), of size q^{nullspace.size()}).
struct AffineSolution {
  bool consistent = false;
  std::vector<FqElem> particular;
  std::vector<std::vector<FqElem>> nullspace;
};

inline AffineSolution solve_affine(const Field& F, Mat A, const std::vector<FqElem>& b) {
  AffineSolution sol;
  const std::size_t m = A.size();
  const std::size_t w = m == 0 ? 0 : A[0].size();
  if (b.size() != m) throw ParameterContract("solve_affine: rhs length mismatch");
  // Augment, reduce, read off.
  for (std::size_t r = 0; r < m; ++r) A[r].push_back(b[r]);
  std::vector<std::size_t> pivots = row_reduce(F, A);
  // A pivot in the augmented column marks inconsistency.
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == w) return sol;  // consistent stays false
  }
  sol.consistent = true;
  sol.particular.assign(w, FqElem());
  std::vector<bool> is_pivot(w, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = A[r][w];
  }
  for (std::size_t col = 0; col < w; ++col) {
    if (is_pivot[col]) continue;
    std::vector<FqElem> v(w);
    v[col] = F.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(A[r][col]);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

// y = A x.
inline std::vector<FqElem> mat_apply(const Field& F, const Mat& A,
                                     const std::vector<FqElem>& x) {
  std::vector<FqElem> y(A.size());
  for (std::size_t r = 0; r < A.size(); ++r) {
    FqElem acc;
    for (std::size_t c = 0; c < x.size(); ++c) acc = F.add(acc, F.mul(A[r][c], x[c]));
    y[r] = acc;
  }
  return y;
}

}  // namespace ffmoduli
