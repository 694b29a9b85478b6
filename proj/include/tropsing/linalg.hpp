#ifndef TROPSING_LINALG_HPP
#define TROPSING_LINALG_HPP

#include <optional>
#include <vector>

#include "tropsing/rational.hpp"

namespace tropsing {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// In-place reduced row echelon form. Returns the pivot column of each pivot
// row; rank = pivots.size().
inline std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Rat inv = m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMat m) { return rref(m).size(); }

// Solves the square system a*x = b exactly; nullopt when a is singular.
inline std::optional<RatVec> solve_square(RatMat a, RatVec b) {
  std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;  // pivot in the rhs column
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

// Basis of the (right) null space of a, as rows.
inline RatMat null_space(RatMat a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  RatMat basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(cols, Rat(0));
    v[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace tropsing

#endif  // TROPSING_LINALG_HPP
