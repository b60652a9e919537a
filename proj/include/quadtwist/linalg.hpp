#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace quadtwist {

/// Exact dense linear algebra over a field type with is_zero(), inverse()
/// and the usual arithmetic. Used with Rational and QuadElem.
template <typename F>
using DenseMatrix = std::vector<std::vector<F>>;

/// Reduced row echelon form in place; returns the pivot columns.
template <typename F>
std::vector<std::size_t> rref(DenseMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!m[i][c].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    F inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      F factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename F>
std::size_t rank(DenseMatrix<F> m) {
  return rref(m).size();
}

/// Basis of { v : m v = 0 }, from the reduced echelon form; deterministic
/// (one vector per free column, unit in that column).
template <typename F>
std::vector<std::vector<F>> kernel_basis(DenseMatrix<F> m, const F& zero, const F& one) {
  if (m.empty()) return {};
  std::size_t cols = m[0].size();
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<F>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<F> v(cols, zero);
    v[free_col] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = zero - m[r][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = b exactly; empty when inconsistent. Requires full column
/// rank for a unique answer and throws otherwise.
template <typename F>
std::optional<std::vector<F>> solve_unique(DenseMatrix<F> m, std::vector<F> b, const F& zero) {
  std::size_t rows = m.size();
  if (rows == 0) return std::vector<F>{};
  std::size_t cols = m[0].size();
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  std::vector<std::size_t> pivots = rref(m);
  for (std::size_t i = 0; i < rows; ++i) {
    bool lhs_zero = true;
    for (std::size_t j = 0; j < cols; ++j) lhs_zero = lhs_zero && m[i][j].is_zero();
    if (lhs_zero && !m[i][cols].is_zero()) return std::nullopt;  // inconsistent
  }
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  if (pivots.size() != cols) {
    throw std::invalid_argument("solve_unique: system is underdetermined");
  }
  std::vector<F> x(cols, zero);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

template <typename F>
DenseMatrix<F> mat_mul(const DenseMatrix<F>& a, const DenseMatrix<F>& b, const F& zero) {
  std::size_t n = a.size(), k = b.size(), mcols = b.empty() ? 0 : b[0].size();
  DenseMatrix<F> out(n, std::vector<F>(mcols, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < mcols; ++j) {
        out[i][j] = out[i][j] + a[i][l] * b[l][j];
      }
    }
  }
  return out;
}

template <typename F>
std::optional<DenseMatrix<F>> mat_inverse(DenseMatrix<F> m, const F& zero, const F& one) {
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i].push_back(i == j ? one : zero);
    }
  }
  std::vector<std::size_t> pivots = rref(m);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t c = 0; c < n; ++c) {
    if (pivots[c] != c) return std::nullopt;
  }
  DenseMatrix<F> inv(n, std::vector<F>(n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  }
  return inv;
}

}  // namespace quadtwist
