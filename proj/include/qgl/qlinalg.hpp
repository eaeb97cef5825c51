#pragma once

// Dense exact linear algebra over Q(q): reduced row echelon form, rank,
// kernels and small solves.  Sizes here are module-dimension scale, so the
// classical O(n^3) algorithms are fine.

#include "qgl/qfield.hpp"

#include <vector>

namespace qgl {

using QVec = std::vector<QScalar>;
using QMat = std::vector<QVec>;

/// In-place reduced row echelon form; returns the pivot column of each pivot
/// row in order.
inline std::vector<int> rref(QMat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!a[i][c].isZero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    QScalar inv = a[r][c].inverse();
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].isZero()) continue;
      QScalar f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

inline int rank(QMat a) { return static_cast<int>(rref(a).size()); }

/// Basis of the right kernel of a (vectors x with a x = 0).
inline std::vector<QVec> nullspace(QMat a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  std::vector<int> piv = rref(a);
  std::vector<bool> isPivot(cols, false);
  for (int c : piv) isPivot[static_cast<size_t>(c)] = true;
  std::vector<QVec> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (isPivot[fc]) continue;
    QVec v(cols, QScalar(0));
    v[fc] = QScalar(1);
    for (size_t pr = 0; pr < piv.size(); ++pr)
      v[static_cast<size_t>(piv[pr])] = -a[pr][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve the square nonsingular system g x = b; throws on singular g.
inline QVec solveSquare(QMat g, QVec b) {
  size_t n = g.size();
  for (size_t i = 0; i < n; ++i) g[i].push_back(b[i]);
  std::vector<int> piv = rref(g);
  if (piv.size() != n) throw internal_error("singular Gram system");
  QVec x(n);
  for (size_t i = 0; i < n; ++i) {
    if (piv[i] != static_cast<int>(i)) throw internal_error("singular Gram system");
    x[i] = g[i][n];
  }
  return x;
}

}  // namespace qgl
