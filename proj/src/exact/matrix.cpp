#include "cantor/exact/matrix.hpp"

#include "cantor/error.hpp"

namespace cantor {

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m(n, RationalVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix transpose(const RationalMatrix& a) {
  if (a.empty()) return {};
  RationalMatrix t(a[0].size(), RationalVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.empty()) return {};
  if (a[0].size() != b.size()) fail_invariant("matrix shape mismatch");
  std::size_t cols = b.empty() ? 0 : b[0].size();
  RationalMatrix c(a.size(), RationalVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

RationalVector multiply(const RationalVector& v, const RationalMatrix& a) {
  if (v.size() != a.size()) fail_invariant("matrix shape mismatch");
  std::size_t cols = a.empty() ? 0 : a[0].size();
  RationalVector out(cols, 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) out[j] += v[k] * a[k][j];
  }
  return out;
}

Rational determinant(RationalMatrix a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

std::size_t rank(RationalMatrix a) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(a[i][col]) == 0) continue;
      Rational f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  std::size_t n = a.size();
  RationalMatrix m = a;
  RationalMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace cantor
