#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

namespace isoquad {

template <typename T>
using Vector4 = std::array<T, 4>;

/// Dense 4x4 row-major matrix over a scalar type (double or DualScalar).
template <typename T>
struct Matrix4 {
  std::array<std::array<T, 4>, 4> m{};

  T& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

  static Matrix4 identity() {
    Matrix4 out;
    for (std::size_t i = 0; i < 4; ++i) out.m[i][i] = T(1.0);
    return out;
  }

  static Matrix4 diagonal(const Vector4<T>& d) {
    Matrix4 out;
    for (std::size_t i = 0; i < 4; ++i) out.m[i][i] = d[i];
    return out;
  }

  T trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }

  Matrix4& operator+=(const Matrix4& o) {
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m[r][c] += o.m[r][c];
    return *this;
  }
  Matrix4& operator-=(const Matrix4& o) {
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m[r][c] -= o.m[r][c];
    return *this;
  }

  friend Matrix4 operator+(Matrix4 a, const Matrix4& b) { return a += b; }
  friend Matrix4 operator-(Matrix4 a, const Matrix4& b) { return a -= b; }

  friend Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 out;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        T acc = a.m[r][0] * b.m[0][c];
        for (std::size_t k = 1; k < 4; ++k) acc += a.m[r][k] * b.m[k][c];
        out.m[r][c] = acc;
      }
    return out;
  }

  friend Matrix4 operator*(const T& s, Matrix4 a) {
    for (auto& row : a.m)
      for (auto& v : row) v = s * v;
    return a;
  }

  /// diag(d) * this, i.e. row r scaled by d[r].
  Matrix4 scaled_rows(const Vector4<T>& d) const {
    Matrix4 out = *this;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) out.m[r][c] = d[r] * m[r][c];
    return out;
  }
};

/// Gaussian elimination with partial pivoting. Returns the determinant of `a`
/// and overwrites `b` with the solution; nullopt when a pivot is exactly zero.
inline std::optional<double> solve_in_place(Matrix4<double> a, Vector4<double>& b) {
  double det = 1.0;
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 4; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) return std::nullopt;
    if (piv != col) {
      std::swap(a.m[piv], a.m[col]);
      std::swap(b[piv], b[col]);
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < 4; ++r) {
      const double f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < 4; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 4; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < 4; ++c) acc -= a(i, c) * b[c];
    b[i] = acc / a(i, i);
  }
  return det;
}

inline double determinant(const Matrix4<double>& a) {
  Vector4<double> dummy{};
  return solve_in_place(a, dummy).value_or(0.0);
}

}  // namespace isoquad
