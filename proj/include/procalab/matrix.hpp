#pragma once

#include <algorithm>
#include <array>
#include <cstddef>

#include "procalab/complex.hpp"

namespace procalab {

template <class T, std::size_t N>
using Vector = std::array<Complex<T>, N>;

/// Dense N×N complex matrix, row-major. Sized for the 2×2, 3×3 and 4×4
/// generators, so everything lives on the stack.
template <class T, std::size_t N>
struct Matrix {
  std::array<Complex<T>, N * N> entries{};

  Complex<T>& operator()(std::size_t row, std::size_t col) { return entries[row * N + col]; }
  const Complex<T>& operator()(std::size_t row, std::size_t col) const { return entries[row * N + col]; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = Complex<T>(T{1});
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) entries[i] += o.entries[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) entries[i] -= o.entries[i];
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(const Matrix& a) {
    Matrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.entries[i] = -a.entries[i];
    return m;
  }
  friend Matrix operator*(const Complex<T>& s, const Matrix& a) {
    Matrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.entries[i] = s * a.entries[i];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        Complex<T> acc;
        for (std::size_t k = 0; k < N; ++k) acc += a(r, k) * b(k, c);
        m(r, c) = acc;
      }
    return m;
  }
  friend Vector<T, N> operator*(const Matrix& a, const Vector<T, N>& v) {
    Vector<T, N> out{};
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) out[r] += a(r, k) * v[k];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.entries == b.entries; }
};

template <class T, std::size_t N>
Matrix<T, N> conj_transpose(const Matrix<T, N>& a) {
  Matrix<T, N> m;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m(r, c) = conj(a(c, r));
  return m;
}

template <class T, std::size_t N>
Matrix<T, N> commutator(const Matrix<T, N>& a, const Matrix<T, N>& b) {
  return a * b - b * a;
}

template <class T, std::size_t N>
bool is_hermitian(const Matrix<T, N>& a) {
  return a == conj_transpose(a);
}

template <class T, std::size_t N>
bool is_zero(const Matrix<T, N>& a) {
  return std::all_of(a.entries.begin(), a.entries.end(), [](const Complex<T>& z) { return is_zero(z); });
}

template <class T, std::size_t N>
bool is_zero(const Vector<T, N>& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex<T>& z) { return is_zero(z); });
}

/// Largest entry modulus, as a double, for reporting.
template <class T, std::size_t N>
double max_entry(const Matrix<T, N>& a) {
  double m = 0.0;
  for (const auto& z : a.entries) m = std::max(m, magnitude(z));
  return m;
}

template <class T, std::size_t N>
double max_entry(const Vector<T, N>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, magnitude(z));
  return m;
}

template <class T, std::size_t N>
Vector<T, N> operator-(const Vector<T, N>& a, const Vector<T, N>& b) {
  Vector<T, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i] - b[i];
  return out;
}

template <class T, std::size_t N>
Vector<T, N> scale(const Complex<T>& s, const Vector<T, N>& v) {
  Vector<T, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = s * v[i];
  return out;
}

/// Bilinear dot product a·v (no conjugation), as p·Ψ appears in the wave equations.
template <class T, std::size_t N>
Complex<T> dot(const Vector<T, N>& a, const Vector<T, N>& v) {
  Complex<T> acc;
  for (std::size_t i = 0; i < N; ++i) acc += a[i] * v[i];
  return acc;
}

template <class T>
Vector<T, 3> cross(const Vector<T, 3>& a, const Vector<T, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace procalab
