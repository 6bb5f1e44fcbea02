#pragma once

#include <cmath>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace procalab {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number over an arbitrary field type. std::complex is only specified
/// for the built-in floating types, so exact rational arithmetic needs its own.
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T real, T imag = T{}) : re(std::move(real)), im(std::move(imag)) {}

  static Complex unit_i() { return Complex(T{0}, T{1}); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return Complex(T(-a.re), T(-a.im)); }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(T(a.re * b.re - a.im * b.im), T(a.re * b.im + a.im * b.re));
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class T>
Complex<T> conj(const Complex<T>& z) {
  return Complex<T>(z.re, T(-z.im));
}

template <class T>
bool is_zero(const Complex<T>& z) {
  return z.re == 0 && z.im == 0;
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class T>
double magnitude(const Complex<T>& z) {
  return std::hypot(to_double(z.re), to_double(z.im));
}

}  // namespace procalab
