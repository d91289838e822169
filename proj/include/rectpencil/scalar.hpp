#pragma once

// Coefficient domains: exact rationals (GMP), Gaussian rationals and
// double-precision complex numbers.

#include <gmpxx.h>

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "rectpencil/errors.hpp"

namespace rectpencil {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class Domain { rational, gaussian, complex };

std::string domain_name(Domain d);

/// a + b*i with exact rational parts.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  Gaussian(int r) : re(r) {}  // NOLINT(implicit)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) {
    return {Rational(a.re + b.re), Rational(a.im + b.im)};
  }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) {
    return {Rational(a.re - b.re), Rational(a.im - b.im)};
  }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
  }
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b) {
    Rational den = b.re * b.re + b.im * b.im;
    if (sgn(den) == 0) throw UsageError("division by zero Gaussian rational");
    return {Rational((a.re * b.re + a.im * b.im) / den), Rational((a.im * b.re - a.re * b.im) / den)};
  }
  Gaussian operator-() const { return {Rational(-re), Rational(-im)}; }
  Gaussian& operator+=(const Gaussian& o) { return *this = *this + o; }
  Gaussian& operator-=(const Gaussian& o) { return *this = *this - o; }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& text);
std::string format_double(double x);

template <class C>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Domain domain = Domain::rational;
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static Rational from_rational(const Rational& x) { return x; }
  static Rational imaginary_unit() { throw UsageError("imaginary unit in rational domain"); }
  static Rational from_double(double) { throw UsageError("decimal literal in exact rational domain"); }
  // True when the printed form should be "-<negated>".
  static bool prints_negative(const Rational& x) { return sgn(x) < 0; }
  static std::string to_string(const Rational& x) { return rational_to_string(x); }
  static bool is_atomic(const Rational&) { return true; }
};

template <>
struct ScalarTraits<Gaussian> {
  static constexpr Domain domain = Domain::gaussian;
  static constexpr bool exact = true;
  static bool is_zero(const Gaussian& x) { return x.is_zero(); }
  static Gaussian zero() { return Gaussian(); }
  static Gaussian one() { return Gaussian(1); }
  static Complex to_complex(const Gaussian& x) { return {x.re.get_d(), x.im.get_d()}; }
  static double magnitude(const Gaussian& x) { return std::abs(to_complex(x)); }
  static Gaussian from_rational(const Rational& x) { return Gaussian(x); }
  static Gaussian imaginary_unit() { return Gaussian(Rational(0), Rational(1)); }
  static Gaussian from_double(double) { throw UsageError("decimal literal in exact Gaussian domain"); }
  static bool prints_negative(const Gaussian& x) {
    if (sgn(x.im) == 0) return sgn(x.re) < 0;
    if (sgn(x.re) == 0) return sgn(x.im) < 0;
    return false;
  }
  static std::string to_string(const Gaussian& x);
  static bool is_atomic(const Gaussian& x) { return sgn(x.re) == 0 || sgn(x.im) == 0; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr Domain domain = Domain::complex;
  static constexpr bool exact = false;
  static constexpr double default_tolerance = 1e-10;
  static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex to_complex(const Complex& x) { return x; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex from_rational(const Rational& x) { return {x.get_d(), 0.0}; }
  static Complex imaginary_unit() { return {0.0, 1.0}; }
  static Complex from_double(double x) { return {x, 0.0}; }
  static bool prints_negative(const Complex& x) {
    if (x.imag() == 0.0) return x.real() < 0.0;
    if (x.real() == 0.0) return x.imag() < 0.0;
    return false;
  }
  static std::string to_string(const Complex& x);
  static bool is_atomic(const Complex& x) { return x.real() == 0.0 || x.imag() == 0.0; }
};

/// Lossless lift from an exact domain into a (possibly wider) target domain.
template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, Complex>) {
    return ScalarTraits<From>::to_complex(x);
  } else if constexpr (std::is_same_v<To, Gaussian> && std::is_same_v<From, Rational>) {
    return Gaussian(x);
  } else {
    static_assert(sizeof(To) == 0, "unsupported scalar conversion");
  }
}

/// Complex approximate equality: |a-b| <= tol * max(1, |a|, |b|).
inline bool approx_equal(const Complex& a, const Complex& b, double tol = 1e-10) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace rectpencil
