#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace pmech {

using Rational = mpq_class;

// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational rational_from_double(double v);
double to_double(const Rational& r);
// "3", "-2/7", "0.125" (decimals are converted exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
Rational binomial(unsigned n, unsigned k);
Rational factorial(unsigned n);

// Exact Gaussian rational re + i*im.
struct CRational {
  Rational re;
  Rational im;

  CRational() = default;
  CRational(const Rational& r) : re(r), im(0) {}
  CRational(const Rational& r, const Rational& i) : re(r), im(i) {}
  CRational(long v) : re(v), im(0) {}
  CRational(int v) : re(v), im(0) {}

  static CRational i() { return CRational(0, 1); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  CRational conj() const { return CRational(re, -im); }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  CRational& operator+=(const CRational& o);
  CRational& operator-=(const CRational& o);
  CRational& operator*=(const CRational& o);
  CRational& operator/=(const CRational& o);
};

CRational operator+(CRational a, const CRational& b);
CRational operator-(CRational a, const CRational& b);
CRational operator*(CRational a, const CRational& b);
CRational operator/(CRational a, const CRational& b);
CRational operator-(const CRational& a);
bool operator==(const CRational& a, const CRational& b);
CRational crational_from_complex(std::complex<double> z);
std::string to_string(const CRational& c);

}  // namespace pmech
