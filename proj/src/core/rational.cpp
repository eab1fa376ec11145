#include "pmech/rational.hpp"

#include <cmath>

#include "pmech/errors.hpp"

namespace pmech {

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("non-finite value has no rational representation");
  Rational r(v);
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty number", 0);
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("malformed number '" + s + "'", 0);
    r.canonicalize();
    return r;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t scale = s.size() - dot - 1;
  mpz_class num;
  if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0)
    throw ParseError("malformed decimal '" + s + "'", 0);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

CRational& CRational::operator+=(const CRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CRational& CRational::operator-=(const CRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

CRational& CRational::operator*=(const CRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRational& CRational::operator/=(const CRational& o) {
  Rational d = o.re * o.re + o.im * o.im;
  if (sgn(d) == 0) throw InvalidArgument("division by zero");
  Rational r = (re * o.re + im * o.im) / d;
  Rational i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRational operator+(CRational a, const CRational& b) { return a += b; }
CRational operator-(CRational a, const CRational& b) { return a -= b; }
CRational operator*(CRational a, const CRational& b) { return a *= b; }
CRational operator/(CRational a, const CRational& b) { return a /= b; }
CRational operator-(const CRational& a) { return CRational(-a.re, -a.im); }
bool operator==(const CRational& a, const CRational& b) { return a.re == b.re && a.im == b.im; }

CRational crational_from_complex(std::complex<double> z) {
  return CRational(rational_from_double(z.real()), rational_from_double(z.imag()));
}

std::string to_string(const CRational& c) {
  if (c.is_real()) return to_string(c.re);
  if (sgn(c.re) == 0) return to_string(c.im) + "*i";
  std::string im = to_string(c.im);
  if (sgn(c.im) < 0) return "(" + to_string(c.re) + " - " + im.substr(1) + "*i)";
  return "(" + to_string(c.re) + " + " + im + "*i)";
}

}  // namespace pmech
