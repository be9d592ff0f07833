#pragma once

// Thin RAII wrapper over MPFR with explicit per-value precision. Results of
// binary operations take the larger operand precision. No global state.

#include "hc/numeric/types.hpp"

#include <mpfr.h>

#include <string>

namespace hc {

using Precision = mpfr_prec_t;

class Real {
 public:
  explicit Real(Precision prec = 128);
  Real(long v, Precision prec);
  Real(int v, Precision prec) : Real(static_cast<long>(v), prec) {}
  Real(double v, Precision prec);
  Real(const Integer& v, Precision prec);
  Real(const Rational& v, Precision prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Exact dyadic value of the stored number.
  Rational to_rational() const;
  /// Scientific notation with the given number of significant digits.
  std::string str(int digits = 20) const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  static Real pi(Precision prec);

 private:
  mpfr_t v_;
  static Precision widest(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
  friend Real operator+(const Real&, const Real&);
  friend Real operator-(const Real&, const Real&);
  friend Real operator*(const Real&, const Real&);
  friend Real operator/(const Real&, const Real&);
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real cosh(const Real& x);
Real erfc(const Real& x);
/// Euler Gamma; poles at nonpositive integers give infinity.
Real gamma(const Real& x);
/// Exponential integral E_1(x) for x > 0.
Real expint_e1(const Real& x);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real floor(const Real& x);
Real with_prec(const Real& x, Precision prec);

/// Complex number over Real.
struct Complex {
  Real re, im;
  explicit Complex(Precision prec = 128) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(r.prec()) {}
  Precision prec() const { return std::max(re.prec(), im.prec()); }
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
  Complex& operator*=(const Complex& o);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm2(const Complex& z);
Complex pow(const Complex& z, long n);
/// exp(2 pi i t) for exact rational t.
Complex exp_2pi_i(const Rational& t, Precision prec);

}  // namespace hc
