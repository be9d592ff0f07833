#include "hc/numeric/real.hpp"

#include <gmp.h>

#include <cstdio>
#include <memory>

namespace hc {

Real::Real(Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}
Real::Real(long v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}
Real::Real(double v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}
Real::Real(const Integer& v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.backend().data(), MPFR_RNDN);
}
Real::Real(const Rational& v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.backend().data(), MPFR_RNDN);
}
Real::Real(const Real& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}
Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, other.prec());
  mpfr_swap(v_, other.v_);
}
Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

Rational Real::to_rational() const {
  ensure(is_finite(), "Real::to_rational: non-finite value");
  if (is_zero()) return Rational(0);
  mpz_t m;
  mpz_init(m);
  mpfr_exp_t e = mpfr_get_z_2exp(m, v_);
  Integer mant;
  mpz_set(mant.backend().data(), m);
  mpz_clear(m);
  Rational r(mant);
  if (e >= 0) return r * Rational(pow(Integer(2), static_cast<unsigned>(e)));
  return r / Rational(pow(Integer(2), static_cast<unsigned>(-e)));
}

std::string Real::str(int digits) const {
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits - 1) + "Re";
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

long Real::exponent() const {
  if (is_zero()) return -(1L << 40);
  return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real Real::pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(Real::widest(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(Real::widest(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(Real::widest(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(Real::widest(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r = a;
  r *= b;
  return r;
}
Real operator/(const Real& a, long b) {
  Real r = a;
  r /= b;
  return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) {
  return mpfr_greaterequal_p(a.raw(), b.raw()) != 0;
}

#define HC_UNARY(name, fn)                  \
  Real name(const Real& x) {                \
    Real r(x.prec());                       \
    fn(r.raw(), x.raw(), MPFR_RNDN);        \
    return r;                               \
  }
HC_UNARY(abs, mpfr_abs)
HC_UNARY(sqrt, mpfr_sqrt)
HC_UNARY(exp, mpfr_exp)
HC_UNARY(log, mpfr_log)
HC_UNARY(cos, mpfr_cos)
HC_UNARY(sin, mpfr_sin)
HC_UNARY(cosh, mpfr_cosh)
HC_UNARY(erfc, mpfr_erfc)
HC_UNARY(gamma, mpfr_gamma)
#undef HC_UNARY

Real floor(const Real& x) {
  Real r(x.prec());
  mpfr_floor(r.raw(), x.raw());
  return r;
}

Real expint_e1(const Real& x) {
  ensure(x.sign() > 0, "expint_e1: argument must be positive");
  const Precision p = x.prec();
  const double xd = x.to_double();
  if (xd <= 20) {
    // -gamma - log x - sum_{k>=1} (-x)^k / (k k!); the alternating terms
    // reach about e^x while the result is about e^{-x}.
    const Precision wp = p + 16 + static_cast<Precision>(xd * 2.8854);
    Real y = with_prec(x, wp);
    Real term(1L, wp), sum(0L, wp);
    Real eps = pow(Real(2L, wp), -static_cast<long>(wp));
    for (long k = 1;; ++k) {
      term = -(term * y) / k;
      Real t = term / k;
      sum += t;
      if (abs(t) < eps && k > xd) break;
    }
    Real euler(wp);
    mpfr_const_euler(euler.raw(), MPFR_RNDN);
    return with_prec(-euler - log(y) - sum, p);
  }
  // e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))) by the modified Lentz method.
  const Precision wp = p + 16;
  Real y = with_prec(x, wp);
  Real tiny = pow(Real(2L, wp), -2 * static_cast<long>(wp));
  Real eps = pow(Real(2L, wp), -static_cast<long>(wp));
  Real one(1L, wp);
  Real b = y + one;
  Real f = b, C = b, D(0L, wp);
  for (long k = 1;; ++k) {
    Real a(-k * k, wp);
    b += Real(2L, wp);
    D = b + a * D;
    if (D.is_zero()) D = tiny;
    C = b + a / C;
    if (C.is_zero()) C = tiny;
    D = one / D;
    Real delta = C * D;
    f *= delta;
    if (abs(delta - one) < eps) break;
    ensure(k < 1000000, "expint_e1: continued fraction did not converge");
  }
  return with_prec(exp(-y) / f, p);
}

Real pow(const Real& x, long n) {
  Real r(x.prec());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
Real with_prec(const Real& x, Precision prec) {
  Real r(prec);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}
Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, const Complex& b) {
  Real n = norm2(b);
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return sqrt(norm2(z)); }
Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(Real(1L, z.prec())) / pow(z, -n);
  Complex r(Real(1L, z.prec()));
  Complex b = z;
  while (n) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}
Complex exp_2pi_i(const Rational& t, Precision prec) {
  Real ang = Real::pi(prec + 16) * Real(frac(t), prec + 16) * 2L;
  return {with_prec(cos(ang), prec), with_prec(sin(ang), prec)};
}

}  // namespace hc
