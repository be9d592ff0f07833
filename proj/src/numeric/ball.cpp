#include "hc/numeric/ball.hpp"

#include <cmath>
#include <limits>

namespace hc {

double add_up(double a, double b) {
  return std::nextafter(a + b, std::numeric_limits<double>::infinity());
}
double mul_up(double a, double b) {
  return std::nextafter(a * b, std::numeric_limits<double>::infinity());
}

double abs_upper(const Real& x) {
  if (x.is_zero()) return 0.0;
  double d = std::fabs(x.to_double());
  return std::nextafter(std::nextafter(d, INFINITY), INFINITY);
}

double rounding_bound(const Complex& z) {
  double m = add_up(abs_upper(z.re), abs_upper(z.im));
  return std::ldexp(m, 2 - static_cast<int>(z.prec()));
}

Ball::Ball(Complex mid, double rad) : mid_(std::move(mid)), rad_(rad) {
  ensure(rad >= 0 && !std::isnan(rad), "Ball: invalid radius");
}

Ball Ball::exact(const Rational& q, Precision prec) {
  Real r(q, prec);
  Ball b(Complex(r), 0.0);
  if (r.to_rational() != q) b.rad_ = rounding_bound(b.mid_);
  return b;
}

Ball Ball::real(const Real& r, double rad) { return Ball(Complex(r), rad); }

Ball& Ball::inflate(double extra) {
  ensure(extra >= 0 && !std::isnan(extra), "Ball::inflate: invalid radius");
  rad_ = add_up(rad_, extra);
  return *this;
}

bool Ball::contains(const Rational& q) const {
  Precision p = prec() + 64;
  Real dr = mid_.re - Real(q, p);
  Complex d(dr, with_prec(mid_.im, p));
  return abs(d).to_double() <= rad_ * (1 + 1e-12);
}

bool Ball::contains_zero() const { return abs(mid_).to_double() <= rad_ * (1 + 1e-12); }

bool Ball::overlaps(const Ball& other) const {
  double dist = abs(mid_ - other.mid_).to_double();
  return dist <= add_up(rad_, other.rad_) * (1 + 1e-12);
}

double Ball::abs_upper() const {
  return add_up(add_up(hc::abs_upper(mid_.re), hc::abs_upper(mid_.im)), rad_);
}

Ball& Ball::operator+=(const Ball& o) {
  mid_ += o.mid_;
  rad_ = add_up(add_up(rad_, o.rad_), rounding_bound(mid_));
  return *this;
}
Ball& Ball::operator-=(const Ball& o) {
  mid_ -= o.mid_;
  rad_ = add_up(add_up(rad_, o.rad_), rounding_bound(mid_));
  return *this;
}
Ball& Ball::operator*=(const Ball& o) {
  *this = *this * o;
  return *this;
}

std::string Ball::str(int digits) const {
  return "(" + mid_.re.str(digits) + " + " + mid_.im.str(digits) + "i) +/- " +
         std::to_string(rad_);
}

Ball operator+(const Ball& a, const Ball& b) {
  Ball r = a;
  r += b;
  return r;
}
Ball operator-(const Ball& a, const Ball& b) {
  Ball r = a;
  r -= b;
  return r;
}
Ball operator-(const Ball& a) { return Ball(-a.mid(), a.rad()); }
Ball operator*(const Ball& a, const Ball& b) {
  Complex m = a.mid() * b.mid();
  // |ab - m_a m_b| <= |m_a| r_b + |m_b| r_a + r_a r_b
  double ma = add_up(abs_upper(a.mid().re), abs_upper(a.mid().im));
  double mb = add_up(abs_upper(b.mid().re), abs_upper(b.mid().im));
  double rad = add_up(add_up(mul_up(ma, b.rad()), mul_up(mb, a.rad())), mul_up(a.rad(), b.rad()));
  rad = add_up(rad, rounding_bound(m));
  return Ball(std::move(m), rad);
}
Ball operator/(const Ball& a, const Ball& b) {
  // 1/b: |1/x - 1/m| <= r / (|m| (|m| - r))
  double mlow = abs(b.mid()).to_double() * (1 - 1e-15);
  ensure(mlow > b.rad(), "Ball division: denominator contains zero");
  Complex inv = Complex(Real(1L, b.prec())) / b.mid();
  double rad = b.rad() / (mlow * (mlow - b.rad())) * (1 + 1e-14);
  rad = add_up(rad, rounding_bound(inv));
  return a * Ball(std::move(inv), rad);
}
Ball conj(const Ball& a) { return Ball(conj(a.mid()), a.rad()); }
Ball pow(const Ball& a, long n) {
  if (n < 0) return Ball::exact(Rational(1), a.prec()) / pow(a, -n);
  Ball r = Ball::exact(Rational(1), a.prec());
  Ball b = a;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

}  // namespace hc
