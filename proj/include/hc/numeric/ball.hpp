#pragma once

// Complex midpoint-radius balls. The radius is a double upper bound on
// |value - mid|; every operation adds the rounding error of the midpoint.

#include "hc/numeric/real.hpp"

#include <string>

namespace hc {

class Ball {
 public:
  explicit Ball(Precision prec = 128) : mid_(prec), rad_(0.0) {}
  Ball(Complex mid, double rad);
  static Ball exact(const Rational& q, Precision prec);
  static Ball real(const Real& r, double rad);

  const Complex& mid() const { return mid_; }
  double rad() const { return rad_; }
  Precision prec() const { return mid_.prec(); }

  /// Widen the radius by a nonnegative amount.
  Ball& inflate(double extra);

  bool contains(const Rational& q) const;
  bool contains_zero() const;
  /// True if the two balls intersect.
  bool overlaps(const Ball& other) const;
  /// Upper bound of |value|.
  double abs_upper() const;

  Ball& operator+=(const Ball& o);
  Ball& operator-=(const Ball& o);
  Ball& operator*=(const Ball& o);

  std::string str(int digits = 20) const;

 private:
  Complex mid_;
  double rad_;
};

Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator-(const Ball& a);
Ball operator*(const Ball& a, const Ball& b);
Ball operator/(const Ball& a, const Ball& b);
Ball conj(const Ball& a);
Ball pow(const Ball& a, long n);

/// Upward-rounded helpers on nonnegative doubles.
double add_up(double a, double b);
double mul_up(double a, double b);
/// Upper bound on |x| as a double.
double abs_upper(const Real& x);
/// Rounding error bound 2^(1-prec) * |z| for a computed midpoint.
double rounding_bound(const Complex& z);

}  // namespace hc
