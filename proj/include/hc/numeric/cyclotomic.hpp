#pragma once

// Exact elements of Q(zeta_M), stored canonically as coefficients of
// 1, zeta, ..., zeta^(phi(M)-1) after reduction modulo the cyclotomic
// polynomial. Mixed-level operations lift both operands to the lcm level.

#include "hc/numeric/ball.hpp"

#include <string>
#include <vector>

namespace hc {

class Cyclotomic {
 public:
  Cyclotomic() : level_(1), c_{Rational(0)} {}
  explicit Cyclotomic(const Rational& q) : level_(1), c_{q} {}
  explicit Cyclotomic(long q) : Cyclotomic(Rational(q)) {}

  /// exp(2 pi i e) for an exact rational exponent.
  static Cyclotomic root_of_unity(const Rational& e);

  int level() const { return level_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational rational_value() const;
  bool is_real() const;

  /// Same value viewed in Q(zeta_L) for a multiple L of level().
  Cyclotomic lift(int L) const;
  /// zeta -> zeta^a, gcd(a, level) = 1.
  Cyclotomic galois(long a) const;
  Cyclotomic conj() const { return galois(-1); }
  Cyclotomic inverse() const;
  /// Galois norm to Q.
  Rational norm() const;

  Ball to_ball(Precision prec) const;
  std::string str() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  Cyclotomic(int level, std::vector<Rational> dense_mod_xM_minus_1, bool reduce);
  int level_;
  std::vector<Rational> c_;
};

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator-(const Cyclotomic& a);
Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic pow(const Cyclotomic& a, long n);
inline bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

/// Coefficients of the M-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int M);
int euler_phi(int M);

}  // namespace hc
