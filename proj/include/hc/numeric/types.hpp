#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hc {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ZMatrix = Mat<Integer>;
using QMatrix = Mat<Rational>;
using ZVector = Vec<Integer>;
using QVector = Vec<Rational>;

/// Input violates a documented precondition (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Request lies outside the supported scope, e.g. degree >= 3 without
/// supplied data or k = 1 numerics (CLI exit code 3).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Always a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}
inline void ensure(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Integer(0);
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

/// Floor division with a positive or negative divisor.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}
/// Representative of a mod m in [0, |m|).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += boost::multiprecision::abs(m);
  return r;
}
inline Integer floor(const Rational& q) { return floor_div(num(q), den(q)); }
inline Integer ceil(const Rational& q) { return -floor_div(-num(q), den(q)); }

/// Fractional part in [0, 1); used for root-of-unity exponents in Q/Z.
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

inline long to_long(const Integer& z) {
  if (z > Integer(INT64_MAX) || z < Integer(INT64_MIN))
    throw UnsupportedError("integer exceeds 64-bit range");
  return z.convert_to<long>();
}

/// Number of bits of |z|; 0 for z = 0.
inline unsigned bit_length(const Integer& z) {
  if (z == 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(boost::multiprecision::abs(z))) + 1;
}

inline std::string to_string(const Integer& z) { return z.str(); }
/// "p/q" or "p" for integers.
inline std::string to_string(const Rational& q) {
  return den(q) == 1 ? num(q).str() : num(q).str() + "/" + den(q).str();
}

/// Parses "p", "-p" or "p/q"; throws ValidationError on malformed input.
Rational parse_rational(const std::string& s);

Integer pow(const Integer& base, unsigned e);
Rational pow(const Rational& base, long e);

/// Positive divisors of n > 0, ascending.
std::vector<Integer> divisors(const Integer& n);
/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<Integer, int>> factor_integer(Integer n);
bool is_prime(const Integer& n);
bool is_squarefree(const Integer& n);

}  // namespace hc
