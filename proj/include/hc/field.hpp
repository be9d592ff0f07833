#pragma once

// Totally real number fields: exact elements over an integral basis,
// certified real embeddings, units and the unit subgroup U.

#include "hc/numeric/real.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hc {

class FieldElement;
class FractionalIdeal;
namespace detail {
struct FieldData;
}

/// Sign vector or exponent vector in (Z/2)^d, indexed by embeddings.
using SignVector = std::vector<int>;

/// Parsed field specification. Either quadratic_D, or poly + basis (+ units).
struct FieldSpec {
  std::optional<long> quadratic_D;
  std::vector<Integer> poly;               // c_0 .. c_d, monic
  QMatrix basis;                           // columns: integral basis in the power basis
  std::vector<std::vector<Rational>> units;  // coordinates over the integral basis
  std::optional<long> class_number;        // supplied class data (only h = 1 accepted)
};

/// Handle to an immutable field description; cheap to copy.
class Field {
 public:
  static Field rationals();
  static Field quadratic(long D);
  static Field make(const FieldSpec& spec);

  int degree() const;
  const std::vector<Integer>& polynomial() const;
  const QMatrix& integral_basis() const;
  const Integer& discriminant() const;
  /// Fundamental units (without -1).
  std::vector<FieldElement> unit_generators() const;
  bool has_unit_data() const;
  bool has_class_data() const;
  std::optional<long> quadratic_D() const;
  /// Product ω_i ω_j as integral-basis coordinates.
  const std::vector<Integer>& mult(int i, int j) const;
  /// Tr(ω_i).
  const Integer& trace_of_basis(int i) const;
  /// Tr(ω_i ω_j).
  const ZMatrix& trace_form() const;

  FractionalIdeal different() const;
  FractionalIdeal codifferent() const;
  FractionalIdeal unit_ideal() const;

  /// Real approximation of θ at embedding i (descending root order).
  Real root(int i, Precision prec) const;
  /// Literal symbol for the second basis element ("w").
  std::string describe() const;

  const detail::FieldData& data() const { return *d_; }
  bool operator==(const Field& o) const { return d_ == o.d_; }
  bool operator!=(const Field& o) const { return d_ != o.d_; }

 private:
  std::shared_ptr<const detail::FieldData> d_;
};

class FieldElement {
 public:
  explicit FieldElement(const Field& F);
  FieldElement(const Field& F, QVector coords);
  FieldElement(const Field& F, const Rational& q);
  static FieldElement basis(const Field& F, int i);
  /// Parses "x + y*w" style literals (w, w1, .., w{d-1}; sqrt(D) in quadratic fields).
  static FieldElement parse(const Field& F, const std::string& literal);

  const Field& field() const { return F_; }
  const QVector& coords() const { return c_; }
  const Rational& operator[](int i) const { return c_(i); }

  bool is_zero() const;
  bool is_integral() const;
  bool is_rational() const;
  Integer denominator() const;

  FieldElement inverse() const;
  Rational trace() const;
  Rational norm() const;
  /// Columns are the coordinates of a·ω_j.
  QMatrix regular_matrix() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);

  std::string str() const;

 private:
  Field F_;
  QVector c_;
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const Rational& q, const FieldElement& a);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
bool operator==(const FieldElement& a, const FieldElement& b);
inline bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
FieldElement pow(const FieldElement& a, long n);
/// Strict weak order on coordinates, for containers.
bool lex_less(const FieldElement& a, const FieldElement& b);

/// Exact sign at every embedding. a != 0.
SignVector signs(const FieldElement& a);
/// Exact sign at embedding i. a != 0.
int sign_at(const FieldElement& a, int i);
/// prod_σ sgn(a^σ)^{q_σ}.
int sgn_power(const FieldElement& a, const SignVector& q);
bool is_totally_positive(const FieldElement& a);
/// Floor of a at embedding i.
Integer floor_at(const FieldElement& a, int i);

std::vector<Real> embeddings(const FieldElement& a, Precision prec);
std::vector<double> embeddings_double(const FieldElement& a);

/// Exact comparison |a^{σ_i}| >= |a^{σ_j}|, a != 0.
bool abs_ge(const FieldElement& a, int i, int j);

/// U = {u in O^x : N(u)^k = 1, u ≡ 1 mod m}.
struct UnitSubgroup {
  std::vector<FieldElement> generators;  // infinite-order generator(s) first
  bool contains_minus_one = false;
  long index = 1;                        // [O^x : U]
  /// Exponents of the rank part in terms of the fundamental units, one row
  /// per infinite-order generator.
  std::vector<std::vector<long>> exponents;
};

UnitSubgroup unit_subgroup(const Field& F, const FractionalIdeal& m, long k);

}  // namespace hc
