#pragma once

// Congruence subgroups of SL2(F), the ideal-class label of cusps and the
// explicit cusp representatives used for constant terms.

#include "hc/ideal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hc {

struct Mat2 {
  FieldElement a, b, c, d;

  static Mat2 identity(const Field& F);
  /// "a,b,c,d" with element literals.
  static Mat2 parse(const Field& F, const std::string& literal);

  const Field& field() const { return a.field(); }
  FieldElement det() const { return a * d - b * c; }
  /// Requires det != 0.
  Mat2 inverse() const;
  bool is_upper_triangular() const { return c.is_zero(); }
  std::string str() const;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
bool operator==(const Mat2& x, const Mat2& y);

enum class DetConstraint { Unit, One };

/// Γ(n; O, c): a, d ∈ O, b ∈ c^{-1}d^{-1}, c ∈ n c d, det ∈ O^x totally
/// positive (Unit) or det = 1 (One).
struct GroupSpec {
  FractionalIdeal level;
  FractionalIdeal twist;
  DetConstraint det = DetConstraint::One;
};

bool is_member(const Mat2& g, const GroupSpec& G);

/// c·t·d^{-1} + aO for m = [[a, *], [c, *]].
FractionalIdeal il_ideal(const Mat2& m, const FractionalIdeal& t);
/// The variant c·t·d + aO, which is not invariant under Γ(O; O, t^{-1}).
FractionalIdeal il_ideal_with_different(const Mat2& m, const FractionalIdeal& t);
/// Wide class index (into class_group(F, Wide).representatives()) of il_ideal.
int il_class(const Mat2& m, const FractionalIdeal& t);

/// Z-basis of L made of totally positive elements, by the covolume-decreasing
/// exchange starting from independent positive lattice points.
std::vector<FieldElement> positive_basis(const FractionalIdeal& L);

/// Totally positive x ∈ L with x ∉ P·L for every listed prime.
FieldElement avoid_primes(const FractionalIdeal& L, const std::vector<PrimeIdeal>& primes);

/// Totally positive a ∈ A with aO = A·n and n integral, coprime to m.
FieldElement positive_generator_coprime(const FractionalIdeal& A, const FractionalIdeal& m);

/// Ideal t_λ in each narrow class λ (ordered as class_group(F, Narrow)) with
/// b·d·t_λ integral and coprime to m.
std::vector<FractionalIdeal> twist_representatives(const FractionalIdeal& b, const FractionalIdeal& m);

/// Integral ideal in the wide class of r, coprime to m.
FractionalIdeal coprime_in_class(const FractionalIdeal& r, const FractionalIdeal& m);

struct CuspRepresentative {
  Mat2 matrix;
  int lambda = 0;
  int class_index = 0;  // wide class of the label
  FractionalIdeal class_label;
  FractionalIdeal n1;  // gamma O = n1 d t r0; O for the cusp at infinity
  FractionalIdeal n2;  // alpha O = n2 r0
  bool at_infinity = false;
};

/// A = [[α, β], [γ, δ]] ∈ SL2(F) with αO = n2 r0, β ∈ (d t r0)^{-1},
/// γO = n1 d t r0, δ ∈ r0^{-1}, n1 + n2 = O and n1 + b = O. r0 integral.
/// For r0 = O the identity is returned and labelled as the cusp at infinity.
CuspRepresentative cusp_matrix(const FractionalIdeal& t, const FractionalIdeal& r0, const FractionalIdeal& b,
                               int lambda = 0);

/// One representative per wide class, the class of O (infinity) first.
/// Labels are integral and coprime to m.
std::vector<CuspRepresentative> enumerate_cusps(const FractionalIdeal& t, const FractionalIdeal& b,
                                                const FractionalIdeal& m, int lambda = 0);

}  // namespace hc
