#pragma once

// Narrow ray class groups Cl(b), their characters, conductors and Gauss sums.
//
// Cl(b) is presented as Z^s x {±1}^d x Cl_F modulo relations, where Z^s
// carries (O/b)^x, the sign factor carries the infinite places and Cl_F is
// lifted through generators coprime to b. The Smith form of the relation
// matrix gives the invariant factors and the discrete-log coordinates.

#include "hc/ideal.hpp"
#include "hc/numeric/cyclotomic.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace hc {

namespace detail {
struct RayClassData;
}

/// Coordinates over the SNF generators, each reduced into [0, order).
using ClassCoords = std::vector<Integer>;

class RayClassGroup {
 public:
  /// Cached per (field, modulus). b integral with N(b) <= max_norm.
  static RayClassGroup build(const FractionalIdeal& b, long max_norm = 100000);

  const Field& field() const;
  const FractionalIdeal& modulus() const;
  /// Invariant factors (> 1), in SNF order.
  const std::vector<Integer>& structure() const;
  long order() const;
  /// Prime ideals dividing the modulus.
  const std::vector<PrimeIdeal>& primes() const;

  bool coprime_to_modulus(const FractionalIdeal& a) const;
  bool coprime_to_modulus(const FieldElement& a) const;

  /// Class of a fractional ideal coprime to the modulus; nullopt otherwise.
  std::optional<ClassCoords> dlog(const FractionalIdeal& a) const;
  /// Class of aO.
  std::optional<ClassCoords> dlog(const FieldElement& a) const;
  /// Class of the principal ideal of an element a ≡ 1 mod b that is
  /// negative exactly at embedding sigma.
  ClassCoords sign_class(int sigma) const;

  /// Integral ideal coprime to the modulus in the class with these coordinates.
  FractionalIdeal representative(const ClassCoords& c) const;
  /// Representatives of the SNF generators.
  std::vector<FractionalIdeal> generators() const;
  /// Every class, in mixed-radix order of the coordinates.
  std::vector<ClassCoords> elements() const;

  /// Some a ≡ r mod b with the prescribed signs (+1/-1 per embedding).
  FieldElement lift_with_signs(const FieldElement& r, const SignVector& s) const;

  bool operator==(const RayClassGroup& o) const { return d_ == o.d_; }

 private:
  std::shared_ptr<const detail::RayClassData> d_;
};

/// Homomorphism Cl(b) -> C^x stored as exponents e_k in [0, 1) on the SNF
/// generators: psi(g_k) = exp(2 pi i e_k).
class RayClassCharacter {
 public:
  RayClassCharacter(RayClassGroup G, std::vector<Rational> images);
  static RayClassCharacter trivial(const Field& F);

  const RayClassGroup& group() const { return G_; }
  const FractionalIdeal& modulus() const { return G_.modulus(); }
  const std::vector<Rational>& images() const { return e_; }
  const Field& field() const { return G_.field(); }

  /// Exponent of psi on a class, in [0, 1).
  Rational exponent(const ClassCoords& c) const;
  /// psi(a); zero when a is not coprime to the modulus.
  Cyclotomic operator()(const FractionalIdeal& a) const;
  Cyclotomic at_class(const ClassCoords& c) const;
  /// psi_f(a) = psi(aO) sgn(a)^r; zero when aO is not coprime.
  Cyclotomic finite_part(const FieldElement& a) const;

  SignVector signature() const;
  bool is_trivial() const;
  long order() const;
  RayClassCharacter inverse() const;

  /// Same character read on a smaller modulus b' ⊆ b (b | b').
  RayClassCharacter lift(const FractionalIdeal& smaller) const;
  /// Whether psi factors through Cl(c) for an integral c ⊇ modulus.
  bool factors_through(const FractionalIdeal& c) const;
  FractionalIdeal conductor() const;
  bool is_primitive() const;
  /// The character on Cl(conductor) inducing psi.
  RayClassCharacter primitive() const;

  /// Equality of the underlying functions on a common modulus.
  bool same_function(const RayClassCharacter& o) const;

 private:
  RayClassGroup G_;
  std::vector<Rational> e_;
};

/// Product of two characters, read on the intersection of their moduli.
RayClassCharacter operator*(const RayClassCharacter& a, const RayClassCharacter& b);

/// All #Cl(b) characters, in mixed-radix order of their images.
std::vector<RayClassCharacter> characters(const RayClassGroup& G);

/// Primitive characters with the given conductor.
std::vector<RayClassCharacter> primitive_characters(const RayClassGroup& G);

/// tau(psi) = sum over x in b^{-1}d^{-1}/d^{-1} of sgn(x)^r psi(x b d) e_F(x),
/// on the character's own modulus, exactly.
Cyclotomic gauss_sum(const RayClassCharacter& psi);

/// Parse {"modulus": ideal literal, "images": [...]} style data.
RayClassCharacter character_from_images(const FractionalIdeal& modulus, const std::vector<std::string>& images);

}  // namespace hc
