#pragma once

// Fractional ideals as canonical Hermite-normal-form lattices over the
// integral basis: lattice = (1/denom) * columns(hnf).

#include "hc/field.hpp"
#include "hc/numeric/lattice.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hc {

class FractionalIdeal {
 public:
  /// Lattice spanned by the integer columns of M divided by den, normalized.
  /// The columns must span a full-rank O-module (checked by is_module()).
  static FractionalIdeal from_lattice(const Field& F, const ZMatrix& M, const Integer& den);
  /// Z-lattice from rational basis columns over the integral basis.
  static FractionalIdeal from_rational_basis(const Field& F, const QMatrix& B);
  static FractionalIdeal principal(const FieldElement& a);
  static FractionalIdeal generated_by(const Field& F, const std::vector<FieldElement>& gens);
  /// "[g1, g2, ...]" generator list of element literals.
  static FractionalIdeal parse(const Field& F, const std::string& literal);

  const Field& field() const { return F_; }
  const ZMatrix& hnf() const { return H_; }
  const Integer& denom() const { return den_; }
  int degree() const { return F_.degree(); }

  /// Rational basis columns over the integral basis.
  QMatrix basis() const;
  std::vector<FieldElement> basis_elements() const;
  FieldElement basis_element(int j) const;

  Rational norm() const;
  bool is_integral() const { return den_ == 1; }
  bool is_one() const;
  /// Closed under multiplication by O.
  bool is_module() const;

  bool contains(const FieldElement& x) const;
  /// J ⊆ *this.
  bool contains(const FractionalIdeal& J) const;
  /// Coordinates of x with respect to basis(); integral iff x is a member.
  QVector coordinates(const FieldElement& x) const;

  FractionalIdeal inverse() const;
  FractionalIdeal intersect(const FractionalIdeal& o) const;
  /// (this : o) = this * o^{-1}.
  FractionalIdeal colon(const FractionalIdeal& o) const;

  std::string str() const;

 private:
  FractionalIdeal(Field F, ZMatrix H, Integer den) : F_(std::move(F)), H_(std::move(H)), den_(std::move(den)) {}
  Field F_;
  ZMatrix H_;
  Integer den_;
};

FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal operator*(const FractionalIdeal& a, const FieldElement& x);
FractionalIdeal operator*(const FieldElement& x, const FractionalIdeal& a);
FractionalIdeal operator+(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal operator/(const FractionalIdeal& a, const FractionalIdeal& b);
bool operator==(const FractionalIdeal& a, const FractionalIdeal& b);
inline bool operator!=(const FractionalIdeal& a, const FractionalIdeal& b) { return !(a == b); }
/// Total order on the canonical representation: norm, then denominator, then HNF.
bool operator<(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal pow(const FractionalIdeal& a, long n);

/// a | b, i.e. b ⊆ a.
bool divides(const FractionalIdeal& a, const FractionalIdeal& b);
/// a + b = O.
bool coprime(const FractionalIdeal& a, const FractionalIdeal& b);

struct PrimeIdeal {
  FractionalIdeal ideal;
  Integer p;
  int e = 1;  // ramification index
  int f = 1;  // residue degree
  Integer norm() const { return pow(p, static_cast<unsigned>(f)); }
};
bool operator==(const PrimeIdeal& a, const PrimeIdeal& b);

using Factorization = std::vector<std::pair<PrimeIdeal, int>>;

/// Primes above a rational prime p via Kummer–Dedekind.
std::vector<PrimeIdeal> primes_above(const Field& F, const Integer& p);
/// Sorted by (p, ideal); exponents nonzero.
Factorization factor(const FractionalIdeal& a);
FractionalIdeal product(const Field& F, const Factorization& f);
int valuation(const FractionalIdeal& a, const PrimeIdeal& P);
/// Distinct primes dividing an integral ideal.
std::vector<PrimeIdeal> prime_divisors(const FractionalIdeal& a);
/// All integral divisors of an integral ideal, sorted.
std::vector<FractionalIdeal> integral_divisors(const FractionalIdeal& a);

struct PrincipalTest {
  bool principal = false;
  std::optional<FieldElement> generator;
};
/// Principality (narrow = totally positive generator required).
PrincipalTest is_principal(const FractionalIdeal& a, bool narrow = false);
/// Bounded search for α ∈ a with |N(α)| = N(a) and every |α^σ| <= bound.
std::optional<FieldElement> find_generator_bounded(const FractionalIdeal& a, double bound);
/// Multiply by a unit power so that the embeddings are balanced; exact.
FieldElement balance_by_units(const FieldElement& g);

enum class ClassKind { Wide, Narrow };

/// Finite abelian presentation of Cl_F or Cl_F^+.
class IdealClassGroup {
 public:
  ClassKind kind() const { return kind_; }
  const std::vector<Integer>& structure() const { return orders_; }
  long order() const { return static_cast<long>(reps_.size()); }
  /// One integral representative per class; index 0 is the trivial class.
  const std::vector<FractionalIdeal>& representatives() const { return reps_; }
  /// SNF coordinates of representative i.
  const std::vector<std::vector<Integer>>& representative_coords() const { return rep_coords_; }
  /// Integral ideals representing the SNF generators.
  const std::vector<FractionalIdeal>& generators() const { return gens_; }

  /// SNF coordinates (reduced into [0, order_i)) of the class of a.
  std::vector<Integer> dlog(const FractionalIdeal& a) const;
  /// Index into representatives() of the class of a.
  int class_index(const FractionalIdeal& a) const;
  bool same_class(const FractionalIdeal& a, const FractionalIdeal& b) const;
  int index_of(const std::vector<Integer>& coords) const;

  const Field& field() const { return F_; }

 private:
  friend IdealClassGroup class_group(const Field& F, ClassKind kind);
  Field F_ = Field::rationals();
  ClassKind kind_ = ClassKind::Wide;
  std::vector<Integer> orders_;
  std::vector<FractionalIdeal> reps_;
  std::vector<std::vector<Integer>> rep_coords_;
  std::vector<FractionalIdeal> gens_;
};

/// Cached per field and kind.
IdealClassGroup class_group(const Field& F, ClassKind kind);

/// x ∈ I ↦ coset of J, via Smith form of the inclusion J ⊆ I.
struct QuotientMap {
  std::vector<Integer> orders;  // invariant factors > 1 kept, 1 dropped
  ZMatrix U;                    // rows act on I-coordinates
  std::vector<int> rows;        // rows of U used (factors > 1)
  QMatrix generators;           // coset generators (columns, over the integral basis)
  long size() const;
  /// Mixed-radix index of the coset of an I-coordinate vector.
  long index(const ZVector& icoords) const;
};
QuotientMap quotient_map(const FractionalIdeal& I, const FractionalIdeal& J);

/// [I : J] elements of I, pairwise incongruent mod J. Requires J ⊆ I.
std::vector<FieldElement> coset_representatives(const FractionalIdeal& I, const FractionalIdeal& J);

/// Some x in L outside every listed proper sublattice; small coefficients
/// over the HNF basis are tried first.
FieldElement element_outside(const FractionalIdeal& L, const std::vector<FractionalIdeal>& avoid);

/// Reduce x modulo the integral ideal m into the canonical residue box.
FieldElement reduce_mod(const FieldElement& x, const FractionalIdeal& m);

}  // namespace hc
