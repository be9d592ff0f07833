#pragma once

// Seeded generators for the property tests and the verification suites.

#include "hc/cusp.hpp"
#include "hc/ideal.hpp"

#include <random>

namespace hc::testing {

inline FieldElement random_element(const Field& F, std::mt19937_64& rng, long bound, long den = 1) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  QVector c(F.degree());
  for (int i = 0; i < F.degree(); ++i) c(i) = Rational(dist(rng), den);
  return FieldElement(F, c);
}

inline FieldElement random_nonzero(const Field& F, std::mt19937_64& rng, long bound, long den = 1) {
  for (;;) {
    auto a = random_element(F, rng, bound, den);
    if (!a.is_zero()) return a;
  }
}

/// Integral ideal generated by two random integral elements.
inline FractionalIdeal random_integral_ideal(const Field& F, std::mt19937_64& rng, long bound) {
  return FractionalIdeal::generated_by(F, {random_nonzero(F, rng, bound), random_nonzero(F, rng, bound)});
}

/// Random element of the lattice I with coefficients in [-bound, bound].
inline FieldElement random_in(const FractionalIdeal& I, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  FieldElement x(I.field());
  for (auto& e : I.basis_elements()) x += Rational(dist(rng)) * e;
  return x;
}

inline Mat2 upper(const FieldElement& x) {
  const Field& F = x.field();
  return Mat2{FieldElement(F, Rational(1)), x, FieldElement(F), FieldElement(F, Rational(1))};
}
inline Mat2 lower(const FieldElement& y) {
  const Field& F = y.field();
  return Mat2{FieldElement(F, Rational(1)), FieldElement(F), y, FieldElement(F, Rational(1))};
}

/// Product of elementary matrices in Γ(level; O, twist) ∩ SL2, times a
/// diagonal unit matrix.
inline Mat2 random_congruence(const FractionalIdeal& level, const FractionalIdeal& twist, std::mt19937_64& rng,
                              int factors = 4) {
  const Field& F = level.field();
  FractionalIdeal B = (twist * F.different()).inverse();
  FractionalIdeal C = level * twist * F.different();
  Mat2 g = Mat2::identity(F);
  for (int i = 0; i < factors; ++i) g = g * upper(random_in(B, rng, 2)) * lower(random_in(C, rng, 2));
  auto units = F.unit_generators();
  if (!units.empty()) {
    long e = std::uniform_int_distribution<long>(-2, 2)(rng);
    FieldElement u = pow(units.front(), e);
    if (std::uniform_int_distribution<int>(0, 1)(rng)) u = -u;
    g = g * Mat2{u, FieldElement(F), FieldElement(F), u.inverse()};
  }
  return g;
}

/// Product of elementary matrices with entries of bounded height.
inline Mat2 random_sl2(const Field& F, std::mt19937_64& rng) {
  Mat2 g = Mat2::identity(F);
  for (int i = 0; i < 3; ++i)
    g = g * upper(random_element(F, rng, 3, std::uniform_int_distribution<long>(1, 3)(rng))) *
        lower(random_element(F, rng, 3, std::uniform_int_distribution<long>(1, 3)(rng)));
  return g;
}

/// Upper triangular element of SL2(F).
inline Mat2 random_borel(const Field& F, std::mt19937_64& rng) {
  FieldElement t = random_nonzero(F, rng, 4, std::uniform_int_distribution<long>(1, 3)(rng));
  return Mat2{t, random_element(F, rng, 4, 2), FieldElement(F), t.inverse()};
}

}  // namespace hc::testing
