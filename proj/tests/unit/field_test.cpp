#include "doctest.h"

#include "hc/field.hpp"
#include "hc/ideal.hpp"
#include "hc/random_objects.hpp"

using namespace hc;

TEST_CASE("quadratic fields: basis, discriminant, fundamental unit") {
  Field F = Field::quadratic(10);
  CHECK(F.discriminant() == 40);
  auto eps = F.unit_generators().at(0);
  CHECK(eps == FieldElement::parse(F, "3 + w"));
  CHECK(eps.norm() == -1);

  Field K = Field::quadratic(5);
  CHECK(K.discriminant() == 5);
  FieldElement w = FieldElement::basis(K, 1);
  CHECK(w * w == w + FieldElement(K, Rational(1)));
  CHECK(K.unit_generators().at(0) == w);

  for (long D : {2L, 3L, 6L, 7L, 13L, 19L, 46L, 94L}) {
    Field E = Field::quadratic(D);
    auto u = E.unit_generators().at(0);
    CHECK(boost::multiprecision::abs(u.norm()) == 1);
    CHECK(sign_at(u - FieldElement(E, Rational(1)), 0) > 0);
  }
}

TEST_CASE("trace and norm") {
  Field F = Field::quadratic(10);
  auto a = FieldElement::parse(F, "2 + w");
  CHECK(a.trace() == 4);
  CHECK(a.norm() == -6);
  auto s = FieldElement::parse(F, "sqrt(10)");
  CHECK(s.trace() == 0);
  CHECK(s.norm() == -10);
  CHECK(FieldElement(F, Rational(1)).trace() == 2);
}

TEST_CASE("exact signs") {
  Field F = Field::quadratic(10);
  CHECK(signs(FieldElement::parse(F, "2 + w")) == SignVector{1, -1});
  CHECK(sgn_power(FieldElement(F, Rational(-1)), {1, 1}) == 1);
  CHECK(signs(FieldElement(F, Rational(1))) == SignVector{1, 1});
}

TEST_CASE("element parse errors carry positions") {
  Field F = Field::quadratic(10);
  CHECK_THROWS_AS(FieldElement::parse(F, "2 + * w"), ValidationError);
  CHECK_THROWS_AS(FieldElement::parse(F, "3/0"), ValidationError);
}

TEST_CASE("unit subgroup") {
  Field Q = Field::rationals();
  auto U = unit_subgroup(Q, FractionalIdeal::principal(FieldElement(Q, Rational(5))), 4);
  CHECK(U.index == 2);
  CHECK_FALSE(U.contains_minus_one);

  Field F = Field::quadratic(10);
  auto U1 = unit_subgroup(F, F.unit_ideal(), 2);
  CHECK(U1.index == 1);
  CHECK(U1.contains_minus_one);

  auto m = FractionalIdeal::principal(FieldElement(F, Rational(3)));
  auto U3 = unit_subgroup(F, m, 1);
  // Oracle: count cosets of O^x / <-1, eps> by brute-force residues.
  auto eps = F.unit_generators()[0];
  long found = 0;
  for (auto& u : U3.generators) {
    CHECK(u.norm() == 1);
    CHECK(m.contains(u - FieldElement(F, Rational(1))));
    ++found;
  }
  CHECK(found >= 1);
  long order = 1;
  FieldElement x = eps;
  while (!(x.norm() == 1 && m.contains(x - FieldElement(F, Rational(1))))) {
    x *= eps;
    ++order;
  }
  // -1 is never ≡ 1 mod 3, and -eps^j ≡ 1 mod 3 would make eps^j ≡ -1.
  long minus_order = 0;
  FieldElement y = eps;
  for (long j = 1; j <= order; ++j, y *= eps)
    if (y.norm() == 1 && m.contains(y + FieldElement(F, Rational(1)))) {
      minus_order = j;
      break;
    }
  long expected = minus_order ? minus_order * 2 : order * 2;
  CHECK(U3.index == expected);
}
