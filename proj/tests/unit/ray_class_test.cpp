#include "doctest.h"

#include "hc/ray_class.hpp"
#include "hc/random_objects.hpp"

#include <set>

using namespace hc;

namespace {
FractionalIdeal I(const Field& F, const std::string& s) { return FractionalIdeal::parse(F, s); }
FieldElement E(const Field& F, const std::string& s) { return FieldElement::parse(F, s); }

ClassCoords add(const RayClassGroup& G, const ClassCoords& a, const ClassCoords& b) {
  ClassCoords c(a.size());
  for (size_t k = 0; k < a.size(); ++k) c[k] = mod(a[k] + b[k], G.structure()[k]);
  return c;
}

// #Cl(b) = h * phi(b) * 2^d / #(image of units in (O/b)^x x {±1}^d), with the
// unit image enumerated directly.
long order_oracle(const FractionalIdeal& b) {
  const Field& F = b.field();
  Rational phi = 1;
  for (auto& [P, e] : factor(b)) phi *= Rational(P.norm() - 1) * pow(Rational(P.norm()), e - 1);
  std::set<std::pair<std::string, SignVector>> image;
  FieldElement eps = F.degree() == 1 ? FieldElement(F, Rational(1)) : F.unit_generators()[0];
  FieldElement u(F, Rational(1));
  for (int j = 0; j < 4 * to_long(num(b.norm())) + 4; ++j) {
    for (int s : {1, -1}) {
      FieldElement v = Rational(s) * u;
      image.insert({reduce_mod(v, b).str(), signs(v)});
    }
    u = u * eps;
  }
  long h = class_group(F, ClassKind::Wide).order();
  Rational n = Rational(h) * phi * Rational(1L << F.degree()) / Rational(static_cast<long>(image.size()));
  return to_long(num(n));
}
}  // namespace

TEST_CASE("ray class groups over Q") {
  Field Q = Field::rationals();
  auto G5 = RayClassGroup::build(I(Q, "[5]"));
  REQUIRE(G5.structure().size() == 1);
  CHECK(G5.structure()[0] == 4);
  CHECK(RayClassGroup::build(Q.unit_ideal()).order() == 1);
  CHECK(RayClassGroup::build(I(Q, "[4]")).order() == 2);
  CHECK(RayClassGroup::build(I(Q, "[12]")).order() == 4);
  CHECK(RayClassGroup::build(I(Q, "[7]")).order() == 6);
}

TEST_CASE("modulus O gives the narrow class group") {
  for (long D : {3L, 5L, 10L, 79L}) {
    Field F = Field::quadratic(D);
    auto G = RayClassGroup::build(F.unit_ideal());
    CHECK(G.structure() == class_group(F, ClassKind::Narrow).structure());
  }
}

TEST_CASE("ray class orders against the unit-image count") {
  for (long D : {5L, 10L, 3L}) {
    Field F = Field::quadratic(D);
    for (const char* m : {"[3]", "[2]", "[4]", "[w]", "[5]", "[6]"}) {
      auto b = I(F, m);
      CHECK_MESSAGE(RayClassGroup::build(b).order() == order_oracle(b), "D=" << D << " b=" << m);
    }
  }
}

TEST_CASE("dlog is a homomorphism and representatives round-trip") {
  std::mt19937_64 rng(20261017);
  for (long D : {5L, 10L}) {
    Field F = Field::quadratic(D);
    for (const char* m : {"[3]", "[4, 2*w]", "[6]"}) {
      auto G = RayClassGroup::build(I(F, m));
      for (auto& c : G.elements()) {
        auto r = G.representative(c);
        CHECK(r.is_integral());
        CHECK(G.dlog(r) == c);
      }
      for (int it = 0; it < 20; ++it) {
        auto a = testing::random_integral_ideal(F, rng, 12);
        auto b = testing::random_integral_ideal(F, rng, 12);
        if (!G.coprime_to_modulus(a) || !G.coprime_to_modulus(b)) continue;
        CHECK(G.dlog(a * b) == add(G, *G.dlog(a), *G.dlog(b)));
        auto ab = add(G, *G.dlog(a), *G.dlog(b.inverse()));
        CHECK(G.dlog(a * b.inverse()) == ab);
      }
      // a ≡ 1 mod b and totally positive lies in the trivial class.
      for (int it = 0; it < 10; ++it) {
        FieldElement a = FieldElement(F, Rational(1));
        for (auto& e : G.modulus().basis_elements()) a += Rational(std::uniform_int_distribution<long>(-3, 3)(rng)) * e;
        if (a.is_zero() || !is_totally_positive(a)) continue;
        auto c = G.dlog(a);
        REQUIRE(c.has_value());
        for (auto& v : *c) CHECK(v == 0);
      }
    }
  }
}

TEST_CASE("sign classes agree with an explicit element of the shifted lattice") {
  for (long D : {5L, 10L, 3L}) {
    Field F = Field::quadratic(D);
    for (const char* m : {"[1]", "[3]", "[4]"}) {
      auto G = RayClassGroup::build(I(F, m));
      for (int s = 0; s < 2; ++s) {
        SignVector want{1, 1};
        want[s] = -1;
        auto a = G.lift_with_signs(FieldElement(F, Rational(1)), want);
        CHECK(signs(a) == want);
        CHECK(G.modulus().contains(a - FieldElement(F, Rational(1))));
        CHECK(G.dlog(a) == G.sign_class(s));
      }
    }
  }
}

TEST_CASE("Dirichlet characters as ray class characters") {
  Field Q = Field::rationals();
  auto G5 = RayClassGroup::build(I(Q, "[5]"));
  RayClassCharacter chi(G5, {Rational(1, 2)});
  CHECK(chi(I(Q, "[2]")) == Cyclotomic(-1));
  CHECK(chi(I(Q, "[4]")) == Cyclotomic(1));
  CHECK(chi(I(Q, "[5]")) == Cyclotomic(0));
  CHECK(chi.signature() == SignVector{0});
  CHECK(chi.is_primitive());
  CHECK(chi.order() == 2);
  // tau = sqrt(5)
  auto tau = gauss_sum(chi);
  CHECK(tau * tau == Cyclotomic(5));

  auto G4 = RayClassGroup::build(I(Q, "[4]"));
  RayClassCharacter chi4(G4, {Rational(1, 2)});
  CHECK(chi4.signature() == SignVector{1});
  CHECK(chi4.finite_part(E(Q, "3")) == Cyclotomic(-1));
  CHECK(chi4.finite_part(E(Q, "-1")) == Cyclotomic(-1));
  CHECK(chi4.finite_part(E(Q, "5")) == Cyclotomic(1));
  CHECK(chi4(I(Q, "[3]")) == Cyclotomic(-1));
  auto t4 = gauss_sum(chi4);
  CHECK(t4 * t4 == Cyclotomic(-4));

  auto chi25 = chi.lift(I(Q, "[25]"));
  CHECK(chi25.modulus() == I(Q, "[25]"));
  CHECK(chi25.conductor() == I(Q, "[5]"));
  CHECK_FALSE(chi25.is_primitive());
  CHECK(chi25.primitive().same_function(chi));
  CHECK(chi25(I(Q, "[2]")) == Cyclotomic(-1));

  auto prod = chi * chi4;
  CHECK(prod.modulus() == I(Q, "[20]"));
  CHECK(prod.conductor() == I(Q, "[20]"));
  CHECK(prod(I(Q, "[3]")) == Cyclotomic(1));
}

TEST_CASE("character orthogonality and Gauss sum norms") {
  for (long D : {5L, 10L}) {
    Field F = Field::quadratic(D);
    for (const char* m : {"[1]", "[3]", "[4]", "[w]"}) {
      auto G = RayClassGroup::build(I(F, m));
      auto chars = characters(G);
      CHECK(static_cast<long>(chars.size()) == G.order());
      auto elems = G.elements();
      for (auto& chi : chars) {
        Cyclotomic s;
        for (auto& c : elems) s += chi.at_class(c);
        CHECK(s == Cyclotomic(chi.is_trivial() ? G.order() : 0));
        auto p = chi.primitive();
        auto tau = gauss_sum(p);
        CHECK((tau * tau.conj()).rational_value() == p.modulus().norm());
        CHECK((chi * chi.inverse()).is_trivial());
      }
    }
  }
}
