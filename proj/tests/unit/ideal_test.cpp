#include "doctest.h"

#include "hc/ideal.hpp"
#include "hc/random_objects.hpp"

using namespace hc;

namespace {
FractionalIdeal I(const Field& F, const std::string& s) { return FractionalIdeal::parse(F, s); }
FieldElement E(const Field& F, const std::string& s) { return FieldElement::parse(F, s); }
}  // namespace

TEST_CASE("Q(sqrt 10) ideal identities") {
  Field F = Field::quadratic(10);
  auto p = I(F, "[2, w]");
  CHECK(p * p == I(F, "[2]"));
  CHECK(p * F.unit_ideal() == p);
  CHECK(F.different() == I(F, "[2*w]"));
  CHECK(F.different().norm() == 40);
  auto lhs = E(F, "2*w") * F.different().inverse() + FractionalIdeal::principal(E(F, "2 + w"));
  CHECK(lhs.is_one());

  auto fd = factor(F.different());
  REQUIRE(fd.size() == 2);
  CHECK(fd[0].first.ideal == p);
  CHECK(fd[0].second == 3);
  CHECK(fd[1].first.ideal == I(F, "[5, w]"));
  CHECK(fd[1].second == 1);

  auto f2 = factor(FractionalIdeal::principal(E(F, "2 + w")));
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].first.ideal == p);
  CHECK(f2[1].first.ideal == I(F, "[3, w - 1]"));
  CHECK(factor(F.unit_ideal()).empty());
}

TEST_CASE("principality") {
  Field F = Field::quadratic(10);
  CHECK_FALSE(is_principal(I(F, "[2, w]")).principal);
  auto t = is_principal(I(F, "[2]"), true);
  CHECK(t.principal);
  REQUIRE(t.generator);
  CHECK(FractionalIdeal::principal(*t.generator) == I(F, "[2]"));
  auto a = E(F, "7 + 3*w");
  auto g = is_principal(FractionalIdeal::principal(a));
  REQUIRE(g.principal);
  CHECK(FractionalIdeal::principal(*g.generator) == FractionalIdeal::principal(a));
}

TEST_CASE("class groups") {
  CHECK(class_group(Field::quadratic(10), ClassKind::Wide).order() == 2);
  CHECK(class_group(Field::quadratic(10), ClassKind::Narrow).order() == 2);
  CHECK(class_group(Field::quadratic(5), ClassKind::Wide).order() == 1);
  CHECK(class_group(Field::quadratic(5), ClassKind::Narrow).order() == 1);
  CHECK(class_group(Field::quadratic(3), ClassKind::Wide).order() == 1);
  CHECK(class_group(Field::quadratic(3), ClassKind::Narrow).order() == 2);
  CHECK(class_group(Field::quadratic(79), ClassKind::Wide).order() == 3);
  CHECK(class_group(Field::quadratic(79), ClassKind::Narrow).order() == 6);
  CHECK(class_group(Field::quadratic(82), ClassKind::Wide).order() == 4);
  auto G = class_group(Field::quadratic(10), ClassKind::Wide);
  for (int i = 0; i < G.order(); ++i) {
    CHECK(G.representatives()[i].is_integral());
    CHECK(G.class_index(G.representatives()[i]) == i);
  }
  CHECK(G.representatives()[0].is_one());
}

TEST_CASE("coset representatives") {
  Field Q = Field::rationals();
  auto reps = coset_representatives(I(Q, "[1/5]"), Q.unit_ideal());
  CHECK(reps.size() == 5);
  Field F = Field::quadratic(10);
  CHECK(coset_representatives(F.codifferent(), F.unit_ideal()).size() == 40);
  CHECK(coset_representatives(F.unit_ideal(), F.unit_ideal()).size() == 1);
}

TEST_CASE("ideal laws on seeded random instances") {
  std::mt19937_64 rng(12345);
  for (long D : {5L, 10L, 79L}) {
    Field F = Field::quadratic(D);
    auto G = class_group(F, ClassKind::Wide);
    for (int t = 0; t < 40; ++t) {
      auto a = testing::random_integral_ideal(F, rng, 30);
      auto b = testing::random_integral_ideal(F, rng, 30);
      CHECK(a.is_module());
      CHECK((a * b).norm() == a.norm() * b.norm());
      CHECK((a * a.inverse()).is_one());
      CHECK((a + b) * a.intersect(b) == a * b);
      CHECK(product(F, factor(a)) == a);
      auto ga = G.dlog(a), gb = G.dlog(b), gab = G.dlog(a * b);
      for (size_t i = 0; i < ga.size(); ++i)
        CHECK(gab[i] == mod(ga[i] + gb[i], G.structure()[i]));
    }
  }
}
