#include "doctest.h"

#include "hc/cusp.hpp"
#include "hc/random_objects.hpp"

#include <set>

using namespace hc;

namespace {
FractionalIdeal I(const Field& F, const std::string& s) { return FractionalIdeal::parse(F, s); }

// |det| of the coordinates of xs over the HNF basis of L; 1 iff a Z-basis.
Rational index_in(const FractionalIdeal& L, const std::vector<FieldElement>& xs) {
  QMatrix X(L.degree(), static_cast<Eigen::Index>(xs.size()));
  for (size_t j = 0; j < xs.size(); ++j) X.col(static_cast<Eigen::Index>(j)) = L.coordinates(xs[j]);
  return boost::multiprecision::abs(determinant(X));
}

void check_positive_basis(const FractionalIdeal& L) {
  auto xs = positive_basis(L);
  REQUIRE(static_cast<int>(xs.size()) == L.degree());
  for (auto& x : xs) {
    CHECK(is_totally_positive(x));
    CHECK(L.contains(x));
  }
  CHECK(index_in(L, xs) == 1);
}

void check_cusp(const CuspRepresentative& c, const FractionalIdeal& t, const FractionalIdeal& b) {
  const Field& F = t.field();
  const Mat2& A = c.matrix;
  CHECK(A.det() == FieldElement(F, Rational(1)));
  CHECK(il_ideal(A, t.inverse()) == c.class_label);
  if (c.at_infinity) return;
  const FractionalIdeal& r0 = c.class_label;
  CHECK(FractionalIdeal::principal(A.a) == c.n2 * r0);
  CHECK((F.different() * t * r0).inverse().contains(A.b));
  CHECK(FractionalIdeal::principal(A.c) == c.n1 * F.different() * t * r0);
  CHECK(r0.inverse().contains(A.d));
  CHECK(c.n1.is_integral());
  CHECK(c.n2.is_integral());
  CHECK(coprime(c.n1, c.n2));
  CHECK(coprime(c.n1, b));
}
}  // namespace

TEST_CASE("group membership") {
  Field F = Field::quadratic(10);
  Mat2 m = Mat2::parse(F, "2+w, 1/2+1/20*w, 2*w, 1");
  GroupSpec full{F.unit_ideal(), F.unit_ideal(), DetConstraint::One};
  CHECK(is_member(m, full));
  CHECK(is_member(Mat2::identity(F), full));
  CHECK(is_member(Mat2::identity(F), GroupSpec{I(F, "[6]"), I(F, "[2, w]"), DetConstraint::Unit}));

  Field Q = Field::rationals();
  CHECK_FALSE(is_member(Mat2::parse(Q, "1,0,1,1"), GroupSpec{I(Q, "[5]"), Q.unit_ideal(), DetConstraint::One}));
  CHECK(is_member(Mat2::parse(Q, "1,0,5,1"), GroupSpec{I(Q, "[5]"), Q.unit_ideal(), DetConstraint::One}));
  CHECK_FALSE(is_member(Mat2::parse(Q, "2,0,0,1"), GroupSpec{Q.unit_ideal(), Q.unit_ideal(), DetConstraint::Unit}));
  CHECK_THROWS_AS(Mat2::parse(Q, "1,2,3"), ValidationError);
}

TEST_CASE("ideal label of a cusp, both conventions") {
  Field F = Field::quadratic(10);
  Mat2 m = Mat2::parse(F, "2+w, 1/2+1/20*w, 2*w, 1");
  CHECK(il_ideal(m, F.unit_ideal()).is_one());
  CHECK(il_class(m, F.unit_ideal()) == 0);
  auto p = I(F, "[2, w]");
  CHECK(il_ideal_with_different(m, F.unit_ideal()) == p);
  CHECK(class_group(F, ClassKind::Wide).class_index(p) != 0);
  CHECK(il_ideal(Mat2::identity(F), F.unit_ideal()).is_one());
}

TEST_CASE("totally positive bases") {
  Field Q = Field::rationals();
  CHECK(positive_basis(Q.unit_ideal()) == std::vector<FieldElement>{FieldElement(Q, Rational(1))});
  check_positive_basis(I(Q, "[-3/7]"));
  for (long D : {10L, 5L, 3L, 79L}) {
    Field F = Field::quadratic(D);
    check_positive_basis(F.unit_ideal());
    check_positive_basis(F.codifferent());
    check_positive_basis(I(F, "[2, w]"));
  }
  std::mt19937_64 rng(7);
  for (int it = 0; it < 40; ++it) {
    Field F = Field::quadratic(it % 2 ? 10 : 5);
    auto L = testing::random_integral_ideal(F, rng, 30) * testing::random_nonzero(F, rng, 5, 3);
    check_positive_basis(L);
  }
}

TEST_CASE("positive generators coprime to a modulus") {
  Field F = Field::quadratic(10);
  auto A = I(F, "[2, w]");
  auto m = I(F, "[2]");
  auto a = positive_generator_coprime(A, m);
  CHECK(is_totally_positive(a));
  CHECK(A.contains(a));
  auto n = FractionalIdeal::principal(a) * A.inverse();
  CHECK(n.is_integral());
  CHECK(coprime(n, m));

  Field Q = Field::rationals();
  auto q = positive_generator_coprime(Q.unit_ideal(), I(Q, "[6]"));
  CHECK(coprime(FractionalIdeal::principal(q), I(Q, "[6]")));

  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    auto B = testing::random_integral_ideal(F, rng, 20);
    auto M = testing::random_integral_ideal(F, rng, 20);
    auto b = positive_generator_coprime(B, M);
    CHECK(is_totally_positive(b));
    auto nb = FractionalIdeal::principal(b) * B.inverse();
    CHECK(nb.is_integral());
    CHECK(coprime(nb, M));
  }
}

TEST_CASE("narrow class twists with b d t integral and coprime") {
  for (long D : {10L, 3L, 5L}) {
    Field F = Field::quadratic(D);
    auto narrow = class_group(F, ClassKind::Narrow);
    for (const char* bs : {"[1]", "[3]", "[2]"}) {
      auto b = I(F, bs);
      auto m = b * I(F, "[6]");
      auto ts = twist_representatives(b, m);
      REQUIRE(static_cast<long>(ts.size()) == narrow.order());
      for (size_t l = 0; l < ts.size(); ++l) {
        auto x = b * F.different() * ts[l];
        CHECK(x.is_integral());
        CHECK(coprime(x, m));
        CHECK(narrow.class_index(ts[l]) == static_cast<int>(l));
      }
    }
  }
  Field Q = Field::rationals();
  auto ts = twist_representatives(I(Q, "[5]"), I(Q, "[5]"));
  REQUIRE(ts.size() == 1);
  CHECK(ts[0] == I(Q, "[1/5]"));
}

TEST_CASE("cusp representatives") {
  struct Case {
    long D;
    long h;
  };
  for (auto [D, h] : {Case{1, 1}, Case{5, 1}, Case{10, 2}, Case{79, 3}, Case{82, 4}}) {
    Field F = D == 1 ? Field::rationals() : Field::quadratic(D);
    for (const char* bs : {"[1]", "[3]", "[4]"}) {
      auto b = I(F, bs);
      auto m = b;
      auto ts = twist_representatives(b, m);
      for (size_t l = 0; l < ts.size(); ++l) {
        auto cusps = enumerate_cusps(ts[l], b, m, static_cast<int>(l));
        REQUIRE(static_cast<long>(cusps.size()) == h);
        CHECK(cusps[0].at_infinity);
        std::set<int> labels;
        for (auto& c : cusps) {
          check_cusp(c, ts[l], b);
          CHECK(coprime(c.class_label, m));
          CHECK(c.class_label.is_integral());
          int lab = il_class(c.matrix, ts[l].inverse());
          CHECK(lab == c.class_index);
          labels.insert(lab);
          CHECK(is_member(c.matrix, GroupSpec{F.unit_ideal(), ts[l], DetConstraint::One}) == c.at_infinity);
        }
        CHECK(static_cast<long>(labels.size()) == h);
      }
    }
  }
}

TEST_CASE("il is invariant under the congruence group and the Borel") {
  std::mt19937_64 rng(2026);
  for (long D : {10L, 5L}) {
    Field F = Field::quadratic(D);
    for (auto& t : twist_representatives(F.unit_ideal(), I(F, "[2]"))) {
      FractionalIdeal c = t.inverse();
      for (int it = 0; it < 25; ++it) {
        Mat2 g = testing::random_congruence(F.unit_ideal(), t, rng, 2);
        REQUIRE(is_member(g, GroupSpec{F.unit_ideal(), t, DetConstraint::One}));
        Mat2 m = testing::random_sl2(F, rng);
        Mat2 b = testing::random_borel(F, rng);
        CHECK(il_class(g * m * b, c) == il_class(m, c));
        // The label ideal itself scales by the Borel's upper-left entry.
        CHECK(il_ideal(m * b, c) == il_ideal(m, c) * b.a);
      }
    }
  }
}
