#include "doctest.h"

#include "hc/eisenstein.hpp"
#include "hc/oracle_q.hpp"
#include "hc/random_objects.hpp"

#include <numeric>

using namespace hc;

namespace {

FractionalIdeal I(const Field& F, const std::string& s) { return FractionalIdeal::parse(F, s); }

std::vector<RayClassCharacter> prim_or_trivial(const Field& F, long n) {
  if (n == 1) return {RayClassCharacter::trivial(F)};
  return primitive_characters(RayClassGroup::build(I(F, "[" + std::to_string(n) + "]")));
}

FieldElement q(const Field& F, Rational x) { return FieldElement(F, x); }

double dist(const Ball& a, const Ball& b) { return abs(a.mid() - b.mid()).to_double(); }

}  // namespace

TEST_CASE("Fourier coefficients") {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  auto E = EisensteinSpec::make(one, one, 4);
  CHECK(coefficient(E, I(Q, "[6]")) == Cyclotomic(252));
  CHECK(coefficient(E, I(Q, "[1]")) == Cyclotomic(1));
  CHECK_THROWS_AS(coefficient(E, I(Q, "[1/2]")), ValidationError);

  // Multiplicative on coprime ideals, over Q(sqrt 10) with a nontrivial psi.
  Field F = Field::quadratic(10);
  auto G = RayClassGroup::build(I(F, "[3]"));
  for (auto& psi : primitive_characters(G)) {
    auto s = psi.signature();
    long k = (s[0] % 2 == 0) ? 2 : 3;
    if (s[0] != s[1]) continue;
    auto Es = EisensteinSpec::make(RayClassCharacter::trivial(F), psi, k);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
      auto a = testing::random_integral_ideal(F, rng, 6);
      auto b = testing::random_integral_ideal(F, rng, 6);
      if (!(a + b).is_one()) continue;
      CHECK(coefficient(Es, a * b) == coefficient(Es, a) * coefficient(Es, b));
    }
  }
}

TEST_CASE("constant terms at infinity over Q") {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  CHECK(*constant_at_infinity(EisensteinSpec::make(one, one, 4)).exact == Cyclotomic(Rational(1, 240)));
  CHECK(*constant_at_infinity(EisensteinSpec::make(one, one, 6)).exact == Cyclotomic(Rational(-1, 504)));
  CHECK(*constant_at_infinity(EisensteinSpec::make(one, one, 2)).exact == Cyclotomic(Rational(-1, 24)));
  CHECK_THROWS_AS(EisensteinSpec::make(one, one, 3), ValidationError);

  auto chi5 = prim_or_trivial(Q, 5);
  for (auto& eta : chi5) {
    for (long k : {3L, 4L}) {
      std::optional<EisensteinSpec> E;
      try {
        E = EisensteinSpec::make(eta, one, k);
      } catch (const ValidationError&) {
        continue;
      }
      auto r = constant_at_infinity(*E);
      CHECK(r.vanishes());
      CHECK(r.vanishing_reason == "delta_eta_id = 0");
      CHECK(r.exact == Cyclotomic());
    }
  }
  // Weight one: 2^{-1} (L(psi, 0) + L(eta, 0)) with one of them trivial.
  auto chi3 = prim_or_trivial(Q, 3).at(0);
  auto E1 = EisensteinSpec::make(one, chi3, 1);
  CHECK(*constant_at_infinity(E1).exact == Cyclotomic(Rational(1, 6)));
}

TEST_CASE("slash constant terms over Q") {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  auto E = EisensteinSpec::make(one, one, 4);
  auto id = constant_under_slash(E, 0, Mat2::identity(Q));
  CHECK(id.formula_path == "upper-triangular");
  CHECK(*id.exact == Cyclotomic(Rational(1, 240)));
  auto S = Mat2{q(Q, 0), q(Q, -1), q(Q, 1), q(Q, 0)};
  auto s = constant_under_slash(E, 0, S);
  CHECK(s.formula_path == "general-slash");
  CHECK(*s.exact == Cyclotomic(Rational(1, 240)));

  // N = 5, eta trivial, t = (1/5): c must lie in (1/5) Z and vanishes unless c in Z.
  for (auto& psi : prim_or_trivial(Q, 5)) {
    if (psi.signature()[0] != 0) continue;
    auto E5 = EisensteinSpec::make(one, psi, 4);
    REQUIRE(E5.twists.size() == 1);
    auto v = constant_under_slash(E5, 0, Mat2{q(Q, 1), q(Q, 0), q(Q, Rational(1, 5)), q(Q, 1)});
    CHECK(v.vanishing_reason == "b ∤ n1");
    auto w = constant_under_slash(E5, 0, Mat2{q(Q, 1), q(Q, 0), q(Q, 1), q(Q, 1)});
    CHECK_FALSE(w.vanishes());
    CHECK(w.exact);
    CHECK_THROWS_AS(constant_under_slash(E5, 0, Mat2{q(Q, 1), q(Q, 0), q(Q, Rational(1, 7)), q(Q, 1)}),
                    ValidationError);
  }
}

TEST_CASE("functional-equation path agrees with the direct L-value path") {
  Field Q = Field::rationals();
  for (long N : {1L, 5L, 8L}) {
    for (long u = 1; u <= N; ++u) {
      if (N % u) continue;
      for (auto& eta : prim_or_trivial(Q, u)) {
        for (auto& psi : prim_or_trivial(Q, N / u)) {
          for (long k : {3L, 4L}) {
            std::optional<EisensteinSpec> E;
            try {
              E = EisensteinSpec::make(eta, psi, k);
            } catch (const ValidationError&) {
              continue;
            }
            for (long c : {1L, 2L, 3L}) {
              auto g = oracle_q::complete_column(1, c * N);
              Mat2 A = oracle_q::hilbert_matrix(g, E->twists[0]);
              auto main = constant_under_slash(*E, 0, A);
              Ball direct = constant_under_slash_direct(*E, 0, A);
              CHECK_MESSAGE(dist(main.value, direct) < 1e-25, "N=" << N << " u=" << u << " k=" << k);
            }
          }
        }
      }
    }
  }
  Field F = Field::quadratic(5);
  auto E = EisensteinSpec::make(RayClassCharacter::trivial(F), RayClassCharacter::trivial(F), 2);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 3; ++i) {
    Mat2 A = testing::random_congruence(F.unit_ideal(), E.twists[0], rng, 2);
    if (A.is_upper_triangular()) continue;
    auto main = constant_under_slash(E, 0, A);
    CHECK(dist(main.value, constant_under_slash_direct(E, 0, A)) < 1e-20);
  }
}

TEST_CASE("slash constant terms match the lattice-sum oracle over Q") {
  Field Q = Field::rationals();
  for (long N : {5L, 12L}) {
    for (long u = 1; u <= N; ++u) {
      if (N % u) continue;
      for (auto& eta : prim_or_trivial(Q, u)) {
        for (auto& psi : prim_or_trivial(Q, N / u)) {
          long k = (eta.signature()[0] + psi.signature()[0]) % 2 ? 3 : 4;
          auto E = EisensteinSpec::make(eta, psi, k);
          auto te = oracle_q::DirichletTable::from(eta), tp = oracle_q::DirichletTable::from(psi);
          for (long c : {1L, 2L, 3L, 4L}) {
            auto g = oracle_q::complete_column(1, c);
            auto h = constant_under_slash(E, 0, oracle_q::hilbert_matrix(g, E.twists[0]));
            auto o = oracle_q::slash_and_extract(te, tp, k, g, {});
            CHECK_MESSAGE(dist(h.value, o.value) < 1e-20, "N=" << N << " u=" << u << " c=" << c);
          }
        }
      }
    }
  }
}

TEST_CASE("slash constant terms transform by the nebentypus") {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  std::mt19937_64 rng(2024);
  for (auto& psi : prim_or_trivial(Q, 5)) {
    if (psi.signature()[0] != 0) continue;
    auto E = EisensteinSpec::make(one, psi, 4);
    Mat2 A = oracle_q::hilbert_matrix(oracle_q::complete_column(2, 5), E.twists[0]);
    auto base = constant_under_slash(E, 0, A);
    REQUIRE(base.exact);
    for (int i = 0; i < 40; ++i) {
      Mat2 g = testing::random_congruence(E.level, E.twists[0], rng, 3);
      auto moved = constant_under_slash(E, 0, g * A);
      REQUIRE(moved.exact);
      CHECK(*moved.exact == (E.eta * E.psi).finite_part(g.d) * *base.exact);
    }
  }
}

TEST_CASE("constant term tables") {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  CHECK(constant_term_table(EisensteinSpec::make(one, one, 4)).size() == 1);

  Field F = Field::quadratic(10);
  auto t1 = RayClassCharacter::trivial(F);
  auto E = EisensteinSpec::make(t1, t1, 2);
  auto table = constant_term_table(E);
  REQUIRE(table.size() == 4);
  // zeta_{Q(sqrt 10)}(-1) = 7/6
  CHECK(*table[0].exact == Cyclotomic(Rational(7, 24)));
  for (auto& r : table) {
    CHECK(r.matrix);
    CHECK(r.exact);
    CHECK(r.warnings.empty());
  }
  CHECK_FALSE(table[1].vanishes());
  CHECK(table[1].formula_path == "class-cusp");
}
