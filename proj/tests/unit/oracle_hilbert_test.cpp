#include "doctest.h"

#include "hc/oracle_hilbert.hpp"
#include "hc/oracle_q.hpp"
#include "hc/random_objects.hpp"

using namespace hc;
using namespace hc::oracle_hilbert;

namespace {

FractionalIdeal I(const Field& F, const std::string& s) { return FractionalIdeal::parse(F, s); }

cplx mid(const Ball& b) { return {b.mid().re.to_double(), b.mid().im.to_double()}; }

std::vector<RayClassCharacter> prim(const Field& F, long n) {
  return primitive_characters(RayClassGroup::build(I(F, "[" + std::to_string(n) + "]")));
}

}  // namespace

TEST_CASE("U-reduction picks one representative per orbit") {
  Field F = Field::quadratic(5);
  std::mt19937_64 rng(7);
  for (long k : {2L, 3L}) {
    UnitSubgroup U = unit_subgroup(F, I(F, "[3]"), k);
    FieldElement u = U.generators.front();
    for (int i = 0; i < 100; ++i) {
      FieldElement a = i % 5 == 0 ? FieldElement(F) : testing::random_element(F, rng, 30);
      FieldElement b = testing::random_nonzero(F, rng, 30);
      auto [ra, rb] = u_reduce(a, b, U);
      CHECK(is_u_reduced(ra, rb, U));
      long e = std::uniform_int_distribution<long>(-3, 3)(rng);
      FieldElement f = pow(u, e);
      if (U.contains_minus_one && (i & 1)) f = -f;
      auto moved = u_reduce(a * f, b * f, U);
      CHECK(moved.first == ra);
      CHECK(moved.second == rb);
    }
  }
  Field Q = Field::rationals();
  UnitSubgroup U = unit_subgroup(Q, Q.unit_ideal(), 4);
  auto r = u_reduce(FieldElement(Q, Rational(-3)), FieldElement(Q, Rational(2)), U);
  CHECK(r.first == FieldElement(Q, Rational(3)));
  CHECK_THROWS_AS(u_reduce(FieldElement(Q), FieldElement(Q), U), ValidationError);
}

TEST_CASE("constant at infinity over Q(sqrt 5)") {
  Field F = Field::quadratic(5);
  auto one = RayClassCharacter::trivial(F);
  auto E = EisensteinSpec::make(one, one, 4);
  SeriesEvalSpec s{E, 0, {}, std::nullopt, 40};
  auto r = extract_constant(s, {10, 11}, 2);
  cplx want = mid(constant_at_infinity(E).value);
  CHECK(std::abs(r.value - want) < 1e-4);
  CHECK(r.spread < 1e-4);
}

TEST_CASE("degenerate field agrees with the lattice-sum oracle") {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  auto tone = oracle_q::DirichletTable::from(one);
  for (auto& psi : prim(Q, 5)) {
    long k = psi.signature()[0] % 2 ? 3 : 4;
    auto E = EisensteinSpec::make(one, psi, k);
    auto tp = oracle_q::DirichletTable::from(psi);
    for (long c : {0L, 1L, 5L}) {
      auto g = c == 0 ? oracle_q::Sl2{1, 0, 0, 1} : oracle_q::complete_column(1, c);
      SeriesEvalSpec s{E, 0, {}, oracle_q::hilbert_matrix(g, E.twists[0]), 200};
      // The period lattice of E | A can be a multiple of the cusp width.
      auto r = extract_constant(s, {3, 4}, 40);
      cplx want = mid(oracle_q::slash_and_extract(tone, tp, k, g, {}).value);
      CHECK_MESSAGE(std::abs(r.value - want) < 2e-3, "k=" << k << " c=" << c);
    }
  }
}

TEST_CASE("nontrivial cusps of Q(sqrt 10) match the closed form") {
  Field F = Field::quadratic(10);
  auto one = RayClassCharacter::trivial(F);
  auto E = EisensteinSpec::make(one, one, 4);
  for (int l = 0; l < static_cast<int>(E.twists.size()); ++l) {
    for (auto& c : enumerate_cusps(E.twists[static_cast<size_t>(l)], E.psi.modulus(), E.level, l)) {
      SeriesEvalSpec s{E, l, {}, c.matrix, 8};
      auto r = extract_constant(s, {3, 4}, 2);
      cplx want = c.at_infinity ? mid(constant_at_infinity(E).value) : mid(constant_at_cusp(E, l, c.class_label).value);
      CHECK_MESSAGE(std::abs(r.value - want) < 1e-3, "lambda=" << l << " cusp " << c.class_label.str());
    }
  }
}

TEST_CASE("identity slash reproduces the unslashed sum") {
  Field F = Field::quadratic(5);
  auto one = RayClassCharacter::trivial(F);
  auto E = EisensteinSpec::make(one, one, 4);
  std::vector<cplx> z{{0.1, 0.9}, {-0.3, 1.2}};
  auto plain = evaluate_series({E, 0, z, std::nullopt, 12});
  auto slashed = evaluate_series({E, 0, z, Mat2::identity(F), 12});
  CHECK(plain.terms > 0);
  CHECK(std::abs(plain.value - slashed.value) < 1e-10 * std::abs(plain.value));
}

TEST_CASE("truncation error shrinks with the box") {
  Field F = Field::quadratic(5);
  auto one = RayClassCharacter::trivial(F);
  auto E = EisensteinSpec::make(one, one, 4);
  std::vector<cplx> z{{0.2, 1.0}, {0.4, 0.8}};
  auto a = evaluate_series({E, 0, z, std::nullopt, 10});
  auto b = evaluate_series({E, 0, z, std::nullopt, 20});
  auto c = evaluate_series({E, 0, z, std::nullopt, 40});
  CHECK(std::abs(c.value - b.value) < std::abs(b.value - a.value));
  CHECK(std::abs(b.value - a.value) <= a.tail);
  CHECK(c.tail < b.tail);
}

TEST_CASE("constants move by the nebentypus under the congruence subgroup") {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  std::mt19937_64 rng(31);
  for (auto& psi : prim(Q, 5)) {
    if (psi.signature()[0] != 0) continue;
    auto E = EisensteinSpec::make(one, psi, 4);
    Mat2 A = oracle_q::hilbert_matrix(oracle_q::complete_column(2, 5), E.twists[0]);
    auto base = extract_constant({E, 0, {}, A, 200}, {3}, 40);
    for (int i = 0; i < 3; ++i) {
      Mat2 g = testing::random_congruence(E.level, E.twists[0], rng, 2);
      auto moved = extract_constant({E, 0, {}, g * A, 200}, {3}, 40);
      cplx chi = mid(E.psi.finite_part(g.d).to_ball(64));
      CHECK(std::abs(moved.value - chi * base.value) < 2e-3);
    }
  }
}

TEST_CASE("oracle input validation") {
  Field F = Field::quadratic(5);
  auto one = RayClassCharacter::trivial(F);
  auto E2 = EisensteinSpec::make(one, one, 2);
  CHECK_THROWS_AS(evaluate_series({E2, 0, {{0, 1}, {0, 1}}, std::nullopt, 5}), ValidationError);
  auto E4 = EisensteinSpec::make(one, one, 4);
  CHECK_THROWS_AS(evaluate_series({E4, 3, {{0, 1}, {0, 1}}, std::nullopt, 5}), ValidationError);
  CHECK_THROWS_AS(evaluate_series({E4, 0, {{0, 1}}, std::nullopt, 5}), ValidationError);
  CHECK_THROWS_AS(evaluate_series({E4, 0, {{0, 1}, {0, -1}}, std::nullopt, 5}), ValidationError);
}
