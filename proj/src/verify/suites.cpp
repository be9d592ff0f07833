#include "hc/verify.hpp"

#include "hc/eisenstein.hpp"
#include "hc/oracle_hilbert.hpp"
#include "hc/oracle_q.hpp"
#include "hc/random_objects.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hc::verify {

namespace {

constexpr size_t kMaxFailures = 20;

class Checker {
 public:
  explicit Checker(SuiteResult& r) : r_(r) {}
  bool operator()(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return true;
    ++r_.failed_checks;
    if (r_.failures.size() < kMaxFailures) r_.failures.push_back(what());
    return false;
  }
  // Exceptions inside one instance count as a failed check, not a crash.
  void guard(const std::string& where, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      (*this)(false, [&] { return where + ": " + e.what(); });
    }
  }
  void fact(const std::string& k, const std::string& v) { r_.facts.emplace_back(k, v); }

 private:
  SuiteResult& r_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

FractionalIdeal ideal(const Field& F, const std::string& s) { return FractionalIdeal::parse(F, s); }

std::vector<RayClassCharacter> prim_or_trivial(const Field& F, long n) {
  if (n == 1) return {RayClassCharacter::trivial(F)};
  return primitive_characters(RayClassGroup::build(ideal(F, "[" + std::to_string(n) + "]")));
}

double dist(const Ball& a, const Ball& b) { return abs(a.mid() - b.mid()).to_double(); }

// Exact Bernoulli values at infinity over Q.
void q_exact(Checker& check, std::uint64_t) {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  for (auto [k, want] : {std::pair{4L, Rational(1, 240)}, std::pair{6L, Rational(-1, 504)}}) {
    auto r = constant_at_infinity(EisensteinSpec::make(one, one, k));
    check(r.exact && *r.exact == Cyclotomic(want), [&] { return "k=" + std::to_string(k) + ": " + r.value.str(); });
    if (r.exact) check.fact("k=" + std::to_string(k), r.exact->str());
  }
}

// The Q(sqrt 10) facts about the ideal label map.
void q10_ledger(Checker& check, std::uint64_t) {
  Field F = Field::quadratic(10);
  auto p = ideal(F, "[2, w]");
  auto five = ideal(F, "[5, w]");
  auto w = FieldElement::parse(F, "w");
  auto two_plus = FieldElement::parse(F, "2 + w");
  const FractionalIdeal& dif = F.different();

  check(F.discriminant() == 40, [&] { return "d_F = " + F.discriminant().str(); });
  check(dif == FractionalIdeal::principal(Rational(2) * w), [&] { return "different = " + dif.str(); });
  auto fd = factor(dif);
  bool fd_ok = fd.size() == 2 && fd[0].first.ideal == p && fd[0].second == 3 && fd[1].first.ideal == five &&
               fd[1].second == 1;
  check(fd_ok, [] { return "factor(different) != (5, w)(2, w)^3"; });
  check(FractionalIdeal::principal(two_plus) == ideal(F, "[3, w - 1]") * p,
        [] { return "(2 + w) != (3, w - 1)(2, w)"; });
  check((Rational(2) * w * dif.inverse() + FractionalIdeal::principal(two_plus)).is_one(),
        [] { return "2w d^{-1} + (2 + w) != O"; });
  check(!is_principal(p).principal, [] { return "(2, w) reported principal"; });
  check(class_group(F, ClassKind::Wide).order() == 2, [] { return "h != 2"; });

  Mat2 m = Mat2::parse(F, "2 + w, 1/2 + 1/20*w, 2*w, 1");
  check(is_member(m, GroupSpec{F.unit_ideal(), F.unit_ideal(), DetConstraint::One}),
        [] { return "displayed matrix not in Γ(O; O, O)"; });
  check(il_ideal(m, F.unit_ideal()).is_one(), [] { return "il with d^{-1} is not O"; });
  check(il_class(m, F.unit_ideal()) == 0, [] { return "il class with d^{-1} nontrivial"; });
  auto with_d = il_ideal_with_different(m, F.unit_ideal());
  check(with_d == p, [&] { return "il with d = " + with_d.str(); });
  check(class_group(F, ClassKind::Wide).class_index(with_d) != 0, [] { return "il with d is principal"; });
  check.fact("il_d_inverse", il_ideal(m, F.unit_ideal()).str());
  check.fact("il_d", with_d.str());
}

// The cusp-covering set: [[a, *], [c, *]] for c | N and 1 <= a <= 4 coprime
// to c (a ranges over (Z/gcd(c, N/c))^x for N <= 12), plus S.
std::vector<oracle_q::Sl2> covering_set(long N) {
  std::vector<oracle_q::Sl2> out{{0, -1, 1, 0}};
  for (long c = 1; c <= N; ++c) {
    if (N % c) continue;
    for (long a = 1; a <= 4; ++a)
      if (std::gcd(a, c) == 1) out.push_back(oracle_q::complete_column(a, c));
  }
  return out;
}

// Closed form against the lattice-sum oracle over Q.
void q_oracle(Checker& check, std::uint64_t) {
  Field Q = Field::rationals();
  double worst = 0;
  long pairs = 0, evaluations = 0;
  for (long N : {1L, 5L, 8L, 12L}) {
    auto gammas = covering_set(N);
    for (long u = 1; u <= N; ++u) {
      if (N % u) continue;
      for (auto& eta : prim_or_trivial(Q, u)) {
        for (auto& psi : prim_or_trivial(Q, N / u)) {
          auto te = oracle_q::DirichletTable::from(eta), tp = oracle_q::DirichletTable::from(psi);
          for (long k : {3L, 4L}) {
            std::optional<EisensteinSpec> E;
            try {
              E = EisensteinSpec::make(eta, psi, k);
            } catch (const ValidationError&) {
              continue;  // parity
            }
            ++pairs;
            for (auto& g : gammas) {
              ++evaluations;
              check.guard("N=" + std::to_string(N), [&] {
                auto h = constant_under_slash(*E, 0, oracle_q::hilbert_matrix(g, E->twists[0]));
                auto o = oracle_q::slash_and_extract(te, tp, k, g, {});
                double d = dist(h.value, o.value);
                worst = std::max(worst, d);
                check(d < 1e-6, [&] {
                  return "N=" + std::to_string(N) + " u=" + std::to_string(u) + " k=" + std::to_string(k) +
                         " gamma=(" + std::to_string(g.a) + "," + std::to_string(g.b) + "," + std::to_string(g.c) +
                         "," + std::to_string(g.d) + ") delta=" + fmt(d);
                });
              });
            }
          }
        }
      }
    }
  }
  check.fact("pairs", std::to_string(pairs));
  check.fact("evaluations", std::to_string(evaluations));
  check.fact("max_delta", fmt(worst));
}

// Truncated Hilbert series against the closed form, Q(sqrt 5).
void quadratic_oracle(Checker& check, std::uint64_t) {
  using namespace oracle_hilbert;
  Field F = Field::quadratic(5);
  auto one = RayClassCharacter::trivial(F);
  auto E = EisensteinSpec::make(one, one, 4);
  auto table = constant_term_table(E);
  check(table.size() == 1, [] { return "Q(sqrt 5) has more than one cusp class"; });
  for (auto& entry : table) {
    std::optional<Mat2> A;
    if (entry.matrix && !(*entry.matrix == Mat2::identity(F))) A = entry.matrix;
    auto r = extract_constant({E, entry.lambda, {}, A, 40}, {10, 11}, 2);
    cplx want{entry.value.mid().re.to_double(), entry.value.mid().im.to_double()};
    double d = std::abs(r.value - want);
    check(d < 1e-3, [&] { return "oracle - formula = " + fmt(d); });
    check.fact("formula", entry.exact ? entry.exact->str() : entry.value.str(12));
    check.fact("oracle", fmt(r.value.real()) + " + " + fmt(r.value.imag()) + "i");
    check.fact("delta", fmt(d));
    check.fact("spread", fmt(r.spread));

    // Truncation monotonicity at the extraction height.
    std::vector<cplx> z{{0, 10}, {0, 10}};
    auto b1 = evaluate_series({E, entry.lambda, z, A, 40});
    auto b2 = evaluate_series({E, entry.lambda, z, A, 80});
    double step = std::abs(b1.value - b2.value);
    check(step <= b1.tail, [&] { return "|v(B) - v(2B)| = " + fmt(step) + " > tail " + fmt(b1.tail); });
    check.fact("box_step", fmt(step));
    check.fact("tail_bound", fmt(b1.tail));
  }
}

// zeta_{Q(sqrt 5)}(-1) through the functional equation.
void l_reconstruction(Checker& check, std::uint64_t) {
  Field F = Field::quadratic(5);
  auto v = l_special_value(RayClassCharacter::trivial(F), 2, {.prec = 128, .gate_extra_bits = 64});
  check(v.method == LMethod::FunctionalEquation, [&] { return "method " + to_string(v.method); });
  check(v.exact && *v.exact == Cyclotomic(Rational(1, 30)),
        [&] { return "reconstructed " + (v.exact ? v.exact->str() : std::string("nothing")); });
  check(v.value.contains(Rational(1, 30)), [&] { return "ball " + v.value.str() + " misses 1/30"; });
  check.fact("value", v.value.str(30));
  if (v.exact) check.fact("exact", v.exact->str());
}

// |tau(psi)|^2 = N(cond psi) for every primitive character.
void gauss_modulus(Checker& check, std::uint64_t) {
  long characters_checked = 0;
  double worst = 0;
  for (auto [F, X] : {std::pair{Field::rationals(), 50L}, std::pair{Field::quadratic(10), 30L}}) {
    for (auto& [b, n] : ideals_by_norm(F, X)) {
      for (auto& psi : primitive_characters(RayClassGroup::build(b))) {
        ++characters_checked;
        Cyclotomic tau = gauss_sum(psi);
        Cyclotomic sq = tau * tau.conj();
        Ball ball = tau.to_ball(128);
        Ball diff = ball * conj(ball) - Ball::exact(b.norm(), 128);
        worst = std::max(worst, diff.abs_upper());
        check(sq.is_rational() && sq.rational_value() == b.norm(), [&] { return "exact |tau|^2 at " + b.str(); });
        check(diff.abs_upper() < 1e-20, [&] { return "certified |tau|^2 - N at " + b.str() + ": " + fmt(diff.abs_upper()); });
      }
    }
  }
  check.fact("characters", std::to_string(characters_checked));
  check.fact("max_radius", fmt(worst));
}

// h(F) inequivalent cusp classes and il invariance.
void cusp_classes(Checker& check, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct Case {
    Field F;
    long h;
    std::string name;
  };
  for (auto& [F, h, name] : {Case{Field::rationals(), 1, "Q"}, Case{Field::quadratic(5), 1, "Q(sqrt 5)"},
                             Case{Field::quadratic(10), 2, "Q(sqrt 10)"}}) {
    for (const char* bs : {"[1]", "[3]"}) {
      auto b = ideal(F, bs);
      auto ts = twist_representatives(b, b);
      for (size_t l = 0; l < ts.size(); ++l) {
        auto cusps = enumerate_cusps(ts[l], b, b, static_cast<int>(l));
        std::set<int> labels;
        for (auto& c : cusps) labels.insert(il_class(c.matrix, ts[l].inverse()));
        check(static_cast<long>(cusps.size()) == h && static_cast<long>(labels.size()) == h,
              [&] { return name + " b=" + bs + ": " + std::to_string(cusps.size()) + " cusps"; });
      }
    }
    // (g, m, b): g in the congruence group of a twist, m in SL2(F), b Borel.
    auto level = ideal(F, "[2]");
    auto ts = twist_representatives(F.unit_ideal(), level);
    for (int it = 0; it < 500; ++it) {
      const FractionalIdeal& t = ts[static_cast<size_t>(it) % ts.size()];
      check.guard(name, [&] {
        Mat2 g = testing::random_congruence(F.unit_ideal(), t, rng, 2);
        Mat2 m = testing::random_sl2(F, rng);
        Mat2 bo = testing::random_borel(F, rng);
        check(is_member(g, GroupSpec{F.unit_ideal(), t, DetConstraint::One}), [&] { return name + ": g not in Γ"; });
        check(il_class(g * m * bo, t.inverse()) == il_class(m, t.inverse()),
              [&] { return name + ": il(g m b) != il(m) for m = " + m.str(); });
      });
    }
    check.fact(name, std::to_string(h) + " classes");
  }
}

// Constants move by the nebentypus under Γ_λ¹(m), exactly.
void equivariance(Checker& check, std::uint64_t seed) {
  Field Q = Field::rationals();
  auto one = RayClassCharacter::trivial(Q);
  std::mt19937_64 rng(seed);
  std::vector<EisensteinSpec> specs;
  for (auto& chi : prim_or_trivial(Q, 5)) {
    if (chi.signature()[0] != 0) continue;  // k = 4 needs even characters
    specs.push_back(EisensteinSpec::make(one, chi, 4));
    specs.push_back(EisensteinSpec::make(chi, one, 4));
  }
  long cases = 0;
  for (int i = 0; i < 200; ++i) {
    const EisensteinSpec& E = specs[static_cast<size_t>(i) % specs.size()];
    check.guard("equivariance", [&] {
      Mat2 A = oracle_q::hilbert_matrix(oracle_q::complete_column(1 + i % 4, 5), E.twists[0]);
      auto base = constant_under_slash(E, 0, A);
      Mat2 g = testing::random_congruence(E.level, E.twists[0], rng, 3);
      check(is_member(g, GroupSpec{E.level, E.twists[0], DetConstraint::One}), [] { return "g not in Γ"; });
      auto moved = constant_under_slash(E, 0, g * A);
      check(base.exact && moved.exact, [] { return "constant not exact"; });
      if (base.exact && moved.exact)
        check(*moved.exact == (E.eta * E.psi).finite_part(g.d) * *base.exact,
              [&] { return "g = " + g.str() + ": " + moved.exact->str() + " vs " + base.exact->str(); });
      ++cases;
    });
  }
  check.fact("cases", std::to_string(cases));
}

// Seeded property suites, 1000 instances each.
void properties(Checker& check, std::uint64_t seed) {
  constexpr int kInstances = 1000;
  std::mt19937_64 rng(seed);
  const std::vector<Field> fields{Field::quadratic(5), Field::quadratic(10), Field::quadratic(79)};

  for (int i = 0; i < kInstances; ++i) {
    const Field& F = fields[static_cast<size_t>(i) % fields.size()];
    check.guard("ideal laws", [&] {
      auto G = class_group(F, ClassKind::Wide);
      auto a = testing::random_integral_ideal(F, rng, 30);
      auto b = testing::random_integral_ideal(F, rng, 30);
      auto who = [&] { return "ideal laws: a = " + a.str() + ", b = " + b.str(); };
      check(a.is_module(), who);
      check((a * b).norm() == a.norm() * b.norm(), who);
      check((a * a.inverse()).is_one(), who);
      check((a + b) * a.intersect(b) == a * b, who);
      auto ga = G.dlog(a), gb = G.dlog(b), gab = G.dlog(a * b);
      for (size_t j = 0; j < ga.size(); ++j) check(gab[j] == mod(ga[j] + gb[j], G.structure()[j]), who);
    });
  }

  for (int i = 0; i < kInstances; ++i) {
    const Field& F = fields[static_cast<size_t>(i) % fields.size()];
    check.guard("factor round-trip", [&] {
      auto a = testing::random_integral_ideal(F, rng, 40);
      auto b = testing::random_integral_ideal(F, rng, 10);
      auto x = a * b.inverse();
      auto f = factor(x);
      check(product(F, f) == x, [&] { return "factor round-trip: " + x.str(); });
      for (auto& [P, e] : f) check(e != 0 && P.ideal.norm() == P.norm(), [&] { return "factor prime " + P.ideal.str(); });
    });
  }

  {
    // Q(sqrt 10) mod 3 with parallel signature, and Q mod 5.
    std::vector<EisensteinSpec> specs;
    Field K = Field::quadratic(10);
    for (auto& psi : primitive_characters(RayClassGroup::build(ideal(K, "[3]")))) {
      auto s = psi.signature();
      if (s[0] != s[1]) continue;
      specs.push_back(EisensteinSpec::make(RayClassCharacter::trivial(K), psi, s[0] % 2 ? 3 : 2));
    }
    Field Q = Field::rationals();
    for (auto& psi : prim_or_trivial(Q, 5))
      specs.push_back(EisensteinSpec::make(RayClassCharacter::trivial(Q), psi, psi.signature()[0] % 2 ? 3 : 4));
    for (int i = 0; i < kInstances; ++i) {
      const EisensteinSpec& E = specs[static_cast<size_t>(i) % specs.size()];
      check.guard("coefficient multiplicativity", [&] {
        const Field& F = E.field();
        FractionalIdeal a = testing::random_integral_ideal(F, rng, 8), b = a;
        do {
          b = testing::random_integral_ideal(F, rng, 8);
        } while (!coprime(a, b));
        check(coefficient(E, a * b) == coefficient(E, a) * coefficient(E, b),
              [&] { return "c(ab) != c(a) c(b) for a = " + a.str() + ", b = " + b.str(); });
      });
    }
  }

  {
    struct Group {
      RayClassGroup G;
      std::vector<RayClassCharacter> chars;
      std::vector<ClassCoords> elems;
    };
    std::vector<Group> groups;
    for (auto& [F, mods] : std::vector<std::pair<Field, std::vector<std::string>>>{
             {Field::rationals(), {"[5]", "[8]", "[12]", "[13]"}},
             {Field::quadratic(5), {"[1]", "[3]", "[4]", "[w]"}},
             {Field::quadratic(10), {"[1]", "[3]", "[2, w]"}}}) {
      for (auto& m : mods) {
        auto G = RayClassGroup::build(ideal(F, m));
        groups.push_back({G, characters(G), G.elements()});
      }
    }
    for (int i = 0; i < kInstances; ++i) {
      auto& grp = groups[static_cast<size_t>(i) % groups.size()];
      std::uniform_int_distribution<size_t> pick(0, grp.chars.size() - 1);
      const auto& x = grp.chars[pick(rng)];
      const auto& y = grp.chars[pick(rng)];
      check.guard("character orthogonality", [&] {
        Cyclotomic s;
        for (auto& c : grp.elems) s += x.at_class(c) * y.at_class(c).conj();
        bool same = x.same_function(y);
        check(s == Cyclotomic(same ? grp.G.order() : 0),
              [&] { return "orthogonality on " + grp.G.modulus().str() + ": " + s.str(); });
      });
    }
  }

  for (int i = 0; i < kInstances; ++i) {
    check.guard("horocycle projection", [&] {
      const Precision p = 128;
      std::uniform_int_distribution<long> deg(1, 12), coef(-50, 50);
      long D = deg(rng);
      long M = D + 1 + std::uniform_int_distribution<long>(0, 6)(rng);
      Real period(std::uniform_int_distribution<long>(1, 40)(rng), p);
      std::vector<std::pair<long, long>> c(static_cast<size_t>(2 * D + 1));
      for (auto& v : c) v = {coef(rng), coef(rng)};
      Rational c0(c[static_cast<size_t>(D)].first, 7);
      auto f = [&](const Complex& z) {
        Complex s(Real(c0, p), Real(Rational(c[static_cast<size_t>(D)].second, 7), p));
        for (long n = -D; n <= D; ++n) {
          if (n == 0) continue;
          auto [re, im] = c[static_cast<size_t>(n + D)];
          Real ang = Real::pi(p) * 2L * z.re * n / period;
          Real mag = exp(-(Real::pi(p) * 2L * z.im * n / period));
          s += Complex(Real(re, p), Real(im, p)) * Complex(mag * cos(ang), mag * sin(ang));
        }
        return s;
      };
      Complex m = oracle_q::horocycle_mean(f, period, M, Real(Rational(1, 3), p));
      double err = abs(m - Complex(Real(c0, p), Real(Rational(c[static_cast<size_t>(D)].second, 7), p))).to_double();
      // Rounding scales with the largest term: modes with n < 0 grow like e^{2 pi |n| t / period}.
      double size = 1;
      for (long n = -D; n <= D; ++n) {
        auto [re, im] = c[static_cast<size_t>(n + D)];
        size += std::hypot(re, im) * std::exp(-2 * M_PI * static_cast<double>(n) / 3 / period.to_double());
      }
      check(err < 1e-30 * size, [&] { return "horocycle mean error " + fmt(err) + " (D=" + std::to_string(D) + ")"; });
    });
  }

  const std::vector<Field> pos_fields{Field::rationals(), Field::quadratic(5), Field::quadratic(10),
                                      Field::quadratic(3)};
  for (int i = 0; i < kInstances; ++i) {
    const Field& F = pos_fields[static_cast<size_t>(i) % pos_fields.size()];
    check.guard("positive basis", [&] {
      auto L = testing::random_integral_ideal(F, rng, 30) * testing::random_nonzero(F, rng, 5, 3);
      auto xs = positive_basis(L);
      auto who = [&] { return "positive_basis(" + L.str() + ")"; };
      check(static_cast<int>(xs.size()) == L.degree(), who);
      QMatrix X(L.degree(), static_cast<Eigen::Index>(xs.size()));
      for (size_t j = 0; j < xs.size(); ++j) {
        check(is_totally_positive(xs[j]) && L.contains(xs[j]), who);
        X.col(static_cast<Eigen::Index>(j)) = L.coordinates(xs[j]);
      }
      if (X.rows() == X.cols()) check(boost::multiprecision::abs(determinant(X)) == 1, who);
    });
  }
  check.fact("instances_per_property", std::to_string(kInstances));
}

struct Suite {
  std::string summary;
  double budget;
  void (*run)(Checker&, std::uint64_t);
};

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> r{
      {"q-exact", {"constants at infinity over Q are 1/240 (k=4) and -1/504 (k=6) exactly", 1, q_exact}},
      {"q10-ledger", {"Q(sqrt 10): discriminant, different, factorizations, il under both conventions", 5, q10_ledger}},
      {"q-oracle", {"closed form vs lattice-sum oracle over Q, N in {1,5,8,12}, k in {3,4}, |delta| < 1e-6", 60,
                    q_oracle}},
      {"quadratic-oracle", {"closed form vs truncated Hilbert series over Q(sqrt 5), k=4, within 1e-3", 120,
                            quadratic_oracle}},
      {"l-reconstruction", {"zeta_{Q(sqrt 5)}(-1) = 1/30 via the functional equation, 128/192-bit gate", 30,
                            l_reconstruction}},
      {"gauss-modulus", {"|tau(psi)|^2 = N(cond psi), certified radius < 1e-20", 60, gauss_modulus}},
      {"cusp-classes", {"h(F) cusp classes; il invariance on 500 random triples per field", 60, cusp_classes}},
      {"equivariance", {"constant_under_slash(gA) = (eta psi)_f(d_g) constant_under_slash(A), 200 cases", 30,
                        equivariance}},
      {"properties", {"seeded property suites, 1000 instances each", 120, properties}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"q-exact",          "q10-ledger",    "q-oracle",
                                              "quadratic-oracle", "l-reconstruction", "gauss-modulus",
                                              "cusp-classes",     "equivariance",  "properties"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ValidationError("unknown verification suite '" + name + "'");
  SuiteResult r;
  r.name = name;
  r.summary = it->second.summary;
  r.budget_seconds = it->second.budget;
  Checker check(r);
  auto t0 = std::chrono::steady_clock::now();
  check.guard(name, [&] { it->second.run(check, seed); });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = r.failed_checks == 0 && r.checks > 0 && r.seconds <= r.budget_seconds;
  return r;
}

}  // namespace hc::verify
