#include "hc/eisenstein.hpp"

namespace hc {

namespace {

const char* kConventions =
    "Gauss sums on primitive characters: tau(chi) = sum over x in f^{-1}d^{-1}/d^{-1} of "
    "sgn(x)^r chi(x f d) e_F(x); for conductor O the single term is chi(d)";

bool parity_ok(const SignVector& q, const SignVector& r, long k) {
  for (size_t i = 0; i < q.size(); ++i)
    if ((q[i] + r[i] + k) % 2 != 0) return false;
  return true;
}

Cyclotomic rat(const Rational& x) { return Cyclotomic(x); }

// Fill value/exact from an exact factor times an L-value.
void finish(ConstantTermReport& rep, const Cyclotomic& factor, const LValue& L, Precision prec) {
  for (auto& w : L.warnings) rep.warnings.push_back(w);
  if (L.exact) {
    rep.exact = factor * *L.exact;
    rep.value = rep.exact->to_ball(prec);
    return;
  }
  rep.value = factor.to_ball(prec + 32) * L.value;
}

void vanish(ConstantTermReport& rep, const char* reason, Precision prec) {
  rep.vanishing_reason = reason;
  rep.exact = Cyclotomic();
  rep.value = Ball(Complex(prec), 0.0);
}

const FractionalIdeal& twist(const EisensteinSpec& E, int lambda) {
  if (lambda < 0 || lambda >= static_cast<int>(E.twists.size()))
    throw ValidationError("lambda out of range of the narrow class group");
  return E.twists[static_cast<size_t>(lambda)];
}

Rational norm_power(const Rational& n, long k) { return pow(n, k); }

SpecialValueOptions lopts(const EisensteinSpec& E) {
  SpecialValueOptions o;
  o.prec = E.prec;
  return o;
}

Cyclotomic euler_factors(const EisensteinSpec& E, const RayClassCharacter& chi) {
  Cyclotomic out(1);
  for (auto& Q : prime_divisors(E.level)) {
    if (divides(Q.ideal, chi.modulus())) continue;
    Cyclotomic v = chi(Q.ideal);
    out *= Cyclotomic(1) - v * rat(pow(Rational(Q.norm()), -E.k));
  }
  return out;
}

// sgn(-γ)^q eta(γ (b d t)^{-1}) sgn(α)^r psi^{-1}(α)
Cyclotomic slash_characters(const EisensteinSpec& E, const FractionalIdeal& t, const Mat2& A) {
  const Field& F = E.field();
  auto bdt = E.psi.modulus() * F.different() * t;
  Cyclotomic s = rat(sgn_power(-A.c, E.eta.signature()) * sgn_power(A.a, E.psi.signature()));
  s *= E.eta(FractionalIdeal::principal(A.c) * bdt.inverse());
  // b = O allows α = 0; the character factor is then 1.
  if (!E.psi.modulus().is_one()) s *= E.psi.inverse()(FractionalIdeal::principal(A.a));
  return s;
}

}  // namespace

EisensteinSpec EisensteinSpec::make(const RayClassCharacter& eta, const RayClassCharacter& psi, long k,
                                    Precision prec) {
  if (!(eta.field() == psi.field())) throw ValidationError("eta and psi live over different fields");
  if (k < 1) throw ValidationError("weight k must be >= 1");
  if (!eta.is_primitive() || !psi.is_primitive()) throw ValidationError("eta and psi must be primitive");
  if (!parity_ok(eta.signature(), psi.signature(), k))
    throw ValidationError("parity: q + r must be (k, ..., k) mod 2");
  EisensteinSpec E{k, eta, psi, eta.modulus() * psi.modulus(), {}, prec};
  E.twists = twist_representatives(psi.modulus(), E.level);
  return E;
}

Cyclotomic coefficient(const EisensteinSpec& E, const FractionalIdeal& n) {
  if (!n.is_integral() || n.norm() == 0) throw ValidationError("coefficient: ideal must be nonzero and integral");
  Cyclotomic sum;
  for (auto& n1 : integral_divisors(n)) {
    Cyclotomic a = E.eta(n / n1);
    if (a.is_zero()) continue;
    Cyclotomic b = E.psi(n1);
    if (b.is_zero()) continue;
    sum += a * b * rat(pow(n1.norm(), E.k - 1));
  }
  return sum;
}

ConstantTermReport constant_at_infinity(const EisensteinSpec& E) {
  const Field& F = E.field();
  ConstantTermReport rep;
  rep.formula_path = "infinity";
  rep.conventions = kConventions;
  const Cyclotomic half_d = rat(Rational(1, Integer(1) << F.degree()));
  const bool eta_id = E.eta.modulus().is_one();
  const bool psi_id = E.psi.modulus().is_one();
  if (E.k >= 2) {
    if (!eta_id) {
      vanish(rep, "delta_eta_id = 0", E.prec);
      return rep;
    }
    finish(rep, half_d, l_special_value(E.psi, E.k, lopts(E)), E.prec);
    return rep;
  }
  // k = 1: 2^{-d} (δ_η L(psi, 0) + δ_ψ L(eta, 0)); exact backend only over Q.
  if (F.degree() != 1) throw UnsupportedError("weight 1 constant terms need L(chi, 0), available only over Q");
  Cyclotomic total;
  if (eta_id) total += bernoulli_exact(E.psi, 1);
  if (psi_id) total += bernoulli_exact(E.eta, 1);
  if (!eta_id && !psi_id) {
    vanish(rep, "delta_eta_id = 0", E.prec);
    return rep;
  }
  rep.exact = half_d * total;
  rep.value = rep.exact->to_ball(E.prec);
  return rep;
}

ConstantTermReport constant_under_slash(const EisensteinSpec& E, int lambda, const Mat2& A) {
  const Field& F = E.field();
  const FractionalIdeal& t = twist(E, lambda);
  if (!is_member(A, GroupSpec{F.unit_ideal(), t, DetConstraint::One}))
    throw ValidationError("slash matrix is not in Γ_λ¹(O)");
  ConstantTermReport rep;
  rep.lambda = lambda;
  rep.matrix = A;
  rep.conventions = kConventions;
  if (A.is_upper_triangular()) {
    // E|[[α, β], [0, α^{-1}]] has constant term N(α)^k c(0); α is a unit.
    rep = constant_at_infinity(E);
    rep.lambda = lambda;
    rep.matrix = A;
    rep.formula_path = "upper-triangular";
    Cyclotomic s = rat(pow(A.a.norm(), E.k));
    if (rep.exact) rep.exact = s * *rep.exact;
    rep.value = s.to_ball(E.prec) * rep.value;
    return rep;
  }
  rep.formula_path = "general-slash";
  auto n1 = FractionalIdeal::principal(A.c) * (F.different() * t).inverse();
  if (!divides(E.psi.modulus(), n1)) {
    vanish(rep, "b ∤ n1", E.prec);
    return rep;
  }
  auto chi = (E.eta * E.psi.inverse()).primitive();
  const auto& c = chi.modulus();
  Cyclotomic f = rat(Rational(1, Integer(1) << F.degree()));
  f *= gauss_sum(chi) / gauss_sum(E.psi.inverse());
  f *= rat(norm_power(E.psi.modulus().norm() / c.norm(), E.k));
  f *= slash_characters(E, t, A);
  f *= euler_factors(E, chi);
  if (f.is_zero()) {
    rep.exact = Cyclotomic();
    rep.value = Ball(Complex(E.prec), 0.0);
    rep.warnings.push_back("eta(γ (b d t)^{-1}) = 0: γ (b d t)^{-1} is not coprime to the conductor of eta");
    return rep;
  }
  finish(rep, f, l_special_value(chi.inverse(), E.k, lopts(E)), E.prec);
  return rep;
}

Ball constant_under_slash_direct(const EisensteinSpec& E, int lambda, const Mat2& A) {
  const Field& F = E.field();
  const FractionalIdeal& t = twist(E, lambda);
  if (!is_member(A, GroupSpec{F.unit_ideal(), t, DetConstraint::One}))
    throw ValidationError("slash matrix is not in Γ_λ¹(O)");
  if (A.is_upper_triangular()) return constant_under_slash(E, lambda, A).value;
  auto n1 = FractionalIdeal::principal(A.c) * (F.different() * t).inverse();
  if (!divides(E.psi.modulus(), n1)) return Ball(Complex(E.prec), 0.0);
  require(E.k >= 2, "direct path needs k >= 2");

  auto chi = (E.eta * E.psi.inverse()).primitive();
  const int d = F.degree();
  const Precision wp = E.prec + 32;
  // sgn(-α)^r instead of sgn(α)^r: the sign of (-1)^{kd} is kept inside.
  Cyclotomic f = gauss_sum(E.psi) * rat(pow(E.psi.modulus().norm(), E.k - 1));
  f *= slash_characters(E, t, A) * rat(sgn_power(FieldElement(F, Rational(-1)), E.psi.signature()));
  f *= euler_factors(E, chi);
  if (f.is_zero()) return Ball(Complex(E.prec), 0.0);

  // C [O^x : U] |d_F|^k = sqrt(d_F) Γ(k)^d |d_F|^{k-1} / (-2πi)^{kd}
  Real dF(boost::multiprecision::abs(F.discriminant()), wp);
  Real mag = sqrt(dF) * pow(gamma(Real(E.k, wp)), d) * pow(dF, E.k - 1) / pow(Real::pi(wp) * 2L, E.k * d);
  // (-i)^{-kd} = i^{kd}
  long e = ((E.k * d) % 4 + 4) % 4;
  Cyclotomic ipow = Cyclotomic::root_of_unity(Rational(e, 4));
  Ball C = Ball::real(mag, rounding_bound(Complex(mag)) * 4) * ipow.to_ball(wp);
  Ball L = l_value_at(chi, E.k, wp);
  return C * f.to_ball(wp) * L;
}

ConstantTermReport constant_at_cusp(const EisensteinSpec& E, int lambda, const FractionalIdeal& r0) {
  const Field& F = E.field();
  const FractionalIdeal& t = twist(E, lambda);
  if (class_group(F, ClassKind::Wide).class_index(r0) == 0)
    throw ValidationError("r0 lies in the class of infinity; use constant_under_slash");
  auto cusp = cusp_matrix(t, r0, E.psi.modulus(), lambda);
  ConstantTermReport rep;
  rep.lambda = lambda;
  rep.cusp_label = r0;
  rep.matrix = cusp.matrix;
  rep.formula_path = "class-cusp";
  rep.conventions = kConventions;
  if (!E.psi.modulus().is_one()) {
    vanish(rep, "delta_psi_id = 0", E.prec);
    return rep;
  }
  Cyclotomic f = rat(Rational(1, Integer(1) << F.degree()));
  f *= gauss_sum(E.eta);
  f *= rat(norm_power(r0.norm() / E.eta.modulus().norm(), E.k));
  f *= rat(sgn_power(-cusp.matrix.c, E.eta.signature()));
  f *= E.eta(cusp.n1);
  finish(rep, f, l_special_value(E.eta.inverse(), E.k, lopts(E)), E.prec);
  return rep;
}

std::vector<ConstantTermReport> constant_term_table(const EisensteinSpec& E) {
  std::vector<ConstantTermReport> out;
  for (int l = 0; l < static_cast<int>(E.twists.size()); ++l) {
    auto inf = constant_at_infinity(E);
    inf.lambda = l;
    inf.matrix = Mat2::identity(E.field());
    out.push_back(std::move(inf));
    for (auto& c : enumerate_cusps(E.twists[l], E.psi.modulus(), E.level, l)) {
      if (c.at_infinity) continue;
      out.push_back(constant_at_cusp(E, l, c.class_label));
    }
  }
  return out;
}

}  // namespace hc
