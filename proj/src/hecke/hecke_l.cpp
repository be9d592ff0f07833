#include "hc/hecke_l.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hc {

std::string to_string(LMethod m) {
  switch (m) {
    case LMethod::DirichletSeries:
      return "dirichlet-series";
    case LMethod::FunctionalEquation:
      return "functional-equation";
    case LMethod::BernoulliExact:
      return "bernoulli-exact";
  }
  return "?";
}

std::vector<IdealOfNorm> ideals_by_norm(const Field& F, long X) {
  require(X >= 1, "ideals_by_norm: bound must be >= 1");
  std::vector<char> composite(static_cast<size_t>(X) + 1, 0);
  std::vector<IdealOfNorm> acc{{F.unit_ideal(), 1}};
  for (long p = 2; p <= X; ++p) {
    if (composite[p]) continue;
    for (long q = p * p; q <= X; q += p) composite[q] = 1;
    for (auto& P : primes_above(F, Integer(p))) {
      if (P.norm() > X) continue;
      const long q = to_long(P.norm());
      const size_t n0 = acc.size();
      for (size_t i = 0; i < n0; ++i) {
        FractionalIdeal I = acc[i].ideal;
        long n = acc[i].norm;
        while (n <= X / q) {
          I = I * P.ideal;
          n *= q;
          acc.push_back({I, n});
        }
      }
    }
  }
  std::sort(acc.begin(), acc.end(), [](const IdealOfNorm& a, const IdealOfNorm& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.ideal < b.ideal;
  });
  return acc;
}

namespace {

// Kahan-compensated complex accumulator.
struct CompensatedSum {
  Complex sum, c;
  explicit CompensatedSum(Precision p) : sum(p), c(p) {}
  void add(const Complex& x) {
    Complex y = x - c;
    Complex t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

Complex character_value(const RayClassCharacter& chi, const FractionalIdeal& a, Precision prec,
                        std::map<Rational, Complex>& cache) {
  auto c = chi.group().dlog(a);
  if (!c) return Complex(prec);
  Rational e = chi.exponent(*c);
  auto it = cache.find(e);
  if (it == cache.end()) it = cache.emplace(e, exp_2pi_i(e, prec)).first;
  return it->second;
}

Real gamma_r(const Real& s) {
  Precision p = s.prec();
  return pow(Real::pi(p), -s / 2L) * gamma(s / 2L);
}

// I_m(c) = ∫_1^∞ t^m e^{-ct} dt, c > 0.
Real incomplete_exp(long m, const Real& c) {
  Precision p = c.prec();
  Real ec = exp(-c);
  if (m >= 0) {
    // e^{-c} sum_{j=0}^m m!/(m-j)! c^{-j-1}
    Real term = ec / c;
    Real sum = term;
    for (long j = 1; j <= m; ++j) {
      term = term * (m - j + 1) / c;
      sum += term;
    }
    return sum;
  }
  // E_n(c), n = -m, by upward recurrence from E_1.
  Real E = expint_e1(c);
  for (long j = 1; j < -m; ++j) E = (ec - c * E) / j;
  (void)p;
  return E;
}

// J_m(a) = ∫_1^∞ t^m e^{-a t^2} dt, a > 0.
Real incomplete_gauss(long m, const Real& a) {
  Precision p = a.prec();
  Real ea = exp(-a);
  Real J(p);
  long j;
  if (m % 2 == 0) {
    J = sqrt(Real::pi(p) / a) * erfc(sqrt(a)) / 2L;
    j = 0;
  } else if (m > 0) {
    J = ea / (a * 2L);
    j = 1;
  } else {
    J = expint_e1(a) / 2L;
    j = -1;
  }
  while (j < m) {
    J = (ea + J * (j + 1)) / (a * 2L);
    j += 2;
  }
  while (j > m) {
    // J_{j-2} = (2a J_j - e^{-a}) / (j - 1)
    J = (a * J * 2L - ea) / (j - 1);
    j -= 2;
  }
  return J;
}

// G_s(x) = ∫_1^∞ φ(x t) t^{s-1} dt where φ is the inverse Mellin transform
// of Γ_R(s + r)^d.
class SmoothingKernel {
 public:
  SmoothingKernel(int d, int r, Precision wp) : d_(d), r_(r), wp_(wp) {
    const double bits = static_cast<double>(wp);
    h_ = Real(M_PI * M_PI / (bits * std::log(2.0) + 10), wp);
    cutoff_ = bits * std::log(2.0) + 40;
    cosh_.emplace_back(1L, wp);
  }

  Real operator()(long s, const Real& x) const {
    const long m = r_ + s - 1;
    if (d_ == 1) {
      Real a = Real::pi(wp_) * x * x;
      return pow(x, r_) * incomplete_gauss(m, a) * 2L;
    }
    // 4 x^r ∫_0^∞ I_m(2πx cosh u) du by the trapezoid rule; the integrand
    // is even and analytic in |Im u| < π/2.
    Real c0 = Real::pi(wp_) * x * 2L;
    Real sum = incomplete_exp(m, c0) / 2L;
    for (size_t j = 1;; ++j) {
      if (j >= cosh_.size()) cosh_.push_back(cosh(h_ * static_cast<long>(j)));
      Real c = c0 * cosh_[j];
      Real f = incomplete_exp(m, c);
      sum += f;
      if (c.to_double() > cutoff_ && (f.is_zero() || f.exponent() < sum.exponent() - static_cast<long>(wp_) - 8))
        break;
      ensure(j < 100000, "smoothing kernel: quadrature did not converge");
    }
    return pow(x, r_) * sum * h_ * 4L;
  }

  /// Smallest n beyond which terms are below 2^{-wp} relative.
  long cutoff_index(const Real& A) const {
    double a = A.to_double();
    if (d_ == 1) return static_cast<long>(std::ceil(a * std::sqrt(cutoff_ / M_PI))) + 1;
    return static_cast<long>(std::ceil(a * cutoff_ / (2 * M_PI))) + 1;
  }

 private:
  int d_, r_;
  Precision wp_;
  Real h_{128};
  double cutoff_;
  // cosh(j h), shared by every evaluation.
  mutable std::vector<Real> cosh_;
};

Complex i_power(long e, Precision p) {
  long m = ((e % 4) + 4) % 4;
  Real one(1L, p), zero(0L, p);
  switch (m) {
    case 0:
      return {one, zero};
    case 1:
      return {zero, one};
    case 2:
      return {-one, zero};
    default:
      return {zero, -one};
  }
}

// 2^d Γ(k)^d |d_F|^{k-1/2} N(c)^{k-1} (2πi)^{-kd}
Complex fe_factor(const Field& F, const Rational& Nc, long k, Precision p) {
  const int d = F.degree();
  Real dF(boost::multiprecision::abs(F.discriminant()), p);
  Real two_pi = Real::pi(p) * 2L;
  Real mag = pow(Real(2L, p), d) * pow(gamma(Real(k, p)), d) * pow(dF, k - 1) * sqrt(dF) *
             pow(Real(Nc, p), k - 1) / pow(two_pi, k * d);
  Complex z = i_power(-k * d, p);
  return z * mag;
}

int parallel_signature(const RayClassCharacter& chi) {
  auto r = chi.signature();
  for (int v : r)
    if (v != r[0]) return -1;
  return r.empty() ? 0 : r[0];
}

}  // namespace

Real dedekind_residue(const Field& F, Precision prec) {
  const int d = F.degree();
  if (d == 1) return Real(1L, prec);
  if (d != 2) throw UnsupportedError("Dedekind residue: only degree <= 2 has a regulator backend");
  long h = class_group(F, ClassKind::Wide).order();
  auto eps = F.unit_generators().front();
  Real R = abs(log(abs(embeddings(eps, prec + 16)[0])));
  Real dF(F.discriminant(), prec + 16);
  return with_prec(R * h * 2L / sqrt(dF), prec);
}

LValue l_series(const RayClassCharacter& chi, long k, long X, Precision prec) {
  if (k <= 1) throw UnsupportedError("l_series: k <= 1 is only conditionally convergent");
  const Field& F = chi.field();
  const Precision wp = prec + 32;
  auto ideals = ideals_by_norm(F, X);
  std::map<Rational, Complex> cache;
  CompensatedSum acc(wp);
  for (auto& [a, n] : ideals) {
    Complex v = character_value(chi, a, wp, cache);
    if (v.re.is_zero() && v.im.is_zero()) continue;
    acc.add(v * pow(Real(n, wp), -k));
  }
  LValue out;
  out.point = k;
  out.method = LMethod::DirichletSeries;
  out.truncation = X;
  // Ideal count ~ c X; tail ~ c X^{1-k}/(k-1) (log X)^{d-1}.
  double c = static_cast<double>(ideals.size()) / static_cast<double>(X);
  double tail = c * std::pow(static_cast<double>(X), 1.0 - k) / (k - 1) *
                std::pow(1 + std::log(static_cast<double>(X)), F.degree() - 1);
  out.error_bound = tail;
  out.tail_is_heuristic = true;
  Complex mid(with_prec(acc.sum.re, prec), with_prec(acc.sum.im, prec));
  out.value = Ball(mid, add_up(tail, rounding_bound(mid) * 4));
  return out;
}

Ball l_value_at(const RayClassCharacter& chi, long k, Precision prec, long* terms_used) {
  const Field& F = chi.field();
  const int d = F.degree();
  require(k >= 2, "l_value_at: k >= 2 required");
  if (d > 2) throw UnsupportedError("L-values by the functional equation are implemented for degree <= 2");
  if (!chi.is_primitive()) throw ValidationError("l_value_at: character must be primitive");
  const int r = parallel_signature(chi);
  if (r < 0) throw UnsupportedError("l_value_at: mixed signatures are not supported");

  const Precision wp = prec + 64 + 8 * k;
  const Rational Nc = chi.modulus().norm();
  Real dF(boost::multiprecision::abs(F.discriminant()), wp);
  Real A = sqrt(dF * Real(Nc, wp));
  auto gam = [&](long s) { return pow(gamma_r(Real(s + r, wp)), d); };

  // Root number from L(chi^{-1}, 1-j) = c_j tau(chi^{-1}) L(chi, j), valid
  // for j >= 2 with j = r mod 2. W does not depend on j, so it is read at
  // such a j even when k has the other parity.
  const long j = 2 + r;
  Complex tau_bar = gauss_sum(chi.inverse()).to_ball(wp).mid();
  Complex c = fe_factor(F, Nc, j, wp);
  Complex W = Complex(pow(A, 2 * j - 1) * gam(j) / gam(1 - j)) / (c * tau_bar);

  SmoothingKernel G(d, r, wp);
  const long nmax = G.cutoff_index(A);
  if (terms_used) *terms_used = nmax;
  auto ideals = ideals_by_norm(F, nmax);
  std::map<long, Complex> an;
  std::map<Rational, Complex> cache;
  for (auto& [a, n] : ideals) {
    Complex v = character_value(chi, a, wp, cache);
    auto it = an.find(n);
    if (it == an.end())
      an.emplace(n, v);
    else
      it->second += v;
  }
  CompensatedSum direct(wp), dual(wp);
  for (auto& [n, a] : an) {
    if (a.re.is_zero() && a.im.is_zero()) continue;
    Real x = Real(n, wp) / A;
    direct.add(a * G(k, x));
    dual.add(conj(a) * G(1 - k, x));
  }
  Complex Lam = direct.sum + W * dual.sum;
  if (chi.is_trivial()) {
    // Poles of Λ at s = 1 and s = 0 with residues ±ρ, ρ = A Γ_R(1)^d Res ζ_F.
    Real rho = A * dedekind_residue(F, wp);
    Lam -= Complex(rho / Real(k, wp) + rho / Real(1 - k, wp));
  }
  Complex L = Lam / Complex(pow(A, k) * gam(k));
  Complex mid(with_prec(L.re, prec), with_prec(L.im, prec));
  double rad = std::ldexp(abs_upper(abs(L)) + 1e-300, -static_cast<int>(prec));
  return Ball(mid, add_up(rad, rounding_bound(mid) * 4));
}

std::vector<Rational> bernoulli_numbers(long n) {
  std::vector<Rational> B(static_cast<size_t>(n) + 1);
  B[0] = 1;
  for (long m = 1; m <= n; ++m) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational s = 0;
    Integer binom = 1;  // C(m+1, j)
    for (long j = 0; j < m; ++j) {
      s += Rational(binom) * B[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    B[m] = -s / Rational(m + 1);
  }
  return B;
}

Cyclotomic bernoulli_exact(const RayClassCharacter& chi, long k) {
  const Field& F = chi.field();
  if (F.degree() != 1) throw ValidationError("bernoulli_exact: only F = Q");
  require(k >= 1, "bernoulli_exact: k >= 1 required");
  if (!chi.is_primitive()) throw ValidationError("bernoulli_exact: character must be primitive");
  const long N = to_long(num(chi.modulus().norm()));
  auto B = bernoulli_numbers(k);
  // B_{k,chi} = N^{k-1} sum_{a=1}^{N} chi(a) B_k(a/N)
  std::map<Rational, Rational> by_exponent;
  for (long a = 1; a <= N; ++a) {
    auto c = chi.group().dlog(FieldElement(F, Rational(a)));
    if (!c) continue;
    Rational x(a, N), bk = 0;
    Integer binom = 1;
    for (long j = 0; j <= k; ++j) {
      bk += Rational(binom) * B[j] * pow(x, k - j);
      binom = binom * (k - j) / (j + 1);
    }
    // chi(a) for a > 0 is the value on the ideal aZ.
    by_exponent[chi.exponent(*chi.group().dlog(FractionalIdeal::principal(FieldElement(F, Rational(a)))))] += bk;
  }
  Cyclotomic sum;
  for (auto& [e, v] : by_exponent) sum += Cyclotomic(v) * Cyclotomic::root_of_unity(e);
  Rational scale = pow(Rational(N), k - 1) / Rational(-k);
  return Cyclotomic(scale) * sum;
}

std::optional<Rational> rational_reconstruction(const Real& x, const Integer& max_den, const Real& tol) {
  Rational q = x.to_rational();
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = q;
  for (int it = 0; it < 10000; ++it) {
    Integer a = floor(rest);
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    Rational cand(p2, q2);
    Real diff = abs(x - Real(cand, x.prec()));
    if (diff <= tol) return cand;
    Rational f = rest - Rational(a);
    if (f == 0) break;
    rest = 1 / f;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

LValue l_special_value(const RayClassCharacter& chi, long k, const SpecialValueOptions& opt) {
  const Field& F = chi.field();
  const int d = F.degree();
  if (k < 1) throw ValidationError("l_special_value: k >= 1 required");
  if (!chi.is_primitive()) throw ValidationError("l_special_value: character must be primitive");
  LValue out;
  out.point = 1 - k;
  const int r = parallel_signature(chi);
  const bool parity_ok = r == static_cast<int>(k % 2);
  const Precision prec = opt.prec;

  auto fe_value = [&](Precision p) {
    Ball Lk = l_value_at(chi.inverse(), k, p, &out.truncation);
    Ball tau = gauss_sum(chi).to_ball(p + 32);
    Ball c(fe_factor(F, chi.modulus().norm(), k, p + 32), 0.0);
    c.inflate(rounding_bound(c.mid()) * 8);
    return c * tau * Lk;
  };

  if (d == 1) {
    Cyclotomic ex = bernoulli_exact(chi, k);
    out.exact = ex;
    out.value = ex.to_ball(prec);
    out.method = LMethod::BernoulliExact;
    out.error_bound = 0;
    out.tail_is_heuristic = false;
    if (k >= 2 && parity_ok) {
      Ball fe = fe_value(prec);
      ensure(fe.overlaps(out.value.inflate(0)) || (fe - out.value).abs_upper() < std::ldexp(1.0, -(int)prec / 2),
             "l_special_value: functional equation disagrees with the Bernoulli value");
    }
    return out;
  }
  if (k == 1) throw UnsupportedError("L(chi, 0) has an exact backend only over Q");
  if (!parity_ok) {
    out.exact = Cyclotomic();
    out.value = Ball(Complex(prec), 0.0);
    out.method = LMethod::FunctionalEquation;
    out.tail_is_heuristic = false;
    out.warnings.push_back("parity: signature is not (k, ..., k) mod 2, so the Gamma factor has a pole and L(chi, 1-k) = 0");
    return out;
  }
  out.method = LMethod::FunctionalEquation;
  out.value = fe_value(prec);
  out.error_bound = out.value.rad();
  if (opt.reconstruct) {
    auto attempt = [&](const Ball& v) -> std::optional<Rational> {
      if (abs_upper(v.mid().im) > std::ldexp(1.0, -static_cast<int>(v.prec()) / 2)) return std::nullopt;
      Real tol(std::max(v.rad() * 4, std::ldexp(1.0, -static_cast<int>(v.prec()) + 16)), v.prec());
      return rational_reconstruction(v.mid().re, opt.max_denominator, tol);
    };
    auto r1 = attempt(out.value);
    if (r1) {
      Ball v2 = fe_value(prec + opt.gate_extra_bits);
      auto r2 = attempt(v2);
      if (r2 && *r1 == *r2) {
        out.exact = Cyclotomic(*r1);
      } else {
        out.warnings.push_back("rational reconstruction did not agree across precisions");
      }
    }
  }
  return out;
}

}  // namespace hc
