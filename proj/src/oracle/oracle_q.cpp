#include "hc/oracle_q.hpp"

#include "hc/hecke_l.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace hc::oracle_q {

namespace {

long modp(long a, long N) { return ((a % N) + N) % N; }

const std::vector<Rational>& bernoulli_cache(long n) {
  static std::mutex mu;
  static std::vector<Rational> B;
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<long>(B.size()) <= n) B = bernoulli_numbers(std::max(n, 2 * static_cast<long>(B.size())));
  return B;
}

Complex e_of(const Rational& x, Precision p) { return exp_2pi_i(x, p); }

Complex to_complex(const Cyclotomic& c, Precision p) { return c.to_ball(p).mid(); }

// exp(2 pi i w) for complex w.
Complex e_complex(const Complex& w) {
  Precision p = w.prec();
  Real two_pi = Real::pi(p) * 2L;
  Real mag = exp(-(two_pi * w.im));
  Real ang = two_pi * w.re;
  return {mag * cos(ang), mag * sin(ang)};
}

Complex cpow(const Complex& z, long n) { return pow(z, n); }

// (-2 pi i)^k / (N^k (k-1)!)
Complex fourier_constant(long k, long N, Precision p) {
  Real mag = pow(Real::pi(p) * 2L, k) / pow(Real(N, p), k) / gamma(Real(k, p));
  long e = modp(-k, 4);  // (-i)^k = i^{-k}
  Complex ik = exp_2pi_i(Rational(e, 4), p);
  return ik * mag;
}

// Bound on sum_{n > B} n^k r^n by a geometric majorant, in double.
double geometric_tail(long k, long B, double log_r) {
  const double n0 = static_cast<double>(B + 1);
  double ratio_log = k * std::log1p(1.0 / n0) + log_r;
  if (ratio_log >= 0) return HUGE_VAL;
  double lead = k * std::log(n0) + n0 * log_r;
  return std::exp(lead) / (-std::expm1(ratio_log));
}

struct FourierKernel {
  long k, N, B;
  Precision p;
  Complex z;
  std::vector<Complex> qpow;   // e(n z / N), n = 0..B
  std::vector<Complex> roots;  // e(j / N)
  std::vector<Real> mpow;      // m^{k-1}
  Complex coef;

  FourierKernel(long k_, long N_, long B_, const Complex& z_, Precision p_)
      : k(k_), N(N_), B(B_), p(p_), z(z_), coef(fourier_constant(k_, N_, p_)) {
    Complex q = e_complex(z / Real(N, p));
    qpow.reserve(static_cast<size_t>(B) + 1);
    qpow.emplace_back(Real(1L, p), Real(0L, p));
    for (long n = 1; n <= B; ++n) qpow.push_back(qpow.back() * q);
    for (long j = 0; j < N; ++j) roots.push_back(e_of(Rational(j, N), p));
    mpow.emplace_back(0L, p);
    for (long m = 1; m <= B; ++m) mpow.push_back(pow(Real(m, p), k - 1));
  }

  // Non-constant part of G_k(z, a1, a2, N), truncated at m|a| <= B.
  Complex oscillating(long a1, long a2) const {
    Complex pos(p), neg(p);
    for (long a = a1 == 0 ? N : a1; a <= B; a += N) {
      for (long m = 1; m * a <= B; ++m) pos += qpow[m * a] * roots[modp(m * a2, N)] * mpow[m];
    }
    // a < 0, a ≡ a1: |a| ≡ -a1.
    long start = modp(-a1, N);
    for (long a = start == 0 ? N : start; a <= B; a += N) {
      for (long m = 1; m * a <= B; ++m) neg += qpow[m * a] * roots[modp(-m * a2, N)] * mpow[m];
    }
    if (k % 2) neg = -neg;
    return coef * (pos + neg);
  }

  double tail() const {
    double y = z.im.to_double();
    double lr = -2 * M_PI * y / static_cast<double>(N);
    double c = std::pow(2 * M_PI / static_cast<double>(N), static_cast<double>(k)) / std::tgamma(static_cast<double>(k));
    return 2 * c * geometric_tail(k, B, lr);
  }
};

Real nonholomorphic_term(long N, const Complex& z) {
  Precision p = z.prec();
  return -(Real::pi(p) / (Real(N * N, p) * z.im));
}

// Round v to prec; the radius covers rad plus the final rounding.
Ball narrow(const Complex& v, Precision prec, double rad) {
  Complex r(with_prec(v.re, prec), with_prec(v.im, prec));
  double extra = rounding_bound(r);
  return Ball(std::move(r), rad + extra);
}

long auto_truncation(long N, const Real& t, Precision prec, long k) {
  double y = t.to_double();
  double bits = static_cast<double>(prec) + 16 + 2.0 * k;
  return static_cast<long>(std::ceil(bits * std::log(2.0) * N / (2 * M_PI * y))) + k + 2;
}

}  // namespace

Real hurwitz_zeta(long s, const Rational& x, Precision prec) {
  require(s >= 2, "hurwitz_zeta: s >= 2");
  require(x > 0 && x <= 1, "hurwitz_zeta: 0 < x <= 1");
  const Precision wp = prec + 32;
  const long M = static_cast<long>(wp) / 2 + 8;
  const long J = static_cast<long>(wp) / 4 + 4;
  const auto& B = bernoulli_cache(2 * J);
  Real a(x, wp);
  Real sum(0L, wp);
  for (long n = 0; n < M; ++n) sum += pow(a + Real(n, wp), -s);
  Real X = a + Real(M, wp);
  sum += pow(X, 1 - s) / Real(s - 1, wp);
  sum += pow(X, -s) / 2L;
  // B_{2j}/(2j)! s (s+1) ... (s+2j-2) X^{-s-2j+1}
  Real rising(s, wp);  // s (s+1) ... (s+2j-2), j = 1
  Real fact(2L, wp);   // (2j)!
  Real Xp = pow(X, -s - 1);
  Real X2inv = pow(X, -2);
  for (long j = 1; j <= J; ++j) {
    sum += Real(B[2 * j], wp) * rising / fact * Xp;
    rising = rising * (s + 2 * j - 1) * (s + 2 * j);
    fact = fact * ((2 * j + 1) * (2 * j + 2));
    Xp = Xp * X2inv;
  }
  return with_prec(sum, prec);
}

Real residue_zeta(long k, long a2, long N, Precision prec) {
  require(N >= 1 && k >= 2, "residue_zeta: N >= 1, k >= 2");
  long r = modp(a2, N);
  Real Nk = pow(Real(N, prec + 16), -k);
  Real sgn((k % 2) ? -1L : 1L, prec + 16);
  if (r == 0) return with_prec(Nk * (Real(1L, prec + 16) + sgn) * hurwitz_zeta(k, Rational(1), prec + 16), prec);
  Rational x(r, N);
  return with_prec(Nk * (hurwitz_zeta(k, x, prec + 16) + sgn * hurwitz_zeta(k, 1 - x, prec + 16)), prec);
}

OracleValue g_k_direct(const LatticeSumSpec& s, Precision prec) {
  if (s.k < 3) throw ValidationError("g_k_direct: k >= 3 (absolute convergence); use g_k_fourier");
  require(s.N >= 1 && s.truncation >= 1, "g_k_direct: N, truncation >= 1");
  require(s.z.im.sign() > 0, "g_k_direct: Im z > 0");
  const Precision wp = prec + 16;
  Complex z(with_prec(s.z.re, wp), with_prec(s.z.im, wp));
  const long B = s.truncation, N = s.N;
  Complex sum(wp);
  long terms = 0;
  auto first = [&](long r) {
    long lo = -B + modp(r - (-B), N);
    return lo;
  };
  for (long a = first(s.a1); a <= B; a += N) {
    Complex az = z * Real(a, wp);
    for (long b = first(s.a2); b <= B; b += N) {
      if (a == 0 && b == 0) continue;
      Complex w = az + Complex(Real(b, wp));
      Complex t = Complex(Real(1L, wp)) / cpow(w, s.k);
      sum += t;
      ++terms;
    }
  }
  // Outside the box |az + b| >= rho |(a, b)|; lattice density 1/N^2.
  double y = s.z.im.to_double(), x = std::abs(s.z.re.to_double());
  double rho = y / std::sqrt(1 + (x + 1) * (x + 1) + y * y);
  double R = static_cast<double>(B);
  double tail = 2 * M_PI / (static_cast<double>(N * N)) * std::pow(rho, -static_cast<double>(s.k)) *
                std::pow(R, 2.0 - static_cast<double>(s.k)) / static_cast<double>(s.k - 2);
  OracleValue out;
  out.value = narrow(sum, prec, tail + rounding_bound(sum) * terms);
  out.tail = tail;
  out.terms = terms;
  return out;
}

OracleValue g_k_fourier(const LatticeSumSpec& s, Precision prec) {
  require(s.k >= 2, "g_k_fourier: k >= 2");
  require(s.N >= 1 && s.truncation >= 1, "g_k_fourier: N, truncation >= 1");
  require(s.z.im.sign() > 0, "g_k_fourier: Im z > 0");
  const Precision wp = prec + 16;
  Complex z(with_prec(s.z.re, wp), with_prec(s.z.im, wp));
  FourierKernel K(s.k, s.N, s.truncation, z, wp);
  Complex v = K.oscillating(modp(s.a1, s.N), modp(s.a2, s.N));
  if (modp(s.a1, s.N) == 0) v += Complex(residue_zeta(s.k, s.a2, s.N, wp));
  if (s.k == 2) v += Complex(nonholomorphic_term(s.N, z));
  OracleValue out;
  out.tail = K.tail();
  out.tail_is_heuristic = false;
  out.terms = s.truncation;
  out.value = narrow(v, prec, out.tail + rounding_bound(v) * 64);
  return out;
}

DirichletTable DirichletTable::from(const RayClassCharacter& chi) {
  const Field& Q = chi.field();
  if (Q.degree() != 1) throw ValidationError("Dirichlet characters live over Q");
  DirichletTable t;
  t.modulus = to_long(num(chi.modulus().norm()));
  if (t.modulus == 1) {
    t.values = {Cyclotomic(1)};
    return t;
  }
  for (long a = 0; a < t.modulus; ++a) t.values.push_back(chi.finite_part(FieldElement(Q, Rational(a))));
  return t;
}

const Cyclotomic& DirichletTable::operator()(long a) const { return values[static_cast<size_t>(modp(a, modulus))]; }

DirichletTable DirichletTable::inverse() const {
  DirichletTable t = *this;
  for (auto& v : t.values) v = v.is_zero() ? v : v.conj();
  return t;
}

Cyclotomic classical_gauss_sum(const DirichletTable& psi) {
  const long v = psi.modulus;
  Cyclotomic s;
  for (long m = 1; m <= v; ++m) {
    if (psi(m).is_zero()) continue;
    s += psi(m) * Cyclotomic::root_of_unity(Rational(m % v, v));
  }
  return s;
}

Sl2 complete_column(long a, long c) {
  // extended Euclid: x a + y c = 1, then [[a, -y], [c, x]]
  long r0 = a, r1 = c, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
    std::tie(y0, y1) = std::pair{y1, y0 - q * y1};
  }
  if (r0 < 0) r0 = -r0, x0 = -x0, y0 = -y0;
  if (r0 != 1) throw ValidationError("complete_column: a and c must be coprime");
  return {a, -y0, c, x0};
}

Mat2 hilbert_matrix(const Sl2& g, const FractionalIdeal& twist) {
  const Field& Q = twist.field();
  if (Q.degree() != 1) throw ValidationError("hilbert_matrix: twist must be over Q");
  Rational s = twist.norm();
  auto fe = [&](const Rational& x) { return FieldElement(Q, x); };
  return Mat2{fe(g.a), fe(Rational(g.b) / s), fe(Rational(g.c) * s), fe(g.d)};
}

namespace {

struct Assembly {
  long N, k;
  std::map<std::pair<long, long>, Cyclotomic> weights;  // (A1, A2) mod N
  Cyclotomic normalization_exact;                       // v^{k-1} tau(psi) (k-1)!
  // tau(psi) tau(psi^{-1}) = psi(-1) v, so the lattice-sum normalization alone
  // yields eta(-1) c(n) as the n-th coefficient; eta(-1) restores c(n).
  Cyclotomic eta_sign;
};

Assembly assemble(const DirichletTable& eta, const DirichletTable& psi, long k, const Sl2& g) {
  require(g.a * g.d - g.b * g.c == 1, "slash matrix must lie in SL2(Z)");
  if (k < 2) throw ValidationError("oracle over Q needs k >= 2");
  const long u = eta.modulus, v = psi.modulus, N = u * v;
  Cyclotomic par = eta(-1) * psi(-1);
  Cyclotomic sign(k % 2 ? -1 : 1);
  if (par != sign) throw ValidationError("parity: (eta psi)(-1) must equal (-1)^k");
  if (k == 2 && eta.is_trivial() && psi.is_trivial())
    throw ValidationError("E_2 with both characters trivial is not a modular form");
  Assembly A{N, k, {}, Cyclotomic(), eta(-1)};
  auto psi_inv = psi.inverse();
  for (long a1 = 1; a1 <= u; ++a1) {
    const Cyclotomic& x = eta(a1);
    if (x.is_zero()) continue;
    for (long a2 = 1; a2 <= N; ++a2) {
      const Cyclotomic& y = psi_inv(a2);
      if (y.is_zero()) continue;
      long A1 = modp(a1 * v * g.a + a2 * g.c, N);
      long A2 = modp(a1 * v * g.b + a2 * g.d, N);
      A.weights[{A1, A2}] += x * y;
    }
  }
  Rational fact = 1;
  for (long j = 2; j < k; ++j) fact *= j;
  A.normalization_exact = classical_gauss_sum(psi) * Cyclotomic(pow(Rational(v), k - 1) * fact);
  return A;
}

// v^{k-1} tau(psi) (k-1)! / (2 (2 pi i)^k)
Complex normalization(const Assembly& A, Precision p) {
  Complex num = to_complex(A.normalization_exact * A.eta_sign, p);
  Real mag = pow(Real::pi(p) * 2L, A.k) * 2L;
  Complex ik = exp_2pi_i(Rational(modp(A.k, 4), 4), p);
  return num / (ik * mag);
}

}  // namespace

OracleValue eisenstein_q(const DirichletTable& eta, const DirichletTable& psi, long k, const Complex& z,
                         const Sl2& gamma, long truncation, Precision prec) {
  auto A = assemble(eta, psi, k, gamma);
  const Precision wp = prec + 24;
  Complex zz(with_prec(z.re, wp), with_prec(z.im, wp));
  long B = truncation > 0 ? truncation : auto_truncation(A.N, z.im, prec, k);
  FourierKernel K(k, A.N, B, zz, wp);
  Complex sum(wp);
  double wsum = 0, gsum = 0;
  for (auto& [key, w] : A.weights) {
    if (w.is_zero()) continue;
    auto [A1, A2] = key;
    Complex g = K.oscillating(A1, A2);
    if (A1 == 0) g += Complex(residue_zeta(k, A2, A.N, wp));
    if (k == 2) g += Complex(nonholomorphic_term(A.N, zz));
    sum += to_complex(w, wp) * g;
    double wa = w.to_ball(53).abs_upper();
    wsum += wa;
    gsum += wa * (abs_upper(abs(g)) + 1);
  }
  Complex v = normalization(A, wp) * sum;
  double nabs = abs_upper(abs(normalization(A, wp)));
  OracleValue out;
  out.tail = nabs * wsum * K.tail();
  out.tail_is_heuristic = false;
  out.terms = B;
  // Working-precision rounding scaled by the size of the summands, not of
  // the (possibly cancelling) total.
  double rounding = nabs * gsum * std::ldexp(1.0, -static_cast<int>(wp) + 12);
  out.value = narrow(v, prec, out.tail + rounding + rounding_bound(v) * 4);
  return out;
}

Complex horocycle_mean(const std::function<Complex(const Complex&)>& f, const Real& period, long M,
                       const Real& t) {
  require(M >= 1, "horocycle_mean: M >= 1");
  Precision p = std::max(period.prec(), t.prec());
  Complex acc(p);
  for (long j = 0; j < M; ++j) {
    Real x = period * j / M;
    acc += f(Complex(x, t));
  }
  return acc / Real(M, p);
}

OracleValue slash_and_extract(const DirichletTable& eta, const DirichletTable& psi, long k, const Sl2& gamma,
                              const ExtractOptions& opt) {
  auto A = assemble(eta, psi, k, gamma);
  if (k < 3 && eta.is_trivial() && psi.is_trivial()) throw ValidationError("slash paths need k >= 3");
  const Precision wp = opt.prec + 24;
  Real t = with_prec(opt.height, wp);
  const long B = opt.truncation > 0 ? opt.truncation : auto_truncation(A.N, t, opt.prec, k);
  const long M = 4 * B + 1;
  double tail = 0;
  auto f = [&](const Complex& z) {
    auto v = eisenstein_q(eta, psi, k, z, gamma, B, wp);
    tail = std::max(tail, v.value.rad());
    return v.value.mid();
  };
  Complex mean = horocycle_mean(f, Real(A.N, wp), M, t);
  OracleValue out;
  out.tail = tail;
  out.tail_is_heuristic = false;
  out.terms = M;
  out.value = narrow(mean, opt.prec, tail + rounding_bound(mean) * 4 * M);
  return out;
}

}  // namespace hc::oracle_q
