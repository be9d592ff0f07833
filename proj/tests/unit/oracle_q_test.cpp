#include "doctest.h"

#include "hc/hecke_l.hpp"
#include "hc/oracle_q.hpp"

#include <cmath>

using namespace hc;
using namespace hc::oracle_q;

namespace {

Field Q() { return Field::rationals(); }

std::vector<RayClassCharacter> prim(long N) {
  return primitive_characters(RayClassGroup::build(FractionalIdeal::parse(Q(), "[" + std::to_string(N) + "]")));
}

Complex cz(double x, double y, Precision p = 128) { return {Real(x, p), Real(y, p)}; }

double dist(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }

// sum_{n <= B} c(n) q^n + c(0) with c(n) = sum_{d | n} eta(n/d) psi(d) d^{k-1}.
Complex q_expansion(const DirichletTable& eta, const DirichletTable& psi, long k, const Complex& z,
                    const Cyclotomic& c0, long B) {
  Precision p = z.prec();
  Complex s = c0.to_ball(p).mid();
  for (long n = 1; n <= B; ++n) {
    Cyclotomic c;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) c += eta(n / d) * psi(d) * Cyclotomic(pow(Rational(d), k - 1));
    Real two_pi = Real::pi(p) * 2L;
    Real mag = exp(-(two_pi * z.im * n));
    Real ang = two_pi * z.re * n;
    s += c.to_ball(p).mid() * Complex(mag * cos(ang), mag * sin(ang));
  }
  return s;
}

}  // namespace

TEST_CASE("Hurwitz zeta against MPFR") {
  for (long s : {2L, 3L, 4L, 7L}) {
    Real ref(160);
    mpfr_zeta_ui(ref.raw(), static_cast<unsigned long>(s), MPFR_RNDN);
    CHECK(abs(hurwitz_zeta(s, Rational(1), 160) - ref).to_double() < 1e-45);
    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    Real half = hurwitz_zeta(s, Rational(1, 2), 160);
    CHECK(abs(half - ref * (pow(Real(2L, 160), s) - Real(1L, 160))).to_double() < 1e-40);
  }
  // Even k, N = 1: sum over b != 0 of b^{-k} = 2 zeta(k).
  Real z4 = pow(Real::pi(128), 4) / 90L;
  CHECK(abs(residue_zeta(4, 0, 1, 128) - z4 * 2L).to_double() < 1e-30);
  CHECK(abs(residue_zeta(3, 0, 1, 128)).to_double() < 1e-30);
}

TEST_CASE("G_6 vanishes at i") {
  LatticeSumSpec s{6, 1, 0, 0, cz(0, 1), 40};
  auto v = g_k_fourier(s, 128);
  CHECK(v.value.abs_upper() < 1e-25);
  // G_4(i) does not vanish.
  s.k = 4;
  CHECK(g_k_fourier(s, 128).value.mid().re.to_double() > 1);
}

TEST_CASE("direct lattice sum agrees with the Fourier expansion") {
  for (long k = 3; k <= 6; ++k) {
    LatticeSumSpec s{k, 5, 2, 3, cz(0.3, 1.1), k == 3 ? 400 : 150};
    auto d = g_k_direct(s, 96);
    s.truncation = 60;
    auto f = g_k_fourier(s, 96);
    CHECK(f.value.rad() < 1e-20);
    CHECK_MESSAGE(dist(d.value.mid(), f.value.mid()) < d.tail + f.value.rad(), "k = " << k);
    CHECK(dist(d.value.mid(), f.value.mid()) < (k == 3 ? 1e-2 : 1e-4));
  }
}

TEST_CASE("lattice sums obey the transformation law") {
  const long N = 6;
  const Sl2 g{5, 2, 7, 3};  // det 1
  Complex z = cz(-0.21, 0.9);
  for (long k : {2L, 3L, 4L}) {
    for (auto [a1, a2] : {std::pair{1L, 0L}, {2L, 5L}, {0L, 1L}, {3L, 3L}}) {
      Complex gz = (z * Real(g.a, 128) + Complex(Real(g.b, 128))) / (z * Real(g.c, 128) + Complex(Real(g.d, 128)));
      // Im(gz) is small: size the truncation so e^{-2 pi B Im / N} < 1e-40.
      long B = static_cast<long>(92 * N / (2 * M_PI * gz.im.to_double())) + 10;
      LatticeSumSpec s{k, N, a1, a2, gz, B};
      Complex lhs = g_k_fourier(s, 128).value.mid() / pow(z * Real(g.c, 128) + Complex(Real(g.d, 128)), k);
      LatticeSumSpec t{k, N, a1 * g.a + a2 * g.c, a1 * g.b + a2 * g.d, z, 80};
      Complex rhs = g_k_fourier(t, 128).value.mid();
      CHECK_MESSAGE(dist(lhs, rhs) < 1e-8, "k = " << k << " (" << a1 << ", " << a2 << ")");
    }
  }
}

TEST_CASE("normalized series has the expected q-expansion") {
  Field F = Q();
  auto one = DirichletTable::from(RayClassCharacter::trivial(F));
  Complex z = cz(0.17, 0.8);
  // E_4 = 1/240 + sum sigma_3(n) q^n
  auto e4 = eisenstein_q(one, one, 4, z, {}, 0, 128);
  CHECK(dist(e4.value.mid(), q_expansion(one, one, 4, z, Cyclotomic(Rational(1, 240)), 60)) < 1e-25);

  for (long N : {4L, 5L, 8L}) {
    for (auto& chi : prim(N)) {
      auto c = DirichletTable::from(chi);
      for (long k : {2L, 3L, 4L}) {
        bool even = c(-1) == Cyclotomic(1);
        if (even != (k % 2 == 0)) continue;
        // eta = 1: c(0) = L(psi, 1-k)/2
        auto v = eisenstein_q(one, c, k, z, {}, 0, 128);
        Cyclotomic c0 = bernoulli_exact(chi, k) * Cyclotomic(Rational(1, 2));
        CHECK_MESSAGE(dist(v.value.mid(), q_expansion(one, c, k, z, c0, 60)) < 1e-20, "N=" << N << " k=" << k);
        // psi = 1: no constant term at infinity.
        auto w = eisenstein_q(c, one, k, z, {}, 0, 128);
        CHECK(dist(w.value.mid(), q_expansion(c, one, k, z, Cyclotomic(), 60)) < 1e-20);
      }
    }
  }
}

TEST_CASE("parity and weight validation") {
  auto one = DirichletTable::from(RayClassCharacter::trivial(Q()));
  auto c4 = DirichletTable::from(prim(4).at(0));
  CHECK_THROWS_AS(eisenstein_q(one, one, 3, cz(0, 1)), ValidationError);
  CHECK_THROWS_AS(eisenstein_q(one, c4, 4, cz(0, 1)), ValidationError);
  CHECK_THROWS_AS(eisenstein_q(one, one, 2, cz(0, 1)), ValidationError);
  CHECK_THROWS_AS(eisenstein_q(one, one, 4, cz(0, 1), Sl2{1, 1, 1, 1}), ValidationError);
}

TEST_CASE("horocycle mean kills nonconstant modes") {
  const long M = 21;
  Real period(3L, 128), t(Rational(1, 2), 128);
  // 0.75 + sum over 0 < |n| < M of e(n z / 3)
  auto f = [&](const Complex& z) {
    Complex s(Real(Rational(3, 4), 128), Real(0L, 128));
    for (long n = -M + 1; n < M; ++n) {
      if (n == 0) continue;
      Real ang = Real::pi(128) * 2L * z.re * n / 3L;
      Real mag = exp(-(Real::pi(128) * 2L * z.im * n / 3L));
      s += Complex(mag * cos(ang), mag * sin(ang));
    }
    return s;
  };
  Complex m = horocycle_mean(f, period, M, t);
  CHECK(std::abs(m.re.to_double() - 0.75) < 1e-20);
  CHECK(std::abs(m.im.to_double()) < 1e-20);
  // The mode n = M aliases onto the constant.
  auto g = [&](const Complex& z) {
    Real ang = Real::pi(128) * 2L * z.re * M / 3L;
    return Complex(cos(ang), sin(ang));
  };
  CHECK(std::abs(horocycle_mean(g, period, M, t).re.to_double() - 1) < 1e-20);
}

TEST_CASE("extracted constant at infinity") {
  auto one = DirichletTable::from(RayClassCharacter::trivial(Q()));
  auto v = slash_and_extract(one, one, 4, {}, {});
  CHECK(v.value.contains(Rational(1, 240)));
  CHECK(v.value.rad() < 1e-20);
  // S = [[0, -1], [1, 0]] fixes E_4 for level one.
  auto s = slash_and_extract(one, one, 4, Sl2{0, -1, 1, 0}, {});
  CHECK(std::abs(s.value.mid().re.to_double() - 1.0 / 240) < 1e-20);
  auto w = slash_and_extract(one, one, 6, Sl2{0, -1, 1, 0}, {});
  CHECK(std::abs(w.value.mid().re.to_double() + 1.0 / 504) < 1e-20);
}

TEST_CASE("weight two: holomorphic part is 1 - 24 q - ...") {
  // G_2(z, 0, 0, 1) + pi / y = 2 zeta(2) (1 - 24 sum sigma_1(n) q^n).
  const Precision p = 128;
  Real y(Rational(3, 4), p);
  Real scale = Real(3L, p) / (Real::pi(p) * Real::pi(p));  // 1 / (2 zeta(2))
  auto holo = [&](const Complex& z) {
    LatticeSumSpec s{2, 1, 0, 0, z, 60};
    Complex g = g_k_fourier(s, p).value.mid();
    g += Complex(Real::pi(p) / z.im, Real(0L, p));
    return g * scale;
  };
  // Shift by e(-z) so that the q^1 coefficient becomes the constant mode.
  auto shifted = [&](const Complex& z) {
    Real ang = -(Real::pi(p) * 2L * z.re);
    Real mag = exp(Real::pi(p) * 2L * z.im);
    return holo(z) * Complex(mag * cos(ang), mag * sin(ang));
  };
  Complex c0 = horocycle_mean(holo, Real(1L, p), 41, y);
  Complex c1 = horocycle_mean(shifted, Real(1L, p), 41, y);
  CHECK(std::abs(c0.re.to_double() - 1) < 1e-8);
  CHECK(std::abs(c1.re.to_double() + 24) < 1e-8);
  CHECK(std::abs(c1.im.to_double()) < 1e-8);
}
