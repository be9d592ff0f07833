#pragma once

// Numeric oracle over Q built from the partial lattice sums
// G_k(z, a1, a2, N) = sum over (a, b) ≡ (a1, a2) mod N, (a, b) != 0, of
// (az + b)^{-k}: direct summation, the closed Fourier expansion, the
// normalized series E_k(eta, psi), and constant terms after a slash by
// SL2(Z), extracted by averaging over a horocycle.

#include "hc/numeric/ball.hpp"
#include "hc/cusp.hpp"
#include "hc/ray_class.hpp"

#include <array>
#include <functional>
#include <vector>

namespace hc::oracle_q {

struct LatticeSumSpec {
  long k = 4;
  long N = 1;
  long a1 = 0, a2 = 0;
  Complex z{Real(0L, 128), Real(1L, 128)};
  /// Box |a|, |b| <= B for the direct sum; m|a| <= B for the Fourier sums.
  long truncation = 40;
};

struct OracleValue {
  Ball value;
  /// Truncation error estimate folded into value.rad().
  double tail = 0;
  bool tail_is_heuristic = true;
  long terms = 0;
};

/// sum over n of (x + n)^{-s} for n >= 0, s >= 2, 0 < x <= 1, by Euler-Maclaurin.
Real hurwitz_zeta(long s, const Rational& x, Precision prec);

/// sum over b ≡ a2 mod N, b != 0 of b^{-k}.
Real residue_zeta(long k, long a2, long N, Precision prec);

OracleValue g_k_direct(const LatticeSumSpec& s, Precision prec = 128);
OracleValue g_k_fourier(const LatticeSumSpec& s, Precision prec = 128);

/// Values of a Dirichlet character mod its conductor: chi(a) = psi_f(a).
struct DirichletTable {
  long modulus = 1;
  std::vector<Cyclotomic> values;  // index a mod modulus
  static DirichletTable from(const RayClassCharacter& chi);
  const Cyclotomic& operator()(long a) const;
  DirichletTable inverse() const;
  bool is_trivial() const { return modulus == 1; }
};

/// tau(psi) = sum_{m=1}^{v} psi(m) e(m / v).
Cyclotomic classical_gauss_sum(const DirichletTable& psi);

struct Sl2 {
  long a = 1, b = 0, c = 0, d = 1;
};

/// [[a, b], [c, d]] in SL2(Z) with the given coprime first column.
Sl2 complete_column(long a, long c);

/// The element of Γ(O; O, t) over Q acting as g does on the classical
/// series, t = sZ with s > 0: [[a, b / s], [c s, d]].
Mat2 hilbert_matrix(const Sl2& g, const FractionalIdeal& twist);

/// E_k(eta, psi) evaluated at z through G_k | gamma by the transformation
/// law (residue shuffling) and the Fourier expansion of each G_k.
OracleValue eisenstein_q(const DirichletTable& eta, const DirichletTable& psi, long k, const Complex& z,
                         const Sl2& gamma = {}, long truncation = 0, Precision prec = 128);

struct ExtractOptions {
  Real height{10L, 128};
  /// Fourier truncation; 0 picks one from the precision and height.
  long truncation = 0;
  Precision prec = 128;
};

/// Constant term of E_k(eta, psi) |_k gamma as the mean of M = 4B + 1
/// samples on the horocycle Im z = t over one period N.
OracleValue slash_and_extract(const DirichletTable& eta, const DirichletTable& psi, long k, const Sl2& gamma,
                              const ExtractOptions& opt = {});

/// Mean of f over M equally spaced points x_j = x0 + period * j / M at
/// height t. Kills every Fourier mode e(n x / period) with 0 < |n| < M.
Complex horocycle_mean(const std::function<Complex(const Complex&)>& f, const Real& period, long M,
                       const Real& t);

}  // namespace hc::oracle_q
