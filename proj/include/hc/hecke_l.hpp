#pragma once

// Hecke L-values: ideal enumeration, truncated Dirichlet series at k >= 2,
// special values at 1 - k through the functional equation, and exact
// generalized Bernoulli values over Q.

#include "hc/numeric/ball.hpp"
#include "hc/ray_class.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hc {

struct IdealOfNorm {
  FractionalIdeal ideal;
  long norm;
};

/// Every integral ideal of norm <= X exactly once, ordered by norm and then
/// by the canonical ideal order.
std::vector<IdealOfNorm> ideals_by_norm(const Field& F, long X);

enum class LMethod { DirichletSeries, FunctionalEquation, BernoulliExact };
std::string to_string(LMethod m);

struct LValue {
  long point = 0;  // s0
  Ball value;
  /// Set when the value is certified exact (Bernoulli path, or rational
  /// reconstruction that passed the two-precision gate).
  std::optional<Cyclotomic> exact;
  LMethod method = LMethod::DirichletSeries;
  long truncation = 0;
  /// Tail estimate; heuristic (see tail_is_heuristic).
  double error_bound = 0;
  bool tail_is_heuristic = true;
  std::vector<std::string> warnings;
};

/// sum_{N a <= X} chi(a) N(a)^{-k}, k >= 2, compensated, fixed order.
LValue l_series(const RayClassCharacter& chi, long k, long X, Precision prec = 128);

/// L(chi, k) for k >= 2 and primitive chi of parallel signature k mod 2,
/// by the smoothed approximate functional equation. Degree <= 2.
Ball l_value_at(const RayClassCharacter& chi, long k, Precision prec = 128, long* terms_used = nullptr);

struct SpecialValueOptions {
  Precision prec = 128;
  /// Rational reconstruction for real values (degree 2 path).
  bool reconstruct = true;
  /// Second precision of the reconstruction gate is prec + gate_extra_bits.
  Precision gate_extra_bits = 64;
  Integer max_denominator = Integer(1000000);
};

/// L(chi, 1 - k). chi must be primitive. Over Q the generalized Bernoulli
/// value is exact and checked against the functional-equation path.
LValue l_special_value(const RayClassCharacter& chi, long k, const SpecialValueOptions& opt = {});

/// L(chi, 1 - k) = -B_{k, chi} / k for a primitive character over Q.
Cyclotomic bernoulli_exact(const RayClassCharacter& chi, long k);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(long n);

/// Best continued-fraction convergent p/q of x with q <= max_den and
/// |x - p/q| <= tol; nullopt when none qualifies.
std::optional<Rational> rational_reconstruction(const Real& x, const Integer& max_den, const Real& tol);

/// Residue of the Dedekind zeta function at s = 1: 2^{d-1} h R / sqrt|d_F|.
Real dedekind_residue(const Field& F, Precision prec);

}  // namespace hc
