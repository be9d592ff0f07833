#pragma once

// Numeric oracle for Hilbert Eisenstein series over Q and real quadratic
// fields: direct summation of the defining series over pairs (a, b) modulo
// the unit subgroup U, truncated to an embedding box, and constant-term
// extraction by averaging over translates. Weights are exact; only the
// factors (a z + b)^{-k} are summed in double precision.

#include "hc/eisenstein.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace hc::oracle_hilbert {

using cplx = std::complex<double>;

struct SeriesEvalSpec {
  EisensteinSpec spec;
  int lambda = 0;
  /// One point of the upper half plane per real embedding.
  std::vector<cplx> z;
  /// Evaluate E_λ | A instead of E_λ; A in SL2(F).
  std::optional<Mat2> slash;
  /// |a^σ|, |b^σ| <= box for every embedding σ, after U-reduction. With a
  /// slash the box bounds the slashed pair (a α + b γ, a β + b δ), so the
  /// pairs carrying the constant term at the cusp A∞ are never cut off.
  double box = 20;
};

struct SeriesValue {
  cplx value;
  /// Heuristic: |prefactor| sum N(r)^k box^{2-k} (degree one), box^{1-k} (degree two).
  double tail = 0;
  long terms = 0;
};

/// Canonical representative of the U-orbit of (a, b): the first nonzero entry
/// x has 1 <= |x^1 / x^2| < |u^1 / u^2| for the generator u of U (degree 2),
/// and x^1 > 0 when -1 lies in U.
std::pair<FieldElement, FieldElement> u_reduce(const FieldElement& a, const FieldElement& b,
                                               const UnitSubgroup& U);

/// True if (a, b) is already its own canonical representative.
bool is_u_reduced(const FieldElement& a, const FieldElement& b, const UnitSubgroup& U);

SeriesValue evaluate_series(const SeriesEvalSpec& s);

struct ExtractResult {
  /// Normalized constant term c_λ(0, E | A) = a_λ(0) N(t_λ)^{-k/2}.
  cplx value;
  /// max |value(h) - value(h')| across heights.
  double spread = 0;
  double tail = 0;
  long terms = 0;
  std::vector<cplx> per_height;
};

/// Mean of evaluate_series over the mesh^d points x = sum_j (i_j / mesh) w_j
/// of the period lattice of E | A, at z = x + i h for each height h. The
/// lattice is γ^{-2} m t d ∩ α^{-2} (t d)^{-1} ∩ (α γ)^{-1} m, dropping the
/// factors with a zero entry; (t d)^{-1} without a slash.
ExtractResult extract_constant(const SeriesEvalSpec& s, const std::vector<double>& heights, long mesh);

}  // namespace hc::oracle_hilbert
