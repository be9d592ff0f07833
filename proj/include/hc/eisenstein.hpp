#pragma once

// Eisenstein series E_k(eta, psi): normalized Fourier coefficients and the
// normalized constant terms at infinity, under slash operators in
// Γ_λ¹(O), and at every cusp class.

#include "hc/cusp.hpp"
#include "hc/hecke_l.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hc {

struct EisensteinSpec {
  long k = 0;
  RayClassCharacter eta;  // conductor a, signature q
  RayClassCharacter psi;  // conductor b, signature r
  FractionalIdeal level;  // m = a b
  /// t_λ per narrow class with b d t_λ integral and coprime to m.
  std::vector<FractionalIdeal> twists;
  Precision prec = 128;

  /// Validates primitivity and the parity q + r = (k, ..., k) mod 2.
  static EisensteinSpec make(const RayClassCharacter& eta, const RayClassCharacter& psi, long k,
                             Precision prec = 128);
  const Field& field() const { return eta.field(); }
};

struct ConstantTermReport {
  int lambda = 0;
  /// Label ideal r0 of the cusp class; nullopt for the class of infinity.
  std::optional<FractionalIdeal> cusp_label;
  std::optional<Mat2> matrix;
  Ball value;
  std::optional<Cyclotomic> exact;
  /// "b ∤ n1", "delta_psi_id = 0", "delta_eta_id = 0" or "parity".
  std::string vanishing_reason;
  /// "general-slash", "class-cusp", "upper-triangular" or "infinity".
  std::string formula_path;
  std::string conventions;
  std::vector<std::string> warnings;

  bool vanishes() const { return !vanishing_reason.empty(); }
};

/// c(n, E) = sum over n1 | n of eta(n/n1) psi(n1) N(n1)^{k-1}.
Cyclotomic coefficient(const EisensteinSpec& E, const FractionalIdeal& n);

ConstantTermReport constant_at_infinity(const EisensteinSpec& E);

/// Normalized constant term of E_λ | A for A ∈ Γ_λ¹(O).
ConstantTermReport constant_under_slash(const EisensteinSpec& E, int lambda, const Mat2& A);

/// The same constant term before the functional equation is applied:
/// C [O^x : U] tau(psi) N(b)^{k-1} |d_F|^k (sign and character factors)
/// L(eta psi^{-1}, k) times the Euler factors at m, with the L-value from the
/// approximate functional equation. Independent of the Bernoulli path.
Ball constant_under_slash_direct(const EisensteinSpec& E, int lambda, const Mat2& A);

/// Constant term at the cusp class of r0 (not the class of infinity), using
/// the explicit cusp matrix for r0.
ConstantTermReport constant_at_cusp(const EisensteinSpec& E, int lambda, const FractionalIdeal& r0);

/// One report per narrow class λ and wide cusp class, infinity first.
std::vector<ConstantTermReport> constant_term_table(const EisensteinSpec& E);

}  // namespace hc
