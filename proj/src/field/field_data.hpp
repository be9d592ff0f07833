#pragma once

// Private layout of a field description, shared by the field and ideal
// implementation files.

#include "hc/field.hpp"

#include <map>
#include <mutex>

namespace hc::detail {

struct RootInterval {
  Rational lo, hi;  // exactly one root in (lo, hi); p(lo), p(hi) nonzero
};

struct FieldData {
  int d = 1;
  std::vector<Integer> poly;  // monic, c_0 .. c_d
  QMatrix basis;              // power-basis coordinates of ω_j (columns)
  QMatrix basis_inv;
  std::vector<std::vector<Integer>> mt;  // mt[i*d+j] = coords of ω_i ω_j
  std::vector<Integer> tr;
  ZMatrix trform;
  Integer disc;
  std::vector<QVector> units;
  bool unit_data = false;
  bool class_data = false;
  std::optional<long> D;  // real quadratic shorthand
  bool half_basis = false;  // D ≡ 1 mod 4: ω_1 = (1+√D)/2

  // Monotone caches; guarded by mu.
  mutable std::mutex mu;
  mutable std::vector<RootInterval> roots;
  mutable std::map<Precision, std::vector<Real>> root_values;
  mutable std::once_flag different_once;
  mutable ZMatrix different_hnf;
  mutable Integer different_den;
  mutable std::once_flag codifferent_once;
  mutable ZMatrix codifferent_hnf;
  mutable Integer codifferent_den;

  // Power-basis coordinates of an integral-basis coordinate vector.
  QVector to_power(const QVector& c) const;
};

// Sturm-sequence helpers on rational polynomials (constant term first).
using QPoly = std::vector<Rational>;
Rational eval(const QPoly& p, const Rational& x);
int sign_changes_at(const std::vector<QPoly>& sturm, const Rational& x);
std::vector<QPoly> sturm_sequence(const QPoly& p);

/// Reduced quadratic irrational ω + m with Z + (ω + m)Z = O (real quadratic).
FieldElement principal_reduced(const Field& F);

/// Reduced: θ^{σ1} > 1 and -1 < θ^{σ2} < 0.
bool is_reduced_quadratic(const FieldElement& theta);

}  // namespace hc::detail
