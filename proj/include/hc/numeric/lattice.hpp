#pragma once

// Exact integer linear algebra on Eigen matrices with GMP scalars.
// Lattices are spanned by matrix columns.

#include "hc/numeric/types.hpp"

#include <optional>

namespace hc {

struct ExtendedGcd {
  Integer g, x, y;  // g = x*a + y*b, g >= 0
};
ExtendedGcd xgcd(const Integer& a, const Integer& b);

/// Column Hermite form. A * U = [0 | H] with U unimodular; H has
/// rank(A) columns, pivots at the bottom-right staircase, positive pivots,
/// and entries right of a pivot reduced into [0, pivot).
struct HermiteForm {
  ZMatrix H;
  ZMatrix U;
  std::vector<int> pivot_rows;  // pivot row of each column of H
};
HermiteForm hermite_form(const ZMatrix& A);

/// HNF basis of a full-rank lattice in Z^m: m x m upper triangular.
/// Throws InternalError if the columns do not span a rank-m lattice.
ZMatrix hermite_normal_form(const ZMatrix& A);

/// Basis (as columns) of {x in Z^n : A x = 0}.
ZMatrix integer_kernel(const ZMatrix& A);

/// Some x in Z^n with A x = b, if one exists.
std::optional<ZVector> solve_integer(const ZMatrix& A, const ZVector& b);

/// U * A * V = diag(d) with U, V unimodular, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  std::vector<Integer> diagonal;  // length min(rows, cols)
  ZMatrix U;
  ZMatrix V;
};
SmithForm smith_form(const ZMatrix& A);

Integer determinant(const ZMatrix& A);
Rational determinant(const QMatrix& A);
QMatrix inverse(const QMatrix& A);
ZMatrix inverse_unimodular(const ZMatrix& U);

QMatrix to_rational(const ZMatrix& A);

/// Common positive denominator of all entries.
Integer common_denominator(const QMatrix& A);

/// Matrix multiplication helpers that avoid Eigen's lazy products across
/// mixed scalar types.
ZMatrix mul(const ZMatrix& A, const ZMatrix& B);
QMatrix mul(const QMatrix& A, const QMatrix& B);

/// Reduce integer vector v modulo the lattice spanned by the columns of an
/// upper triangular HNF basis H (square): result has 0 <= v_i < H_ii.
ZVector reduce_mod_hnf(const ZMatrix& H, ZVector v);

/// Lexicographic comparison of same-shaped integer matrices (row-major).
int compare(const ZMatrix& A, const ZMatrix& B);

}  // namespace hc
