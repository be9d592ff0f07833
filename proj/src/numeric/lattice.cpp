#include "hc/numeric/lattice.hpp"

#include <utility>

namespace hc {

ExtendedGcd xgcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

namespace {

void add_col_multiple(ZMatrix& M, Eigen::Index dst, Eigen::Index src, const Integer& f) {
  if (f == 0) return;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    if (M(i, src) != 0) M(i, dst) += f * M(i, src);
}

void negate_col(ZMatrix& M, Eigen::Index c) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) M(i, c) = -M(i, c);
}

// Replace columns (p, q) by (x*p + y*q, u*q - v*p) where g = x*a + y*b,
// a = W(row,p), b = W(row,q), u = a/g, v = b/g. Unimodular since x*u + y*v = 1.
void gcd_combine(ZMatrix& M, Eigen::Index p, Eigen::Index q, const Integer& x, const Integer& y,
                 const Integer& u, const Integer& v) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Integer mp = M(i, p), mq = M(i, q);
    M(i, p) = x * mp + y * mq;
    M(i, q) = u * mq - v * mp;
  }
}

}  // namespace

HermiteForm hermite_form(const ZMatrix& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  ZMatrix W = A;
  ZMatrix U = ZMatrix::Identity(n, n);
  Eigen::Index pc = n - 1;
  std::vector<int> pivots_rev;
  for (Eigen::Index i = m - 1; i >= 0 && pc >= 0; --i) {
    for (Eigen::Index j = 0; j < pc; ++j) {
      if (W(i, j) == 0) continue;
      const Integer a = W(i, pc), b = W(i, j);
      ExtendedGcd e = xgcd(a, b);
      const Integer u = a / e.g, v = b / e.g;
      gcd_combine(W, pc, j, e.x, e.y, u, v);
      gcd_combine(U, pc, j, e.x, e.y, u, v);
    }
    if (W(i, pc) == 0) continue;
    if (W(i, pc) < 0) {
      negate_col(W, pc);
      negate_col(U, pc);
    }
    for (Eigen::Index c = pc + 1; c < n; ++c) {
      Integer f = -floor_div(W(i, c), W(i, pc));
      add_col_multiple(W, c, pc, f);
      add_col_multiple(U, c, pc, f);
    }
    pivots_rev.push_back(static_cast<int>(i));
    --pc;
  }
  const Eigen::Index r = n - 1 - pc;
  HermiteForm out;
  out.H = W.rightCols(r);
  out.U = std::move(U);
  out.pivot_rows.assign(pivots_rev.rbegin(), pivots_rev.rend());
  return out;
}

ZMatrix hermite_normal_form(const ZMatrix& A) {
  HermiteForm hf = hermite_form(A);
  ensure(hf.H.cols() == A.rows(), "hermite_normal_form: lattice is not full rank");
  return hf.H;
}

ZMatrix integer_kernel(const ZMatrix& A) {
  HermiteForm hf = hermite_form(A);
  const Eigen::Index k = A.cols() - hf.H.cols();
  return hf.U.leftCols(k);
}

std::optional<ZVector> solve_integer(const ZMatrix& A, const ZVector& b) {
  HermiteForm hf = hermite_form(A);
  const Eigen::Index r = hf.H.cols(), n = A.cols();
  ZVector rest = b;
  ZVector y = ZVector::Zero(n);
  for (Eigen::Index j = r - 1; j >= 0; --j) {
    const int p = hf.pivot_rows[j];
    if (rest(p) % hf.H(p, j) != 0) return std::nullopt;
    Integer q = rest(p) / hf.H(p, j);
    y(n - r + j) = q;
    for (Eigen::Index i = 0; i < A.rows(); ++i) rest(i) -= q * hf.H(i, j);
  }
  for (Eigen::Index i = 0; i < rest.size(); ++i)
    if (rest(i) != 0) return std::nullopt;
  ZVector x = ZVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (y(j) != 0) x(i) += hf.U(i, j) * y(j);
  return x;
}

SmithForm smith_form(const ZMatrix& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  ZMatrix D = A;
  ZMatrix U = ZMatrix::Identity(m, m);
  ZMatrix V = ZMatrix::Identity(n, n);
  auto swap_rows = [](ZMatrix& M, Eigen::Index a, Eigen::Index b) {
    if (a != b) M.row(a).swap(M.row(b));
  };
  auto swap_cols = [](ZMatrix& M, Eigen::Index a, Eigen::Index b) {
    if (a != b) M.col(a).swap(M.col(b));
  };
  auto add_row = [](ZMatrix& M, Eigen::Index dst, Eigen::Index src, const Integer& f) {
    if (f == 0) return;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (M(src, j) != 0) M(dst, j) += f * M(src, j);
  };
  const Eigen::Index t_max = std::min(m, n);
  for (Eigen::Index t = 0; t < t_max; ++t) {
    for (;;) {
      // smallest nonzero entry in the remaining block becomes the pivot
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j)
          if (D(i, j) != 0 && (pi < 0 || boost::multiprecision::abs(D(i, j)) <
                                             boost::multiprecision::abs(D(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;
      swap_rows(D, t, pi);
      swap_rows(U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(V, t, pj);
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = -floor_div(D(i, t), D(t, t));
        add_row(D, i, t, q);
        add_row(U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = -floor_div(D(t, j), D(t, t));
        add_col_multiple(D, j, t, q);
        add_col_multiple(V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: pivot must divide every entry of the remaining block
      bool divides = true;
      for (Eigen::Index i = t + 1; i < m && divides; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            add_row(D, t, i, Integer(1));
            add_row(U, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (Eigen::Index j = 0; j < n; ++j) D(t, j) = -D(t, j);
      for (Eigen::Index j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
  }
done:
  SmithForm out;
  out.diagonal.resize(t_max);
  for (Eigen::Index t = 0; t < t_max; ++t) out.diagonal[t] = D(t, t);
  out.U = std::move(U);
  out.V = std::move(V);
  return out;
}

Integer determinant(const ZMatrix& A) {
  ensure(A.rows() == A.cols(), "determinant: non-square");
  const Eigen::Index n = A.rows();
  if (n == 0) return Integer(1);
  ZMatrix M = A;
  Integer prev = 1;
  int sgn = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (M(k, k) == 0) {
      Eigen::Index s = k + 1;
      while (s < n && M(s, k) == 0) ++s;
      if (s == n) return Integer(0);
      M.row(k).swap(M.row(s));
      sgn = -sgn;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sgn * M(n - 1, n - 1);
}

Rational determinant(const QMatrix& A) {
  ensure(A.rows() == A.cols(), "determinant: non-square");
  const Eigen::Index n = A.rows();
  QMatrix M = A;
  Rational det = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index s = k;
    while (s < n && M(s, k) == 0) ++s;
    if (s == n) return Rational(0);
    if (s != k) {
      M.row(k).swap(M.row(s));
      det = -det;
    }
    det *= M(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (M(i, k) == 0) continue;
      Rational f = M(i, k) / M(k, k);
      for (Eigen::Index j = k; j < n; ++j) M(i, j) -= f * M(k, j);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& A) {
  ensure(A.rows() == A.cols(), "inverse: non-square");
  const Eigen::Index n = A.rows();
  QMatrix M = A;
  QMatrix R = QMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index s = k;
    while (s < n && M(s, k) == 0) ++s;
    ensure(s < n, "inverse: singular matrix");
    M.row(k).swap(M.row(s));
    R.row(k).swap(R.row(s));
    Rational p = M(k, k);
    for (Eigen::Index j = 0; j < n; ++j) {
      M(k, j) /= p;
      R(k, j) /= p;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || M(i, k) == 0) continue;
      Rational f = M(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        M(i, j) -= f * M(k, j);
        R(i, j) -= f * R(k, j);
      }
    }
  }
  return R;
}

ZMatrix inverse_unimodular(const ZMatrix& U) {
  QMatrix inv = inverse(to_rational(U));
  ZMatrix out(U.rows(), U.cols());
  for (Eigen::Index i = 0; i < U.rows(); ++i)
    for (Eigen::Index j = 0; j < U.cols(); ++j) {
      ensure(is_integer(inv(i, j)), "inverse_unimodular: not unimodular");
      out(i, j) = num(inv(i, j));
    }
  return out;
}

QMatrix to_rational(const ZMatrix& A) {
  QMatrix out(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) out(i, j) = Rational(A(i, j));
  return out;
}

Integer common_denominator(const QMatrix& A) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) l = lcm(l, den(A(i, j)));
  return l;
}

ZMatrix mul(const ZMatrix& A, const ZMatrix& B) {
  ensure(A.cols() == B.rows(), "mul: shape mismatch");
  ZMatrix C = ZMatrix::Zero(A.rows(), B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      if (A(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < B.cols(); ++j)
        if (B(k, j) != 0) C(i, j) += A(i, k) * B(k, j);
    }
  return C;
}

QMatrix mul(const QMatrix& A, const QMatrix& B) {
  ensure(A.cols() == B.rows(), "mul: shape mismatch");
  QMatrix C = QMatrix::Zero(A.rows(), B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      if (A(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < B.cols(); ++j)
        if (B(k, j) != 0) C(i, j) += A(i, k) * B(k, j);
    }
  return C;
}

ZVector reduce_mod_hnf(const ZMatrix& H, ZVector v) {
  for (Eigen::Index j = H.cols() - 1; j >= 0; --j) {
    Integer q = floor_div(v(j), H(j, j));
    if (q == 0) continue;
    for (Eigen::Index i = 0; i <= j; ++i) v(i) -= q * H(i, j);
  }
  return v;
}

int compare(const ZMatrix& A, const ZMatrix& B) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) < B(i, j)) return -1;
      if (B(i, j) < A(i, j)) return 1;
    }
  return 0;
}

}  // namespace hc
