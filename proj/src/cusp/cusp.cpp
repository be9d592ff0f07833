#include "hc/cusp.hpp"

#include <Eigen/LU>

#include <cmath>

namespace hc {

Mat2 Mat2::identity(const Field& F) {
  FieldElement one(F, Rational(1)), zero(F);
  return Mat2{one, zero, zero, one};
}

Mat2 Mat2::parse(const Field& F, const std::string& lit) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : lit) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != '[' && ch != ']') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4)
    throw ValidationError("matrix literal '" + lit + "' must have four comma-separated entries, found " +
                          std::to_string(parts.size()));
  return Mat2{FieldElement::parse(F, parts[0]), FieldElement::parse(F, parts[1]), FieldElement::parse(F, parts[2]),
              FieldElement::parse(F, parts[3])};
}

Mat2 Mat2::inverse() const {
  FieldElement D = det();
  require(!D.is_zero(), "Mat2::inverse: singular matrix");
  FieldElement Di = D.inverse();
  return Mat2{d * Di, -(b * Di), -(c * Di), a * Di};
}

std::string Mat2::str() const { return a.str() + "," + b.str() + "," + c.str() + "," + d.str(); }

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return Mat2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

bool is_member(const Mat2& g, const GroupSpec& G) {
  const Field& F = G.level.field();
  FractionalIdeal dif = F.different();
  if (!g.a.is_integral() || !g.d.is_integral()) return false;
  if (!(G.twist * dif).inverse().contains(g.b)) return false;
  if (!(G.level * G.twist * dif).contains(g.c)) return false;
  FieldElement D = g.det();
  if (G.det == DetConstraint::One) return D == FieldElement(F, Rational(1));
  if (D.is_zero() || !D.is_integral() || !D.inverse().is_integral()) return false;
  return is_totally_positive(D);
}

FractionalIdeal il_ideal(const Mat2& m, const FractionalIdeal& t) {
  const Field& F = m.field();
  if (m.c.is_zero()) return FractionalIdeal::principal(m.a);
  FractionalIdeal cpart = m.c * (t * F.codifferent());
  if (m.a.is_zero()) return cpart;
  return cpart + FractionalIdeal::principal(m.a);
}

FractionalIdeal il_ideal_with_different(const Mat2& m, const FractionalIdeal& t) {
  const Field& F = m.field();
  if (m.c.is_zero()) return FractionalIdeal::principal(m.a);
  FractionalIdeal cpart = m.c * (t * F.different());
  if (m.a.is_zero()) return cpart;
  return cpart + FractionalIdeal::principal(m.a);
}

int il_class(const Mat2& m, const FractionalIdeal& t) {
  return class_group(m.field(), ClassKind::Wide).class_index(il_ideal(m, t));
}

namespace {

int rank(QMatrix A) {
  const Eigen::Index rows = A.rows(), cols = A.cols();
  int r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && A(p, c) == 0) ++p;
    if (p == rows) continue;
    A.row(p).swap(A.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (A(i, c) == 0) continue;
      Rational f = A(i, c) / A(r, c);
      for (Eigen::Index j = c; j < cols; ++j) A(i, j) -= f * A(r, j);
    }
    ++r;
  }
  return r;
}

FieldElement combination(const std::vector<FieldElement>& xs, const QVector& c) {
  FieldElement x(xs.front().field());
  for (size_t i = 0; i < xs.size(); ++i)
    if (c(static_cast<Eigen::Index>(i)) != 0) x += c(static_cast<Eigen::Index>(i)) * xs[i];
  return x;
}

}  // namespace

std::vector<FieldElement> positive_basis(const FractionalIdeal& L) {
  const Field& F = L.field();
  const int d = F.degree();
  auto basis = L.basis_elements();
  if (d == 1) {
    FieldElement v = basis[0];
    if (sign_at(v, 0) < 0) v = -v;
    return {v};
  }
  // Independent totally positive lattice points near points deep inside
  // the positive orthant, each pushed off the span of the previous ones.
  Eigen::MatrixXd M(d, d);
  double R = 0;
  for (int j = 0; j < d; ++j) {
    auto e = embeddings_double(basis[j]);
    for (int s = 0; s < d; ++s) {
      M(s, j) = e[s];
      R = std::max(R, std::fabs(e[s]));
    }
  }
  R *= d;
  Eigen::MatrixXd Minv = M.inverse();
  std::vector<FieldElement> xs;
  QMatrix X(d, 0);
  for (int i = 0; i < d; ++i) {
    for (int attempt = 1;; ++attempt) {
      ensure(attempt < 1000, "positive_basis: no independent positive point found");
      Eigen::VectorXd y = Eigen::VectorXd::Constant(d, 3 * R * attempt);
      y(i) += 2 * R * attempt;
      Eigen::VectorXd c = Minv * y;
      QVector q(d);
      for (int j = 0; j < d; ++j) q(j) = Rational(static_cast<long>(std::llround(c(j))));
      FieldElement x = combination(basis, q);
      if (x.is_zero() || !is_totally_positive(x)) continue;
      QMatrix Y(d, X.cols() + 1);
      Y.leftCols(X.cols()) = X;
      Y.col(X.cols()) = q;
      if (rank(Y) != Y.cols()) continue;
      X = Y;
      xs.push_back(x);
      break;
    }
  }
  // Exchange: while the span is a proper sublattice, replace x_j by a
  // nonnegative combination with fractional coefficients; the covolume
  // drops by the factor a_j < 1 and positivity is kept.
  for (;;) {
    Rational det = determinant(X);
    if (boost::multiprecision::abs(det) == 1) break;
    QMatrix Xinv = inverse(X);
    bool swapped = false;
    for (int k = 0; k < d && !swapped; ++k) {
      QVector a = Xinv.col(k);
      int j = -1;
      for (int i = 0; i < d; ++i) {
        a(i) = frac(a(i));
        if (a(i) != 0 && (j < 0 || a(i) < a(j))) j = i;
      }
      if (j < 0) continue;
      QVector coords = X * a;
      xs[j] = combination(xs, a);
      X.col(j) = coords;
      swapped = true;
    }
    ensure(swapped, "positive_basis: index > 1 but every basis vector lies in the span");
  }
  return xs;
}

FieldElement avoid_primes(const FractionalIdeal& L, const std::vector<PrimeIdeal>& primes) {
  if (primes.empty()) return positive_basis(L).front();
  FractionalIdeal C = L;
  for (auto& P : primes) C = C * P.ideal;
  FieldElement sum(L.field());
  for (auto& P : primes) {
    FractionalIdeal Ci = C * P.ideal.inverse();
    bool found = false;
    for (auto& v : positive_basis(Ci)) {
      if (!C.contains(v)) {
        sum += v;
        found = true;
        break;
      }
    }
    ensure(found, "avoid_primes: positive basis lies in the smaller lattice");
  }
  return sum;
}

FieldElement positive_generator_coprime(const FractionalIdeal& A, const FractionalIdeal& m) {
  require(m.is_integral(), "positive_generator_coprime: modulus must be integral");
  FieldElement a = avoid_primes(A, prime_divisors(m));
  ensure(is_totally_positive(a), "positive_generator_coprime: result not totally positive");
  return a;
}

std::vector<FractionalIdeal> twist_representatives(const FractionalIdeal& b, const FractionalIdeal& m) {
  const Field& F = b.field();
  auto narrow = class_group(F, ClassKind::Narrow);
  auto mp = prime_divisors(m);
  std::vector<FractionalIdeal> out;
  for (const auto& c : narrow.representatives()) {
    FractionalIdeal bdc = b * F.different() * c;
    FractionalIdeal c0 = F.unit_ideal();
    for (auto& P : mp) {
      int v = valuation(bdc, P);
      if (v > 0) c0 = c0 * pow(P.ideal, v);
    }
    FractionalIdeal t = c;
    if (!c0.is_one()) {
      // Smallest positive rational integer in c0; totally positive.
      FieldElement ce(F, Rational(c0.hnf()(0, 0), c0.denom()));
      FractionalIdeal n = FractionalIdeal::principal(ce) * c0.inverse();
      FieldElement a = positive_generator_coprime(n, m);
      t = c * (a / ce);
    }
    FractionalIdeal check = b * F.different() * t;
    ensure(check.is_integral() && coprime(check, m), "twist_representatives: postcondition failed");
    out.push_back(t);
  }
  return out;
}

FractionalIdeal coprime_in_class(const FractionalIdeal& r, const FractionalIdeal& m) {
  if (r.is_integral() && coprime(r, m)) return r;
  FractionalIdeal ri = r.inverse();
  std::vector<FractionalIdeal> avoid;
  for (auto& P : prime_divisors(m)) avoid.push_back(P.ideal * ri);
  FieldElement y = element_outside(ri, avoid);
  FractionalIdeal out = r * y;
  ensure(out.is_integral() && coprime(out, m), "coprime_in_class: postcondition failed");
  return out;
}

CuspRepresentative cusp_matrix(const FractionalIdeal& t, const FractionalIdeal& r0, const FractionalIdeal& b,
                               int lambda) {
  const Field& F = t.field();
  require(r0.is_integral(), "cusp_matrix: class label must be integral");
  if (r0.is_one()) {
    return CuspRepresentative{Mat2::identity(F), lambda, 0, r0, F.unit_ideal(), F.unit_ideal(), true};
  }
  const int d = F.degree();
  FractionalIdeal L = F.different() * t * r0;
  FieldElement gamma = avoid_primes(L, prime_divisors(b));
  FractionalIdeal n1 = FractionalIdeal::principal(gamma) * L.inverse();
  FieldElement alpha = positive_generator_coprime(r0, n1);
  FractionalIdeal n2 = FractionalIdeal::principal(alpha) * r0.inverse();

  // alpha*delta + gamma*(-beta) = 1 with delta ∈ r0^{-1}, -beta ∈ L^{-1}:
  // exhibit 1 in the Z-span of alpha*r0^{-1} + gamma*L^{-1} = O.
  auto D = r0.inverse().basis_elements();
  auto B = L.inverse().basis_elements();
  QMatrix G(d, 2 * d);
  for (int i = 0; i < d; ++i) {
    G.col(i) = (alpha * D[i]).coords();
    G.col(d + i) = (gamma * B[i]).coords();
  }
  QVector one = FieldElement(F, Rational(1)).coords();
  Integer den = 1;
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j) den = lcm(den, hc::den(G(i, j)));
  ZMatrix Z(d, 2 * d);
  ZVector rhs(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < 2 * d; ++j) Z(i, j) = num(G(i, j) * Rational(den));
    rhs(i) = num(one(i) * Rational(den));
  }
  auto x = solve_integer(Z, rhs);
  ensure(x.has_value(), "cusp_matrix: alpha r0^{-1} + gamma (d t r0)^{-1} does not contain 1");
  FieldElement delta(F), mbeta(F);
  for (int i = 0; i < d; ++i) {
    delta += Rational((*x)(i)) * D[i];
    mbeta += Rational((*x)(d + i)) * B[i];
  }
  Mat2 A{alpha, -mbeta, gamma, delta};
  ensure(A.det() == FieldElement(F, Rational(1)), "cusp_matrix: determinant is not 1");
  int idx = class_group(F, ClassKind::Wide).class_index(r0);
  return CuspRepresentative{A, lambda, idx, r0, n1, n2, false};
}

std::vector<CuspRepresentative> enumerate_cusps(const FractionalIdeal& t, const FractionalIdeal& b,
                                                const FractionalIdeal& m, int lambda) {
  const Field& F = t.field();
  auto wide = class_group(F, ClassKind::Wide);
  std::vector<CuspRepresentative> out;
  for (size_t i = 0; i < wide.representatives().size(); ++i) {
    FractionalIdeal r0 = i == 0 ? F.unit_ideal() : coprime_in_class(wide.representatives()[i], m);
    auto rep = cusp_matrix(t, r0, b, lambda);
    rep.class_index = static_cast<int>(i);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace hc
