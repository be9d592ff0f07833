#include "hc/ideal.hpp"

#include "../field/field_data.hpp"

#include <algorithm>
#include <cctype>

namespace hc {

FractionalIdeal FractionalIdeal::from_lattice(const Field& F, const ZMatrix& M, const Integer& den) {
  if (den <= 0) throw ValidationError("ideal denominator must be positive");
  HermiteForm hf = hermite_form(M);
  if (hf.H.cols() != F.degree()) throw ValidationError("zero or degenerate ideal");
  ZMatrix H = hf.H;
  Integer g = den;
  for (Eigen::Index i = 0; i < H.rows(); ++i)
    for (Eigen::Index j = 0; j < H.cols(); ++j)
      if (H(i, j) != 0) g = gcd(g, H(i, j));
  Integer d = den;
  if (g != 1) {
    for (Eigen::Index i = 0; i < H.rows(); ++i)
      for (Eigen::Index j = 0; j < H.cols(); ++j) H(i, j) /= g;
    d /= g;
  }
  return FractionalIdeal(F, std::move(H), std::move(d));
}

FractionalIdeal FractionalIdeal::from_rational_basis(const Field& F, const QMatrix& B) {
  Integer l = common_denominator(B);
  ZMatrix M(B.rows(), B.cols());
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) M(i, j) = num(B(i, j) * Rational(l));
  return from_lattice(F, M, l);
}

FractionalIdeal FractionalIdeal::generated_by(const Field& F, const std::vector<FieldElement>& gens) {
  const int d = F.degree();
  if (gens.empty()) throw ValidationError("ideal needs at least one generator");
  QMatrix B(d, d * static_cast<int>(gens.size()));
  bool nonzero = false;
  for (size_t g = 0; g < gens.size(); ++g) {
    if (!gens[g].is_zero()) nonzero = true;
    QMatrix R = gens[g].regular_matrix();
    B.middleCols(static_cast<Eigen::Index>(g) * d, d) = R;
  }
  if (!nonzero) throw ValidationError("zero ideal");
  return from_rational_basis(F, B);
}

FractionalIdeal FractionalIdeal::principal(const FieldElement& a) {
  if (a.is_zero()) throw ValidationError("zero ideal");
  return from_rational_basis(a.field(), a.regular_matrix());
}

FractionalIdeal FractionalIdeal::parse(const Field& F, const std::string& lit) {
  size_t a = lit.find_first_not_of(" \t");
  size_t b = lit.find_last_not_of(" \t");
  if (a == std::string::npos || lit[a] != '[')
    throw ValidationError("malformed ideal literal '" + lit + "' at position " +
                          std::to_string(a == std::string::npos ? 0 : a) + ": expected '['");
  if (lit[b] != ']')
    throw ValidationError("malformed ideal literal '" + lit + "' at position " + std::to_string(b) +
                          ": expected ']'");
  std::vector<FieldElement> gens;
  size_t start = a + 1;
  int depth = 0;
  for (size_t i = a + 1; i <= b; ++i) {
    char c = lit[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' && depth == 0) || i == b) {
      std::string piece = lit.substr(start, i - start);
      try {
        gens.push_back(FieldElement::parse(F, piece));
      } catch (const ValidationError& e) {
        throw ValidationError("malformed ideal literal '" + lit + "' at position " +
                              std::to_string(start) + ": " + e.what());
      }
      start = i + 1;
    }
  }
  return generated_by(F, gens);
}

QMatrix FractionalIdeal::basis() const {
  QMatrix B = to_rational(H_);
  Rational inv(Integer(1), den_);
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) B(i, j) *= inv;
  return B;
}

FieldElement FractionalIdeal::basis_element(int j) const {
  return FieldElement(F_, QVector(basis().col(j)));
}

std::vector<FieldElement> FractionalIdeal::basis_elements() const {
  QMatrix B = basis();
  std::vector<FieldElement> out;
  for (int j = 0; j < degree(); ++j) out.emplace_back(F_, QVector(B.col(j)));
  return out;
}

Rational FractionalIdeal::norm() const {
  Integer det = 1;
  for (int i = 0; i < degree(); ++i) det *= H_(i, i);
  return Rational(det) / Rational(pow(den_, static_cast<unsigned>(degree())));
}

bool FractionalIdeal::is_one() const {
  if (den_ != 1) return false;
  for (int i = 0; i < degree(); ++i)
    for (int j = 0; j < degree(); ++j)
      if (H_(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool FractionalIdeal::is_module() const {
  for (auto& b : basis_elements())
    for (int i = 0; i < degree(); ++i)
      if (!contains(b * FieldElement::basis(F_, i))) return false;
  return true;
}

QVector FractionalIdeal::coordinates(const FieldElement& x) const {
  const int d = degree();
  QVector v(d);
  for (int i = 0; i < d; ++i) v(i) = x[i] * Rational(den_);
  QVector u(d);
  for (int j = d - 1; j >= 0; --j) {
    u(j) = v(j) / Rational(H_(j, j));
    for (int i = 0; i <= j; ++i) v(i) -= u(j) * Rational(H_(i, j));
  }
  return u;
}

bool FractionalIdeal::contains(const FieldElement& x) const {
  QVector u = coordinates(x);
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (!is_integer(u(i))) return false;
  return true;
}

bool FractionalIdeal::contains(const FractionalIdeal& J) const {
  for (auto& b : J.basis_elements())
    if (!contains(b)) return false;
  return true;
}

namespace {

// Trace dual {x : Tr(x y) ∈ Z for y in L}; basis (T B)^{-T}.
FractionalIdeal dual(const FractionalIdeal& L) {
  QMatrix T = to_rational(L.field().trace_form());
  QMatrix TB = mul(T, L.basis());
  QMatrix inv = inverse(TB);
  return FractionalIdeal::from_rational_basis(L.field(), QMatrix(inv.transpose()));
}

}  // namespace

FractionalIdeal FractionalIdeal::inverse() const {
  return dual(*this * F_.codifferent());
}

FractionalIdeal FractionalIdeal::intersect(const FractionalIdeal& o) const {
  const int d = degree();
  Integer L = lcm(den_, o.den_);
  ZMatrix A = H_ * Integer(L / den_);
  ZMatrix B = o.H_ * Integer(L / o.den_);
  ZMatrix S(d, 2 * d);
  S.leftCols(d) = A;
  S.rightCols(d) = -B;
  ZMatrix K = integer_kernel(S);
  ZMatrix top = K.topRows(d);
  return from_lattice(F_, mul(A, top), L);
}

FractionalIdeal FractionalIdeal::colon(const FractionalIdeal& o) const { return *this * o.inverse(); }

std::string FractionalIdeal::str() const {
  // Two-element style: (first basis element, second, ...) / den.
  std::string s = "[";
  auto b = basis_elements();
  for (size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + b[i].str();
  return s + "]";
}

FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b) {
  const int d = a.degree();
  const Field& F = a.field();
  ZMatrix M(d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // (H_a e_i) * (H_b e_j) as integer combination of ω_r ω_s.
      for (int r = 0; r < d; ++r) M(r, i * d + j) = 0;
      for (int r = 0; r < d; ++r) {
        if (a.hnf()(r, i) == 0) continue;
        for (int s = 0; s < d; ++s) {
          if (b.hnf()(s, j) == 0) continue;
          Integer c = a.hnf()(r, i) * b.hnf()(s, j);
          const auto& t = F.mult(r, s);
          for (int k = 0; k < d; ++k)
            if (t[k] != 0) M(k, i * d + j) += c * t[k];
        }
      }
    }
  return FractionalIdeal::from_lattice(F, M, a.denom() * b.denom());
}

FractionalIdeal operator*(const FractionalIdeal& a, const FieldElement& x) {
  if (x.is_zero()) throw ValidationError("zero ideal");
  QMatrix R = x.regular_matrix();
  return FractionalIdeal::from_rational_basis(a.field(), mul(R, a.basis()));
}
FractionalIdeal operator*(const FieldElement& x, const FractionalIdeal& a) { return a * x; }

FractionalIdeal operator+(const FractionalIdeal& a, const FractionalIdeal& b) {
  const int d = a.degree();
  Integer L = lcm(a.denom(), b.denom());
  ZMatrix M(d, 2 * d);
  M.leftCols(d) = a.hnf() * Integer(L / a.denom());
  M.rightCols(d) = b.hnf() * Integer(L / b.denom());
  return FractionalIdeal::from_lattice(a.field(), M, L);
}

FractionalIdeal operator/(const FractionalIdeal& a, const FractionalIdeal& b) { return a * b.inverse(); }

bool operator==(const FractionalIdeal& a, const FractionalIdeal& b) {
  return a.field() == b.field() && a.denom() == b.denom() && a.hnf() == b.hnf();
}

bool operator<(const FractionalIdeal& a, const FractionalIdeal& b) {
  Rational na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  if (a.denom() != b.denom()) return a.denom() < b.denom();
  return compare(a.hnf(), b.hnf()) < 0;
}

FractionalIdeal pow(const FractionalIdeal& a, long n) {
  if (n < 0) return pow(a.inverse(), -n);
  FractionalIdeal r = a.field().unit_ideal(), b = a;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

bool divides(const FractionalIdeal& a, const FractionalIdeal& b) { return a.contains(b); }

bool coprime(const FractionalIdeal& a, const FractionalIdeal& b) { return (a + b).is_one(); }

FieldElement element_outside(const FractionalIdeal& L, const std::vector<FractionalIdeal>& avoid) {
  const int d = L.degree();
  auto basis = L.basis_elements();
  auto ok = [&](const FieldElement& x) {
    if (x.is_zero()) return false;
    for (auto& S : avoid)
      if (S.contains(x)) return false;
    return true;
  };
  for (long r = 1; r <= 64; ++r) {
    // Coefficient vectors with max-norm exactly r.
    std::vector<long> c(d, -r);
    for (;;) {
      long mx = 0;
      for (long v : c) mx = std::max(mx, std::labs(v));
      if (mx == r) {
        FieldElement x(L.field());
        for (int j = 0; j < d; ++j) x += Rational(c[j]) * basis[j];
        if (ok(x)) return x;
      }
      int k = 0;
      while (k < d && ++c[k] > r) {
        c[k] = -r;
        ++k;
      }
      if (k == d) break;
    }
  }
  throw InternalError("element_outside: search exhausted");
}

FieldElement reduce_mod(const FieldElement& x, const FractionalIdeal& m) {
  ensure(m.is_integral() && x.is_integral(), "reduce_mod: integral inputs required");
  ZVector v(x.coords().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = num(x[static_cast<int>(i)]);
  ZVector r = reduce_mod_hnf(m.hnf(), v);
  QVector q(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) q(i) = Rational(r(i));
  return FieldElement(x.field(), q);
}

// ---------------------------------------------------------------------------
// Quotients and coset representatives.

long QuotientMap::size() const {
  long s = 1;
  for (auto& o : orders) s *= to_long(o);
  return s;
}

long QuotientMap::index(const ZVector& u) const {
  long idx = 0;
  for (size_t k = 0; k < rows.size(); ++k) {
    Integer c = 0;
    for (Eigen::Index j = 0; j < u.size(); ++j)
      if (U(rows[k], j) != 0) c += U(rows[k], j) * u(j);
    idx = idx * to_long(orders[k]) + to_long(mod(c, orders[k]));
  }
  return idx;
}

QuotientMap quotient_map(const FractionalIdeal& I, const FractionalIdeal& J) {
  if (!I.contains(J)) throw ValidationError("coset_representatives: J is not contained in I");
  const int d = I.degree();
  QMatrix BI = I.basis();
  QMatrix M = mul(inverse(BI), J.basis());
  ZMatrix Z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Z(i, j) = num(M(i, j));
  SmithForm sf = smith_form(Z);
  QuotientMap q;
  q.U = sf.U;
  ZMatrix Uinv = inverse_unimodular(sf.U);
  QMatrix F = mul(BI, to_rational(Uinv));
  std::vector<int> cols;
  for (int i = 0; i < d; ++i)
    if (sf.diagonal[i] != 1) {
      q.orders.push_back(sf.diagonal[i]);
      q.rows.push_back(i);
      cols.push_back(i);
    }
  q.generators = QMatrix(d, static_cast<Eigen::Index>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) q.generators.col(k) = F.col(cols[k]);
  return q;
}

std::vector<FieldElement> coset_representatives(const FractionalIdeal& I, const FractionalIdeal& J) {
  QuotientMap q = quotient_map(I, J);
  const Field& F = I.field();
  std::vector<FieldElement> out;
  const long n = q.size();
  out.reserve(n);
  std::vector<long> digits(q.orders.size(), 0);
  for (long idx = 0; idx < n; ++idx) {
    long t = idx;
    for (size_t k = q.orders.size(); k-- > 0;) {
      long o = to_long(q.orders[k]);
      digits[k] = t % o;
      t /= o;
    }
    QVector c = QVector::Zero(F.degree());
    for (size_t k = 0; k < digits.size(); ++k)
      if (digits[k])
        for (int i = 0; i < F.degree(); ++i) c(i) += Rational(digits[k]) * q.generators(i, k);
    out.emplace_back(F, c);
  }
  return out;
}

}  // namespace hc
