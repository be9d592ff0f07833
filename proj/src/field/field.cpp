#include "hc/field.hpp"

#include "field_data.hpp"
#include "hc/ideal.hpp"
#include "hc/numeric/lattice.hpp"

#include <cctype>
#include <cmath>

namespace hc {
namespace detail {

QVector FieldData::to_power(const QVector& c) const {
  QVector out = QVector::Zero(d);
  for (int j = 0; j < d; ++j) {
    if (c(j) == 0) continue;
    for (int i = 0; i < d; ++i)
      if (basis(i, j) != 0) out(i) += basis(i, j) * c(j);
  }
  return out;
}

Rational eval(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

void trim(QPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

QPoly remainder(QPoly a, const QPoly& b) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !(a.size() == 1 && a[0] == 0)) {
    const int da = static_cast<int>(a.size()) - 1;
    Rational q = a.back() / b.back();
    for (int j = 0; j <= db; ++j) a[da - db + j] -= q * b[j];
    a.pop_back();
    trim(a);
    if (da == 0) break;
  }
  return a;
}

}  // namespace

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p};
  QPoly dp;
  for (size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long>(i));
  if (dp.empty()) return seq;
  seq.push_back(dp);
  for (;;) {
    QPoly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.size() == 1 && r[0] == 0) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
    if (r.size() == 1) break;
  }
  return seq;
}

int sign_changes_at(const std::vector<QPoly>& sturm, const Rational& x) {
  int changes = 0, last = 0;
  for (auto& p : sturm) {
    int s = sign(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

using detail::FieldData;
using detail::QPoly;

namespace {

QPoly qpoly(const std::vector<Integer>& p) {
  QPoly q;
  for (auto& c : p) q.push_back(Rational(c));
  return q;
}

// Multiply two power-basis vectors modulo the monic defining polynomial.
QVector power_mul(const FieldData& fd, const QVector& a, const QVector& b) {
  const int d = fd.d;
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < d; ++j)
      if (b(j) != 0) prod[i + j] += a(i) * b(j);
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    if (prod[k] == 0) continue;
    Rational c = prod[k];
    for (int j = 0; j < d; ++j) prod[k - d + j] -= c * Rational(fd.poly[j]);
    prod[k] = 0;
  }
  QVector out(d);
  for (int i = 0; i < d; ++i) out(i) = prod[i];
  return out;
}

std::vector<detail::RootInterval> isolate_roots(const std::vector<Integer>& poly) {
  QPoly p = qpoly(poly);
  const int d = static_cast<int>(poly.size()) - 1;
  std::vector<detail::RootInterval> out;
  if (d == 1) {
    Rational r = -Rational(poly[0]);
    out.push_back({r - 1, r + 1});
    return out;
  }
  auto sturm = detail::sturm_sequence(p);
  Integer bound = 1;
  for (int i = 0; i < d; ++i) bound = std::max(bound, Integer(boost::multiprecision::abs(poly[i])));
  Rational B(bound + 1);
  std::vector<std::pair<Rational, Rational>> stack{{-B, B}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = detail::sign_changes_at(sturm, lo) - detail::sign_changes_at(sturm, hi);
    if (n == 0) continue;
    if (n == 1 && detail::eval(p, lo) != 0 && detail::eval(p, hi) != 0) {
      out.push_back({lo, hi});
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.push_back({lo, mid});
    stack.push_back({mid, hi});
  }
  std::sort(out.begin(), out.end(),
            [](const detail::RootInterval& a, const detail::RootInterval& b) { return a.lo > b.lo; });
  return out;
}

void build_tables(FieldData& fd) {
  const int d = fd.d;
  fd.basis_inv = inverse(fd.basis);
  fd.mt.assign(d * d, std::vector<Integer>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      QVector prod = power_mul(fd, fd.basis.col(i), fd.basis.col(j));
      QVector c = QVector::Zero(d);
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) c(r) += fd.basis_inv(r, s) * prod(s);
      for (int r = 0; r < d; ++r) {
        if (!is_integer(c(r)))
          throw ValidationError("integral basis is not closed under multiplication");
        fd.mt[i * d + j][r] = num(c(r));
      }
    }
  // Tr(ω_i) = trace of the multiplication-by-ω_i matrix.
  fd.tr.assign(d, Integer(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) fd.tr[i] += fd.mt[i * d + j][j];
  fd.trform = ZMatrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Integer t = 0;
      for (int r = 0; r < d; ++r) t += fd.mt[i * d + j][r] * fd.tr[r];
      fd.trform(i, j) = t;
    }
  fd.disc = determinant(fd.trform);
  if (fd.disc == 0) throw ValidationError("degenerate basis: zero discriminant");
}

}  // namespace

Field Field::rationals() {
  FieldSpec s;
  s.poly = {Integer(0), Integer(1)};
  s.basis = QMatrix::Identity(1, 1);
  return make(s);
}

Field Field::quadratic(long D) {
  FieldSpec s;
  s.quadratic_D = D;
  return make(s);
}

namespace {
FieldElement quadratic_fundamental_unit(const Field& F);
}

Field Field::make(const FieldSpec& spec_in) {
  FieldSpec spec = spec_in;
  auto fd = std::make_shared<FieldData>();
  if (spec.quadratic_D) {
    const long D = *spec.quadratic_D;
    if (D <= 1 || !is_squarefree(Integer(D)))
      throw ValidationError("quadratic_D must be a squarefree integer > 1");
    fd->D = D;
    fd->half_basis = (D % 4 == 1);
    if (fd->half_basis)
      spec.poly = {Integer(-(D - 1) / 4), Integer(-1), Integer(1)};
    else
      spec.poly = {Integer(-D), Integer(0), Integer(1)};
    spec.basis = QMatrix::Identity(2, 2);
  }
  if (spec.poly.size() < 2) throw ValidationError("defining polynomial must have degree >= 1");
  if (spec.poly.back() != 1) throw ValidationError("defining polynomial must be monic");
  fd->d = static_cast<int>(spec.poly.size()) - 1;
  fd->poly = spec.poly;
  const int d = fd->d;
  if (spec.basis.rows() != d || spec.basis.cols() != d)
    throw ValidationError("integral basis must be a d x d matrix");
  for (int i = 0; i < d; ++i)
    if (spec.basis(i, 0) != (i == 0 ? 1 : 0))
      throw ValidationError("first integral basis element must be 1");
  if (determinant(spec.basis) == 0) throw ValidationError("integral basis is singular");
  fd->basis = spec.basis;
  if (d > 1) {
    auto sturm = detail::sturm_sequence(qpoly(spec.poly));
    Integer bound = 1;
    for (int i = 0; i < d; ++i)
      bound = std::max(bound, Integer(boost::multiprecision::abs(spec.poly[i])));
    Rational B(bound + 1);
    int real_roots = detail::sign_changes_at(sturm, -B) - detail::sign_changes_at(sturm, B);
    if (real_roots != d || sturm.back().size() != 1)
      throw ValidationError("defining polynomial is not totally real with distinct roots");
  }
  fd->roots = isolate_roots(spec.poly);
  build_tables(*fd);
  if (d >= 3) {
    if (spec.units.size() != static_cast<size_t>(d - 1) || !spec.class_number)
      throw UnsupportedError("insufficient field data: degree >= 3 requires units and class data");
    if (*spec.class_number != 1)
      throw UnsupportedError("insufficient field data: only class number 1 is supported for d >= 3");
    fd->class_data = true;
  }
  Field F;
  F.d_ = fd;
  for (auto& u : spec.units) {
    if (static_cast<int>(u.size()) != d) throw ValidationError("unit has wrong dimension");
    QVector c(d);
    for (int i = 0; i < d; ++i) c(i) = u[i];
    FieldElement e(F, c);
    if (!e.is_integral() || boost::multiprecision::abs(e.norm()) != 1)
      throw ValidationError("supplied unit is not a unit of O");
    fd->units.push_back(c);
  }
  fd->unit_data = d == 1 || !fd->units.empty();
  if (d == 2 && fd->units.empty()) {
    if (!fd->D) {
      // A quadratic field given by polynomial: fall back to the same CF code.
      throw UnsupportedError("insufficient field data: quadratic field by polynomial needs units");
    }
    fd->units.push_back(quadratic_fundamental_unit(F).coords());
    fd->unit_data = true;
  }
  if (d == 2) fd->class_data = true;
  if (d == 1) fd->class_data = true;
  return F;
}

int Field::degree() const { return d_->d; }
const std::vector<Integer>& Field::polynomial() const { return d_->poly; }
const QMatrix& Field::integral_basis() const { return d_->basis; }
const Integer& Field::discriminant() const { return d_->disc; }
std::vector<FieldElement> Field::unit_generators() const {
  std::vector<FieldElement> out;
  for (auto& c : d_->units) out.emplace_back(*this, c);
  return out;
}
bool Field::has_unit_data() const { return d_->unit_data; }
bool Field::has_class_data() const { return d_->class_data; }
std::optional<long> Field::quadratic_D() const { return d_->D; }
const std::vector<Integer>& Field::mult(int i, int j) const { return d_->mt[i * d_->d + j]; }
const Integer& Field::trace_of_basis(int i) const { return d_->tr[i]; }
const ZMatrix& Field::trace_form() const { return d_->trform; }

FractionalIdeal Field::codifferent() const {
  std::call_once(d_->codifferent_once, [&] {
    // Trace dual of O: basis T^{-1}.
    QMatrix inv = inverse(to_rational(d_->trform));
    Integer l = common_denominator(inv);
    ZMatrix M(d_->d, d_->d);
    for (int i = 0; i < d_->d; ++i)
      for (int j = 0; j < d_->d; ++j) M(i, j) = num(inv(i, j) * Rational(l));
    FractionalIdeal I = FractionalIdeal::from_lattice(*this, M, l);
    d_->codifferent_hnf = I.hnf();
    d_->codifferent_den = I.denom();
  });
  return FractionalIdeal::from_lattice(*this, d_->codifferent_hnf, d_->codifferent_den);
}

FractionalIdeal Field::different() const {
  std::call_once(d_->different_once, [&] {
    FractionalIdeal I = codifferent().inverse();
    d_->different_hnf = I.hnf();
    d_->different_den = I.denom();
  });
  return FractionalIdeal::from_lattice(*this, d_->different_hnf, d_->different_den);
}

FractionalIdeal Field::unit_ideal() const {
  return FractionalIdeal::from_lattice(*this, ZMatrix::Identity(d_->d, d_->d), Integer(1));
}

Real Field::root(int i, Precision prec) const {
  {
    std::lock_guard<std::mutex> lock(d_->mu);
    auto it = d_->root_values.find(prec);
    if (it != d_->root_values.end()) return it->second[i];
  }
  std::vector<Real> vals;
  const int d = d_->d;
  if (d == 1) {
    vals.emplace_back(-d_->poly[0], prec);
  } else if (d_->D) {
    Real s = sqrt(Real(*d_->D, prec + 16));
    for (int k = 0; k < 2; ++k) {
      Real r = k == 0 ? s : -s;
      if (d_->half_basis) r = (r + Real(1L, prec + 16)) / 2L;
      vals.push_back(with_prec(r, prec));
    }
  } else {
    QPoly p = qpoly(d_->poly);
    std::vector<detail::RootInterval> ivs;
    {
      std::lock_guard<std::mutex> lock(d_->mu);
      ivs = d_->roots;
    }
    for (auto& iv : ivs) {
      Rational lo = iv.lo, hi = iv.hi;
      int slo = sign(detail::eval(p, lo));
      Rational target = Rational(1) / Rational(pow(Integer(2), static_cast<unsigned>(prec + 8)));
      while (hi - lo > target) {
        Rational mid = (lo + hi) / 2;
        int sm = sign(detail::eval(p, mid));
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == slo)
          lo = mid;
        else
          hi = mid;
      }
      vals.emplace_back((lo + hi) / 2, prec);
    }
  }
  std::lock_guard<std::mutex> lock(d_->mu);
  auto [it, inserted] = d_->root_values.emplace(prec, vals);
  return it->second[i];
}

std::string Field::describe() const {
  if (d_->d == 1) return "Q";
  if (d_->D) return "Q(sqrt(" + std::to_string(*d_->D) + "))";
  std::string s = "Q[x]/(";
  for (int i = d_->d; i >= 0; --i) {
    if (d_->poly[i] == 0) continue;
    s += (i == d_->d ? "" : " + ") + d_->poly[i].str() + "*x^" + std::to_string(i);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(const Field& F) : F_(F), c_(QVector::Zero(F.degree())) {}
FieldElement::FieldElement(const Field& F, QVector coords) : F_(F), c_(std::move(coords)) {
  ensure(c_.size() == F.degree(), "FieldElement: coordinate dimension mismatch");
}
FieldElement::FieldElement(const Field& F, const Rational& q) : FieldElement(F) { c_(0) = q; }

FieldElement FieldElement::basis(const Field& F, int i) {
  FieldElement e(F);
  e.c_(i) = 1;
  return e;
}

bool FieldElement::is_zero() const {
  for (Eigen::Index i = 0; i < c_.size(); ++i)
    if (c_(i) != 0) return false;
  return true;
}
bool FieldElement::is_integral() const {
  for (Eigen::Index i = 0; i < c_.size(); ++i)
    if (!is_integer(c_(i))) return false;
  return true;
}
bool FieldElement::is_rational() const {
  for (Eigen::Index i = 1; i < c_.size(); ++i)
    if (c_(i) != 0) return false;
  return true;
}
Integer FieldElement::denominator() const {
  Integer l = 1;
  for (Eigen::Index i = 0; i < c_.size(); ++i) l = lcm(l, den(c_(i)));
  return l;
}

QMatrix FieldElement::regular_matrix() const {
  const int d = F_.degree();
  QMatrix M = QMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (c_(i) == 0) continue;
      const auto& t = F_.mult(i, j);
      for (int r = 0; r < d; ++r)
        if (t[r] != 0) M(r, j) += c_(i) * Rational(t[r]);
    }
  return M;
}

Rational FieldElement::trace() const {
  Rational t = 0;
  for (int i = 0; i < F_.degree(); ++i)
    if (c_(i) != 0) t += c_(i) * Rational(F_.trace_of_basis(i));
  return t;
}

Rational FieldElement::norm() const {
  if (F_.degree() == 1) return c_(0);
  return determinant(regular_matrix());
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw ValidationError("inverse of zero field element");
  if (F_.degree() == 1) return FieldElement(F_, Rational(1) / c_(0));
  QMatrix inv = hc::inverse(regular_matrix());
  return FieldElement(F_, QVector(inv.col(0)));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  ensure(F_ == o.F_, "field mismatch");
  for (Eigen::Index i = 0; i < c_.size(); ++i) c_(i) += o.c_(i);
  return *this;
}
FieldElement& FieldElement::operator-=(const FieldElement& o) {
  ensure(F_ == o.F_, "field mismatch");
  for (Eigen::Index i = 0; i < c_.size(); ++i) c_(i) -= o.c_(i);
  return *this;
}
FieldElement& FieldElement::operator*=(const FieldElement& o) {
  ensure(F_ == o.F_, "field mismatch");
  const int d = F_.degree();
  QVector r = QVector::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (c_(i) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_(j) == 0) continue;
      Rational p = c_(i) * o.c_(j);
      const auto& t = F_.mult(i, j);
      for (int k = 0; k < d; ++k)
        if (t[k] != 0) r(k) += p * Rational(t[k]);
    }
  }
  c_ = std::move(r);
  return *this;
}

std::string FieldElement::str() const {
  const int d = F_.degree();
  std::string out;
  for (int i = 0; i < d; ++i) {
    if (c_(i) == 0) continue;
    std::string coef = to_string(c_(i));
    std::string sym = i == 0 ? "" : (d == 2 ? "w" : "w" + std::to_string(i));
    std::string term;
    if (i == 0)
      term = coef;
    else if (c_(i) == 1)
      term = sym;
    else if (c_(i) == -1)
      term = "-" + sym;
    else
      term = coef + "*" + sym;
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  r += b;
  return r;
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  r -= b;
  return r;
}
FieldElement operator-(const FieldElement& a) { return FieldElement(a.field()) - a; }
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  r *= b;
  return r;
}
FieldElement operator*(const Rational& q, const FieldElement& a) {
  QVector c = a.coords();
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= q;
  return FieldElement(a.field(), c);
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field() == b.field() && a.coords() == b.coords();
}
FieldElement pow(const FieldElement& a, long n) {
  if (n < 0) return pow(a.inverse(), -n);
  FieldElement r(a.field(), Rational(1)), b = a;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}
bool lex_less(const FieldElement& a, const FieldElement& b) {
  for (Eigen::Index i = 0; i < a.coords().size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Exact signs.

namespace {

// sign(u + v*s*sqrt(D)) for s = ±1, exact.
int quadratic_sign(const Rational& u, const Rational& v, long D) {
  int su = sign(u), sv = sign(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return su == 0 ? sv : su;
  Rational lhs = u * u, rhs = v * v * Rational(D);
  return lhs > rhs ? su : sv;
}

// (u, v) with a = u + v*sqrt(D) under the first embedding.
std::pair<Rational, Rational> quadratic_parts(const FieldElement& a, bool half) {
  if (half) return {a[0] + a[1] / 2, a[1] / 2};
  return {a[0], a[1]};
}

struct QInterval {
  Rational lo, hi;
};

QInterval imul(const QInterval& a, const QInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  QInterval r{c[0], c[0]};
  for (auto& x : c) {
    if (x < r.lo) r.lo = x;
    if (x > r.hi) r.hi = x;
  }
  return r;
}

}  // namespace

int sign_at(const FieldElement& a, int i) {
  if (a.is_zero()) throw ValidationError("sign of zero element is undefined");
  const FieldData& fd = a.field().data();
  if (fd.d == 1) return sign(a[0]);
  if (fd.D) {
    auto [u, v] = quadratic_parts(a, fd.half_basis);
    return quadratic_sign(u, i == 0 ? v : -v, *fd.D);
  }
  QVector g = fd.to_power(a.coords());
  QPoly poly = qpoly(fd.poly);
  detail::RootInterval iv;
  {
    std::lock_guard<std::mutex> lock(fd.mu);
    iv = fd.roots[i];
  }
  const int slo = sign(detail::eval(poly, iv.lo));
  for (int iter = 0; iter < 100000; ++iter) {
    // Horner with rational intervals over [lo, hi].
    QInterval x{iv.lo, iv.hi}, acc{g(fd.d - 1), g(fd.d - 1)};
    for (int k = fd.d - 2; k >= 0; --k) {
      acc = imul(acc, x);
      acc.lo += g(k);
      acc.hi += g(k);
    }
    if (acc.lo > 0 || acc.hi < 0) {
      std::lock_guard<std::mutex> lock(fd.mu);
      if (iv.hi - iv.lo < fd.roots[i].hi - fd.roots[i].lo) fd.roots[i] = iv;
      return acc.lo > 0 ? 1 : -1;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    if (sign(detail::eval(poly, mid)) == slo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  throw InternalError("sign_at: interval refinement did not converge");
}

SignVector signs(const FieldElement& a) {
  SignVector s(a.field().degree());
  for (int i = 0; i < a.field().degree(); ++i) s[i] = sign_at(a, i);
  return s;
}

int sgn_power(const FieldElement& a, const SignVector& q) {
  int r = 1;
  for (int i = 0; i < a.field().degree(); ++i)
    if (q[i] % 2) r *= sign_at(a, i);
  return r;
}

bool is_totally_positive(const FieldElement& a) {
  if (a.is_zero()) return false;
  for (int i = 0; i < a.field().degree(); ++i)
    if (sign_at(a, i) < 0) return false;
  return true;
}

namespace {
long magnitude_bits(const FieldElement& a) {
  long b = 0;
  for (int i = 0; i < a.field().degree(); ++i) {
    b = std::max<long>(b, static_cast<long>(bit_length(num(a[i]))));
    b = std::max<long>(b, static_cast<long>(bit_length(den(a[i]))));
  }
  return b;
}
}  // namespace

std::vector<Real> embeddings(const FieldElement& a, Precision prec) {
  const Field& F = a.field();
  const int d = F.degree();
  const Precision wp = prec + 32 + magnitude_bits(a);
  QVector g = F.data().to_power(a.coords());
  std::vector<Real> out;
  for (int i = 0; i < d; ++i) {
    Real th = F.root(i, wp);
    Real acc(g(d - 1), wp);
    for (int k = d - 2; k >= 0; --k) acc = acc * th + Real(g(k), wp);
    out.push_back(with_prec(acc, prec));
  }
  return out;
}

std::vector<double> embeddings_double(const FieldElement& a) {
  std::vector<double> out;
  for (auto& r : embeddings(a, 64)) out.push_back(r.to_double());
  return out;
}

Integer floor_at(const FieldElement& a, int i) {
  if (a.is_rational()) return floor(a[0]);
  Real approx = embeddings(a, 64)[i];
  Integer n = floor(approx.to_rational());
  FieldElement one(a.field(), Rational(1));
  while (sign_at(a - FieldElement(a.field(), Rational(n)), i) < 0) n -= 1;
  while (sign_at(a - FieldElement(a.field(), Rational(n + 1)), i) > 0) n += 1;
  return n;
}

bool abs_ge(const FieldElement& a, int i, int j) {
  if (i == j) return true;
  const FieldData& fd = a.field().data();
  if (fd.d != 2) throw UnsupportedError("abs_ge: only implemented for degree 2");
  // a_1^2 - a_2^2 = (a_1 - a_2) * Tr(a); a_1 - a_2 has the sign of the
  // irrational coordinate because ω_1^{σ1} > ω_1^{σ2}.
  int s = sign(a[1]) * sign(a.trace());
  if (i == 1) s = -s;
  return s >= 0;
}

namespace detail {

// Reduced element of the cycle of O under θ -> 1/(θ - floor θ).
FieldElement principal_reduced(const Field& F) {
  const long D = *F.quadratic_D();
  FieldElement w = FieldElement::basis(F, 1);
  long s = static_cast<long>(std::floor(std::sqrt(static_cast<double>(D))));
  while ((s + 1) * (s + 1) <= D) ++s;
  while (s * s > D) --s;
  if (F.data().half_basis) return w + FieldElement(F, Rational((s - 1) / 2));
  return w + FieldElement(F, Rational(s));
}

}  // namespace detail

namespace {
using detail::principal_reduced;

// One period of the continued fraction of the reduced principal element:
// the product of complete-quotient differences is the fundamental unit.
FieldElement quadratic_fundamental_unit(const Field& F) {
  const FieldElement phi0 = principal_reduced(F);
  FieldElement theta = phi0;
  FieldElement c(F, Rational(1));
  for (long steps = 0;; ++steps) {
    ensure(steps < 10000000, "fundamental unit: period too long");
    FieldElement t = theta - FieldElement(F, Rational(floor_at(theta, 0)));
    c *= t;
    theta = t.inverse();
    if (theta == phi0) break;
  }
  ensure(c.is_integral() && boost::multiprecision::abs(c.norm()) == 1,
         "fundamental unit: cycle product is not a unit");
  if (!abs_ge(c, 0, 1)) c = c.inverse();
  if (sign_at(c, 0) < 0) c = -c;
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Literal parsing.

FieldElement FieldElement::parse(const Field& F, const std::string& lit) {
  const int d = F.degree();
  FieldElement out(F);
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ValidationError("malformed element literal '" + lit + "' at position " +
                          std::to_string(pos) + ": " + why);
  };
  auto skip = [&] {
    while (pos < lit.size() && std::isspace(static_cast<unsigned char>(lit[pos]))) ++pos;
  };
  auto read_number = [&]() -> std::optional<Rational> {
    size_t start = pos;
    while (pos < lit.size() && std::isdigit(static_cast<unsigned char>(lit[pos]))) ++pos;
    if (pos == start) return std::nullopt;
    Integer p(lit.substr(start, pos - start));
    if (pos < lit.size() && lit[pos] == '/') {
      ++pos;
      size_t s2 = pos;
      while (pos < lit.size() && std::isdigit(static_cast<unsigned char>(lit[pos]))) ++pos;
      if (pos == s2) fail("expected denominator");
      Integer q(lit.substr(s2, pos - s2));
      if (q == 0) fail("zero denominator");
      return Rational(p, q);
    }
    return Rational(p);
  };
  // Returns the element a symbol stands for.
  auto read_symbol = [&]() -> std::optional<FieldElement> {
    if (pos < lit.size() && lit[pos] == 'w') {
      ++pos;
      size_t s2 = pos;
      while (pos < lit.size() && std::isdigit(static_cast<unsigned char>(lit[pos]))) ++pos;
      int idx = pos == s2 ? 1 : std::stoi(lit.substr(s2, pos - s2));
      if (idx < 1 || idx >= d) fail("basis index out of range");
      return FieldElement::basis(F, idx);
    }
    if (lit.compare(pos, 5, "sqrt(") == 0) {
      if (!F.quadratic_D()) fail("sqrt() only in quadratic fields");
      pos += 5;
      auto n = read_number();
      if (!n || *n != Rational(*F.quadratic_D())) fail("sqrt argument must be the field's D");
      if (pos >= lit.size() || lit[pos] != ')') fail("expected ')'");
      ++pos;
      FieldElement w = FieldElement::basis(F, 1);
      if (F.data().half_basis) return Rational(2) * w - FieldElement(F, Rational(1));
      return w;
    }
    return std::nullopt;
  };
  skip();
  if (pos == lit.size()) fail("empty literal");
  bool first = true;
  while (pos < lit.size()) {
    int sgn = 1;
    skip();
    if (pos < lit.size() && (lit[pos] == '+' || lit[pos] == '-')) {
      sgn = lit[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    auto coef = read_number();
    skip();
    std::optional<FieldElement> sym;
    if (coef && pos < lit.size() && lit[pos] == '*') {
      ++pos;
      skip();
      sym = read_symbol();
      if (!sym) fail("expected basis symbol after '*'");
    } else if (!coef) {
      sym = read_symbol();
      if (!sym) fail("expected number or basis symbol");
      skip();
      if (pos < lit.size() && lit[pos] == '/') {
        ++pos;
        auto q = read_number();
        if (!q || *q == 0) fail("expected nonzero divisor");
        coef = Rational(1) / *q;
      }
    }
    Rational c = Rational(sgn) * (coef ? *coef : Rational(1));
    if (sym)
      out += c * *sym;
    else
      out += FieldElement(F, c);
    skip();
  }
  return out;
}

}  // namespace hc
