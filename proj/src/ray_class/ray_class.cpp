#include "hc/ray_class.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hc {

namespace detail {

// Residues modulo an integral HNF lattice, in machine integers.
struct ResidueRing {
  int d = 1;
  std::vector<std::vector<long>> H;  // H[i][j]
  std::vector<long> stride;
  long size = 1;
  std::vector<std::vector<long>> mt;  // mt[i*d+j][k]

  void init(const Field& F, const ZMatrix& hnf) {
    d = F.degree();
    H.assign(d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) H[i][j] = to_long(hnf(i, j));
    stride.assign(d, 1);
    size = 1;
    for (int i = 0; i < d; ++i) {
      stride[i] = size;
      size *= H[i][i];
    }
    mt.assign(d * d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) mt[i * d + j][k] = to_long(F.mult(i, j)[k]);
  }
  // Reduce into the box 0 <= v_i < H_ii, last coordinate first.
  void reduce(std::vector<__int128>& v) const {
    for (int i = d - 1; i >= 0; --i) {
      __int128 h = H[i][i];
      __int128 q = v[i] / h;
      if (v[i] - q * h < 0) --q;
      if (q != 0)
        for (int r = 0; r <= i; ++r) v[r] -= q * H[r][i];
    }
  }
  long index(const std::vector<__int128>& v) const {
    long idx = 0;
    for (int i = 0; i < d; ++i) idx += static_cast<long>(v[i]) * stride[i];
    return idx;
  }
  std::vector<__int128> coords(long idx) const {
    std::vector<__int128> v(d);
    for (int i = d - 1; i >= 0; --i) {
      v[i] = idx / stride[i];
      idx %= stride[i];
    }
    return v;
  }
  long of_element(const FieldElement& x) const {
    std::vector<__int128> v(d);
    for (int i = 0; i < d; ++i) {
      // N(b) e_i lies in b, so coordinates may be cut mod N(b) first.
      v[i] = static_cast<__int128>(to_long(num(x[i]) % Integer(size)));
    }
    reduce(v);
    return index(v);
  }
  long mul(long a, long b) const {
    auto x = coords(a), y = coords(b);
    std::vector<__int128> z(d, 0);
    for (int i = 0; i < d; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (y[j] == 0) continue;
        __int128 p = x[i] * y[j];
        const auto& m = mt[i * d + j];
        for (int k = 0; k < d; ++k) z[k] += p * m[k];
      }
      reduce(z);
    }
    reduce(z);
    return index(z);
  }
  FieldElement element(const Field& F, long idx) const {
    auto v = coords(idx);
    QVector c(d);
    for (int i = 0; i < d; ++i) c(i) = Rational(static_cast<long>(v[i]));
    return FieldElement(F, c);
  }
};

struct RayClassData {
  Field F = Field::rationals();
  FractionalIdeal b = Field::rationals().unit_ideal();
  std::vector<PrimeIdeal> primes;
  ResidueRing ring;
  std::vector<ResidueRing> prime_rings;

  // (O/b)^x presented on s generators.
  int s = 0;
  std::vector<long> res_gens;
  std::vector<long> res_gen_order;
  std::vector<int> res_pos;  // index -> row in res_exps, -1 if not a unit
  std::vector<std::vector<long>> res_exps;
  std::vector<std::vector<long>> res_rel;

  int d = 1;
  IdealClassGroup wide;
  int t = 0;
  std::vector<FractionalIdeal> class_gens;  // coprime to b
  std::vector<long> class_orders;
  std::vector<std::vector<long>> class_alpha_vec;  // presentation of alpha_j

  int n = 0;  // s + d + t
  SmithForm snf;
  std::vector<int> rows;
  std::vector<Integer> orders;
  ZMatrix Uinv;

  mutable std::mutex mu;
  mutable std::map<std::pair<std::string, std::string>, std::optional<ClassCoords>> memo;

  bool unit_index(long idx) const { return res_pos[idx] >= 0; }

  bool coprime(const FieldElement& x) const {  // x integral
    for (auto& R : prime_rings)
      if (R.of_element(x) == 0) return false;
    return true;
  }

  // Exponents over the residue generators of an element with xO coprime to b.
  std::vector<long> residue_exps(const FieldElement& x) const {
    if (x.is_integral()) {
      long idx = ring.of_element(x);
      ensure(unit_index(idx), "ray class: element not coprime to modulus");
      return res_exps[res_pos[idx]];
    }
    FractionalIdeal D = F.unit_ideal().intersect(FractionalIdeal::principal(x).inverse());
    std::vector<FractionalIdeal> avoid;
    for (auto& P : primes) avoid.push_back(P.ideal * D);
    FieldElement y = element_outside(D, avoid);
    auto a = residue_exps(y * x);
    auto c = residue_exps(y);
    for (int i = 0; i < s; ++i) a[i] -= c[i];
    return a;
  }

  std::vector<long> element_vec(const FieldElement& x) const {
    std::vector<long> v(n, 0);
    auto r = residue_exps(x);
    for (int i = 0; i < s; ++i) v[i] = r[i];
    auto sg = signs(x);
    for (int i = 0; i < d; ++i) v[s + i] = sg[i] < 0 ? 1 : 0;
    return v;
  }

  ClassCoords reduce_vec(const std::vector<long>& v) const {
    ClassCoords c;
    for (size_t k = 0; k < rows.size(); ++k) {
      Integer acc = 0;
      for (int j = 0; j < n; ++j)
        if (v[j] != 0) acc += snf.U(rows[k], j) * v[j];
      c.push_back(mod(acc, orders[k]));
    }
    return c;
  }
};

}  // namespace detail

using detail::RayClassData;

namespace {

std::pair<std::string, std::string> ideal_key(const FractionalIdeal& a) {
  std::string h;
  for (Eigen::Index i = 0; i < a.hnf().rows(); ++i)
    for (Eigen::Index j = 0; j < a.hnf().cols(); ++j) h += a.hnf()(i, j).str() + ",";
  return {h, a.denom().str()};
}

// Group structure of (O/b)^x by incremental span, smallest indices first.
void build_residue_group(RayClassData& D) {
  const long N = D.ring.size;
  std::vector<char> unit(N, 1);
  for (long idx = 0; idx < N; ++idx) {
    auto x = D.ring.element(D.F, idx);
    if (N > 1 && !D.coprime(x)) unit[idx] = 0;
  }
  D.res_pos.assign(N, -1);
  const long one = D.ring.of_element(FieldElement(D.F, Rational(1)));
  std::vector<long> span{one};
  std::vector<std::vector<long>> exps{{}};
  D.res_pos[one] = 0;
  for (long u = 0; u < N; ++u) {
    if (!unit[u] || D.res_pos[u] >= 0) continue;
    long m = 1;
    long cur = u;
    while (D.res_pos[cur] < 0) {
      cur = D.ring.mul(cur, u);
      ++m;
    }
    const int g = static_cast<int>(D.res_gens.size());
    std::vector<long> rel = exps[D.res_pos[cur]];
    for (auto& v : rel) v = -v;
    rel.resize(g + 1, 0);
    rel[g] = m;
    for (auto& r : D.res_rel) r.push_back(0);
    D.res_rel.push_back(rel);
    D.res_gens.push_back(u);
    std::vector<long> nspan;
    std::vector<std::vector<long>> nexps;
    long pw = one;
    for (long j = 0; j < m; ++j) {
      for (size_t h = 0; h < span.size(); ++h) {
        long e = D.ring.mul(span[h], pw);
        auto ex = exps[h];
        ex.resize(g + 1, 0);
        ex[g] = j;
        nspan.push_back(e);
        nexps.push_back(std::move(ex));
      }
      pw = D.ring.mul(pw, u);
    }
    span = std::move(nspan);
    exps = std::move(nexps);
    for (size_t h = 0; h < span.size(); ++h) D.res_pos[span[h]] = static_cast<int>(h);
  }
  D.s = static_cast<int>(D.res_gens.size());
  for (auto& e : exps) e.resize(D.s, 0);
  D.res_exps = std::move(exps);
  for (long g : D.res_gens) {
    long o = 1, cur = g;
    while (cur != one) {
      cur = D.ring.mul(cur, g);
      ++o;
    }
    D.res_gen_order.push_back(o);
  }
}

std::shared_ptr<RayClassData> build_data(const FractionalIdeal& b) {
  auto D = std::make_shared<RayClassData>();
  D->F = b.field();
  D->b = b;
  D->d = D->F.degree();
  D->primes = prime_divisors(b);
  D->ring.init(D->F, b.hnf());
  for (auto& P : D->primes) {
    detail::ResidueRing R;
    R.init(D->F, P.ideal.hnf());
    D->prime_rings.push_back(R);
  }
  build_residue_group(*D);

  // Wide class group generators, moved to classes' members coprime to b.
  D->wide = class_group(D->F, ClassKind::Wide);
  D->t = static_cast<int>(D->wide.structure().size());
  D->n = D->s + D->d + D->t;
  for (int j = 0; j < D->t; ++j) {
    const FractionalIdeal& g = D->wide.generators()[j];
    FractionalIdeal gi = g.inverse();
    std::vector<FractionalIdeal> avoid;
    for (auto& P : D->primes) avoid.push_back(P.ideal * gi);
    FieldElement y = element_outside(gi, avoid);
    FractionalIdeal gc = g * y;
    D->class_gens.push_back(gc);
    long nj = to_long(D->wide.structure()[j]);
    D->class_orders.push_back(nj);
    auto pt = is_principal(pow(gc, nj));
    ensure(pt.principal, "ray class: class generator power not principal");
    D->class_alpha_vec.push_back(D->element_vec(*pt.generator));
  }

  // Relation columns.
  std::vector<std::vector<long>> cols;
  for (auto& r : D->res_rel) {
    std::vector<long> c(D->n, 0);
    for (int i = 0; i < D->s; ++i) c[i] = r[i];
    cols.push_back(c);
  }
  for (int i = 0; i < D->d; ++i) {
    std::vector<long> c(D->n, 0);
    c[D->s + i] = 2;
    cols.push_back(c);
  }
  std::vector<FieldElement> units{FieldElement(D->F, Rational(-1))};
  for (auto& u : D->F.unit_generators()) units.push_back(u);
  for (auto& u : units) cols.push_back(D->element_vec(u));
  for (int j = 0; j < D->t; ++j) {
    std::vector<long> c(D->n, 0);
    for (int i = 0; i < D->s + D->d; ++i) c[i] = -D->class_alpha_vec[j][i];
    c[D->s + D->d + j] = D->class_orders[j];
    cols.push_back(c);
  }
  ZMatrix R(D->n, static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < D->n; ++i) R(i, static_cast<Eigen::Index>(j)) = cols[j][i];
  if (D->n > 0) {
    D->snf = smith_form(R);
    for (int i = 0; i < D->n; ++i) {
      const Integer& di = D->snf.diagonal[i];
      ensure(di != 0, "ray class: infinite presentation");
      if (di != 1) {
        D->rows.push_back(i);
        D->orders.push_back(di);
      }
    }
    D->Uinv = inverse_unimodular(D->snf.U);
  }
  return D;
}

}  // namespace

RayClassGroup RayClassGroup::build(const FractionalIdeal& b, long max_norm) {
  require(b.is_integral(), "ray class group: modulus must be integral");
  if (b.norm() > max_norm)
    throw ValidationError("ray class group: modulus norm " + to_string(b.norm()) + " exceeds bound " +
                          std::to_string(max_norm));
  static std::mutex mu;
  static std::map<std::pair<const void*, std::pair<std::string, std::string>>, std::shared_ptr<const RayClassData>>
      cache;
  auto key = std::make_pair(static_cast<const void*>(&b.field().data()), ideal_key(b));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      RayClassGroup G;
      G.d_ = it->second;
      return G;
    }
  }
  auto data = build_data(b);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.emplace(key, data).first;
  RayClassGroup G;
  G.d_ = it->second;
  return G;
}

const Field& RayClassGroup::field() const { return d_->F; }
const FractionalIdeal& RayClassGroup::modulus() const { return d_->b; }
const std::vector<Integer>& RayClassGroup::structure() const { return d_->orders; }
const std::vector<PrimeIdeal>& RayClassGroup::primes() const { return d_->primes; }

long RayClassGroup::order() const {
  long o = 1;
  for (auto& x : d_->orders) o *= to_long(x);
  return o;
}

bool RayClassGroup::coprime_to_modulus(const FractionalIdeal& a) const {
  for (auto& P : d_->primes)
    if (valuation(a, P) != 0) return false;
  return true;
}

bool RayClassGroup::coprime_to_modulus(const FieldElement& a) const {
  if (a.is_zero()) return false;
  return coprime_to_modulus(FractionalIdeal::principal(a));
}

std::optional<ClassCoords> RayClassGroup::dlog(const FractionalIdeal& a) const {
  const RayClassData& D = *d_;
  auto key = ideal_key(a);
  {
    std::lock_guard<std::mutex> lock(D.mu);
    auto it = D.memo.find(key);
    if (it != D.memo.end()) return it->second;
  }
  std::optional<ClassCoords> out;
  if (coprime_to_modulus(a)) {
    std::vector<long> v(D.n, 0);
    FractionalIdeal J = a;
    if (D.t > 0) {
      auto c = D.wide.dlog(a);
      for (int j = 0; j < D.t; ++j) {
        long cj = to_long(c[j]);
        v[D.s + D.d + j] = cj;
        if (cj) J = J * pow(D.class_gens[j], -cj);
      }
    }
    auto pt = is_principal(J);
    ensure(pt.principal, "ray class: reduced ideal not principal");
    auto ev = D.element_vec(*pt.generator);
    for (int i = 0; i < D.s + D.d; ++i) v[i] = ev[i];
    out = D.reduce_vec(v);
  }
  std::lock_guard<std::mutex> lock(D.mu);
  D.memo.emplace(key, out);
  return out;
}

std::optional<ClassCoords> RayClassGroup::dlog(const FieldElement& a) const {
  if (a.is_zero()) return std::nullopt;
  if (!coprime_to_modulus(a)) return std::nullopt;
  const RayClassData& D = *d_;
  return D.reduce_vec(D.element_vec(a));
}

ClassCoords RayClassGroup::sign_class(int sigma) const {
  const RayClassData& D = *d_;
  std::vector<long> v(D.n, 0);
  v[D.s + sigma] = 1;
  return D.reduce_vec(v);
}

FieldElement RayClassGroup::lift_with_signs(const FieldElement& r, const SignVector& want) const {
  const RayClassData& D = *d_;
  const int d = D.d;
  auto basis = D.b.basis_elements();
  auto try_one = [&](const std::vector<long>& c, FieldElement& out) {
    FieldElement x = r;
    for (int j = 0; j < d; ++j) x += Rational(c[j]) * basis[j];
    if (x.is_zero()) return false;
    if (signs(x) != want) return false;
    out = x;
    return true;
  };
  FieldElement out(D.F);
  for (long rad = 0; rad <= 100000; rad = rad ? rad * 2 : 1) {
    std::vector<long> c(d, -rad);
    for (;;) {
      long mx = 0;
      for (long v : c) mx = std::max(mx, std::labs(v));
      if ((rad == 0 || mx > rad / 2) && try_one(c, out)) return out;
      int k = 0;
      while (k < d && ++c[k] > rad) {
        c[k] = -rad;
        ++k;
      }
      if (k == d) break;
    }
  }
  throw InternalError("lift_with_signs: search exhausted");
}

FractionalIdeal RayClassGroup::representative(const ClassCoords& c) const {
  const RayClassData& D = *d_;
  require(c.size() == D.rows.size(), "ray class: coordinate length mismatch");
  if (D.n == 0) return D.F.unit_ideal();
  ZVector y = ZVector::Zero(D.n);
  for (size_t k = 0; k < D.rows.size(); ++k) y(D.rows[k]) = c[k];
  std::vector<Integer> x(D.n, Integer(0));
  for (int i = 0; i < D.n; ++i)
    for (int j = 0; j < D.n; ++j) x[i] += D.Uinv(i, j) * y(j);
  // Move the class exponents into [0, n_j) using g_j^{n_j} = (alpha_j).
  std::vector<long> cls(D.t);
  for (int j = 0; j < D.t; ++j) {
    Integer q = floor_div(x[D.s + D.d + j], Integer(D.class_orders[j]));
    cls[j] = to_long(x[D.s + D.d + j] - q * D.class_orders[j]);
    for (int i = 0; i < D.s + D.d; ++i) x[i] += q * D.class_alpha_vec[j][i];
  }
  // Residue part.
  long one = D.ring.of_element(FieldElement(D.F, Rational(1)));
  long rho = one;
  for (int i = 0; i < D.s; ++i) {
    long e = to_long(mod(x[i], Integer(D.res_gen_order[i])));
    for (long k = 0; k < e; ++k) rho = D.ring.mul(rho, D.res_gens[i]);
  }
  SignVector want(D.d);
  for (int i = 0; i < D.d; ++i) want[i] = mod(x[D.s + i], Integer(2)) == 0 ? 1 : -1;
  FieldElement a = lift_with_signs(D.ring.element(D.F, rho), want);
  FractionalIdeal I = FractionalIdeal::principal(a);
  for (int j = 0; j < D.t; ++j)
    if (cls[j]) I = I * pow(D.class_gens[j], cls[j]);
  return I;
}

std::vector<FractionalIdeal> RayClassGroup::generators() const {
  std::vector<FractionalIdeal> out;
  for (size_t k = 0; k < d_->orders.size(); ++k) {
    ClassCoords e(d_->orders.size(), Integer(0));
    e[k] = 1;
    out.push_back(representative(e));
  }
  return out;
}

std::vector<ClassCoords> RayClassGroup::elements() const {
  std::vector<ClassCoords> out;
  const auto& o = d_->orders;
  ClassCoords c(o.size(), Integer(0));
  for (;;) {
    out.push_back(c);
    size_t k = 0;
    while (k < o.size() && ++c[k] == o[k]) {
      c[k] = 0;
      ++k;
    }
    if (k == o.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------

RayClassCharacter::RayClassCharacter(RayClassGroup G, std::vector<Rational> images)
    : G_(std::move(G)), e_(std::move(images)) {
  require(e_.size() == G_.structure().size(), "character: one image per generator required");
  for (size_t k = 0; k < e_.size(); ++k) {
    e_[k] = frac(e_[k]);
    if (!is_integer(e_[k] * Rational(G_.structure()[k])))
      throw ValidationError("character image " + to_string(e_[k]) + " incompatible with generator order " +
                            to_string(G_.structure()[k]));
  }
}

RayClassCharacter RayClassCharacter::trivial(const Field& F) {
  RayClassGroup G = RayClassGroup::build(F.unit_ideal());
  return RayClassCharacter(G, std::vector<Rational>(G.structure().size(), Rational(0)));
}

Rational RayClassCharacter::exponent(const ClassCoords& c) const {
  Rational s = 0;
  for (size_t k = 0; k < e_.size(); ++k) s += e_[k] * Rational(c[k]);
  return frac(s);
}

Cyclotomic RayClassCharacter::at_class(const ClassCoords& c) const {
  return Cyclotomic::root_of_unity(exponent(c));
}

Cyclotomic RayClassCharacter::operator()(const FractionalIdeal& a) const {
  auto c = G_.dlog(a);
  if (!c) return Cyclotomic(0);
  return at_class(*c);
}

Cyclotomic RayClassCharacter::finite_part(const FieldElement& a) const {
  auto c = G_.dlog(a);
  if (!c) return Cyclotomic(0);
  Rational e = exponent(*c);
  auto r = signature();
  auto s = signs(a);
  for (size_t i = 0; i < r.size(); ++i)
    if (r[i] && s[i] < 0) e += Rational(1, 2);
  return Cyclotomic::root_of_unity(frac(e));
}

SignVector RayClassCharacter::signature() const {
  SignVector r(G_.field().degree(), 0);
  for (int i = 0; i < G_.field().degree(); ++i) r[i] = exponent(G_.sign_class(i)) == 0 ? 0 : 1;
  return r;
}

bool RayClassCharacter::is_trivial() const {
  for (auto& e : e_)
    if (e != 0) return false;
  return true;
}

long RayClassCharacter::order() const {
  Integer l = 1;
  for (auto& e : e_) l = lcm(l, den(e));
  return to_long(l);
}

RayClassCharacter RayClassCharacter::inverse() const {
  std::vector<Rational> e;
  for (auto& x : e_) e.push_back(frac(-x));
  return RayClassCharacter(G_, e);
}

RayClassCharacter RayClassCharacter::lift(const FractionalIdeal& smaller) const {
  require(divides(modulus(), smaller), "character lift: new modulus must be a multiple");
  if (smaller == modulus()) return *this;
  RayClassGroup H = RayClassGroup::build(smaller);
  std::vector<Rational> e;
  for (auto& g : H.generators()) {
    auto c = G_.dlog(g);
    ensure(c.has_value(), "character lift: generator not coprime");
    e.push_back(exponent(*c));
  }
  return RayClassCharacter(H, e);
}

namespace {

// Matrix of Cl(b) -> Cl(c) on SNF generators, columns = images.
ZMatrix projection_matrix(const RayClassGroup& G, const RayClassGroup& H) {
  auto gens = G.generators();
  ZMatrix M(static_cast<Eigen::Index>(H.structure().size()), static_cast<Eigen::Index>(gens.size()));
  for (size_t k = 0; k < gens.size(); ++k) {
    auto c = H.dlog(gens[k]);
    ensure(c.has_value(), "projection: generator not coprime");
    for (size_t i = 0; i < c->size(); ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = (*c)[i];
  }
  return M;
}

// [M | diag(orders)]
ZMatrix with_orders(const ZMatrix& M, const std::vector<Integer>& orders) {
  const Eigen::Index m = M.rows(), n = M.cols();
  ZMatrix A = ZMatrix::Zero(m, n + m);
  A.leftCols(n) = M;
  for (Eigen::Index i = 0; i < m; ++i) A(i, n + i) = orders[i];
  return A;
}

}  // namespace

bool RayClassCharacter::factors_through(const FractionalIdeal& c) const {
  require(divides(c, modulus()), "factors_through: c must divide the modulus");
  RayClassGroup H = RayClassGroup::build(c);
  const Eigen::Index n = static_cast<Eigen::Index>(e_.size());
  if (n == 0) return true;
  if (H.structure().empty()) return is_trivial();
  ZMatrix A = with_orders(projection_matrix(G_, H), H.structure());
  ZMatrix K = integer_kernel(A);
  for (Eigen::Index j = 0; j < K.cols(); ++j) {
    Rational s = 0;
    for (Eigen::Index k = 0; k < n; ++k) s += e_[k] * Rational(K(k, j));
    if (!is_integer(s)) return false;
  }
  return true;
}

FractionalIdeal RayClassCharacter::conductor() const {
  std::optional<FractionalIdeal> best;
  for (auto& c : integral_divisors(modulus())) {
    if (best && !(c.norm() < best->norm())) continue;
    if (factors_through(c)) best = c;
  }
  ensure(best.has_value(), "conductor: modulus itself must qualify");
  return *best;
}

bool RayClassCharacter::is_primitive() const { return conductor() == modulus(); }

RayClassCharacter RayClassCharacter::primitive() const {
  FractionalIdeal c = conductor();
  if (c == modulus()) return *this;
  RayClassGroup H = RayClassGroup::build(c);
  if (H.structure().empty()) return RayClassCharacter(H, {});
  ZMatrix A = with_orders(projection_matrix(G_, H), H.structure());
  const Eigen::Index n = static_cast<Eigen::Index>(e_.size());
  std::vector<Rational> e;
  for (size_t k = 0; k < H.structure().size(); ++k) {
    ZVector rhs = ZVector::Zero(A.rows());
    rhs(static_cast<Eigen::Index>(k)) = 1;
    auto x = solve_integer(A, rhs);
    ensure(x.has_value(), "primitive: projection not surjective");
    Rational s = 0;
    for (Eigen::Index i = 0; i < n; ++i) s += e_[i] * Rational((*x)(i));
    e.push_back(frac(s));
  }
  return RayClassCharacter(H, e);
}

bool RayClassCharacter::same_function(const RayClassCharacter& o) const {
  FractionalIdeal m = modulus().intersect(o.modulus());
  return lift(m).images() == o.lift(m).images();
}

RayClassCharacter operator*(const RayClassCharacter& a, const RayClassCharacter& b) {
  FractionalIdeal m = a.modulus().intersect(b.modulus());
  auto x = a.lift(m), y = b.lift(m);
  std::vector<Rational> e;
  for (size_t k = 0; k < x.images().size(); ++k) e.push_back(frac(x.images()[k] + y.images()[k]));
  return RayClassCharacter(x.group(), e);
}

std::vector<RayClassCharacter> characters(const RayClassGroup& G) {
  std::vector<RayClassCharacter> out;
  for (auto& c : G.elements()) {
    std::vector<Rational> e;
    for (size_t k = 0; k < c.size(); ++k) e.push_back(Rational(c[k], G.structure()[k]));
    out.emplace_back(G, e);
  }
  return out;
}

std::vector<RayClassCharacter> primitive_characters(const RayClassGroup& G) {
  std::vector<RayClassCharacter> out;
  for (auto& chi : characters(G))
    if (chi.is_primitive()) out.push_back(chi);
  return out;
}

Cyclotomic gauss_sum(const RayClassCharacter& psi) {
  const Field& F = psi.field();
  const FractionalIdeal& b = psi.modulus();
  FractionalIdeal bd = b * F.different();
  FractionalIdeal I = bd.inverse();
  FractionalIdeal J = F.codifferent();
  FieldElement shift = J.basis_element(0);
  auto r = psi.signature();
  std::map<Rational, long> counts;
  for (auto x : coset_representatives(I, J)) {
    if (x.is_zero()) x = shift;
    auto c = psi.group().dlog(x * bd);
    if (!c) continue;
    Rational e = psi.exponent(*c) + x.trace();
    auto s = signs(x);
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] && s[i] < 0) e += Rational(1, 2);
    counts[frac(e)] += 1;
  }
  Cyclotomic tau(0);
  for (auto& [e, k] : counts) tau += Cyclotomic(k) * Cyclotomic::root_of_unity(e);
  return tau;
}

RayClassCharacter character_from_images(const FractionalIdeal& modulus, const std::vector<std::string>& images) {
  RayClassGroup G = RayClassGroup::build(modulus);
  std::vector<Rational> e;
  for (auto& s : images) e.push_back(parse_rational(s));
  if (e.size() != G.structure().size())
    throw ValidationError("character: expected " + std::to_string(G.structure().size()) + " images, got " +
                          std::to_string(e.size()));
  return RayClassCharacter(G, e);
}

}  // namespace hc
