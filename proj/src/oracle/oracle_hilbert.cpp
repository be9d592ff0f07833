#include "hc/oracle_hilbert.hpp"

#include "hc/hecke_l.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>

namespace hc::oracle_hilbert {

namespace {

struct UnitDomain {
  int d = 1;
  bool minus_one = false;
  std::optional<FieldElement> u;  // |u^1| > 1
  double two_log_u = 0;           // log |u^1 / u^2|
};

UnitDomain unit_domain(const UnitSubgroup& U, const Field& F) {
  UnitDomain D;
  D.d = F.degree();
  D.minus_one = U.contains_minus_one;
  if (D.d == 2) {
    require(!U.generators.empty(), "unit subgroup of a real quadratic field has rank one");
    FieldElement u = U.generators.front();
    if (!abs_ge(u, 0, 1)) u = u.inverse();
    auto e = embeddings_double(u);
    D.two_log_u = std::log(std::abs(e[0] / e[1]));
    D.u = u;
  }
  return D;
}

// Strip test on the first nonzero entry x; doubles with an exact fallback
// near the walls.
bool in_domain(const UnitDomain& D, const std::vector<double>& e, const std::function<FieldElement()>& exact) {
  if (D.minus_one && e[0] < 0) return false;
  if (D.d != 2) return true;
  double lr = std::log(std::abs(e[0])) - std::log(std::abs(e[1]));
  const double eps = 1e-9;
  if (lr > eps && lr < D.two_log_u - eps) return true;
  if (lr < -eps || lr > D.two_log_u + eps) return false;
  FieldElement x = exact();
  return abs_ge(x, 0, 1) && !abs_ge(x / *D.u, 0, 1);
}

struct LatticePoint {
  std::vector<long> n;    // coordinates over basis_elements()
  std::vector<double> e;  // embeddings
};

// Points of the lattice with every |x^σ| <= B.
std::vector<LatticePoint> box_points(const FractionalIdeal& L, double B) {
  auto basis = L.basis_elements();
  const int d = static_cast<int>(basis.size());
  std::vector<std::vector<double>> E(static_cast<size_t>(d));  // E[j][σ]
  for (int j = 0; j < d; ++j) E[j] = embeddings_double(basis[j]);
  std::vector<LatticePoint> out;
  if (d == 1) {
    long M = static_cast<long>(std::floor(B / std::abs(E[0][0])));
    for (long n = -M; n <= M; ++n) out.push_back({{n}, {n * E[0][0]}});
    return out;
  }
  require(d == 2, "box_points: degree <= 2");
  // n = E^{-1} x
  double det = E[0][0] * E[1][1] - E[1][0] * E[0][1];
  double r0 = (std::abs(E[1][1]) + std::abs(E[1][0])) / std::abs(det) * B;
  long M0 = static_cast<long>(std::ceil(r0)) + 1;
  for (long n0 = -M0; n0 <= M0; ++n0) {
    double lo = -HUGE_VAL, hi = HUGE_VAL;
    for (int s = 0; s < 2; ++s) {
      // |n0 E0[s] + n1 E1[s]| <= B
      double c = n0 * E[0][s], m = E[1][s];
      double a = (-B - c) / m, b = (B - c) / m;
      if (a > b) std::swap(a, b);
      lo = std::max(lo, a);
      hi = std::min(hi, b);
    }
    for (long n1 = static_cast<long>(std::ceil(lo - 1e-9)); n1 <= static_cast<long>(std::floor(hi + 1e-9)); ++n1) {
      double x0 = n0 * E[0][0] + n1 * E[1][0], x1 = n0 * E[0][1] + n1 * E[1][1];
      if (std::abs(x0) > B || std::abs(x1) > B) continue;
      out.push_back({{n0, n1}, {x0, x1}});
    }
  }
  return out;
}

FieldElement element_of(const FractionalIdeal& L, const std::vector<long>& n) {
  auto basis = L.basis_elements();
  FieldElement x(L.field());
  for (size_t j = 0; j < n.size(); ++j) x += Rational(n[j]) * basis[j];
  return x;
}

// Residue class of a coordinate vector of I modulo J, in long arithmetic.
struct ResidueKey {
  std::vector<std::vector<long>> rows;
  std::vector<long> orders;

  ResidueKey(const FractionalIdeal& I, const FractionalIdeal& J) {
    QuotientMap q = quotient_map(I, J);
    for (size_t i = 0; i < q.rows.size(); ++i) {
      std::vector<long> r;
      long o = to_long(q.orders[i]);
      for (int j = 0; j < I.degree(); ++j) {
        Integer v = q.U(q.rows[i], j) % o;
        r.push_back(to_long(v));
      }
      rows.push_back(std::move(r));
      orders.push_back(o);
    }
  }
  long operator()(const std::vector<long>& n) const {
    long key = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      long v = 0;
      for (size_t j = 0; j < n.size(); ++j) v = (v + rows[i][j] * (n[j] % orders[i])) % orders[i];
      if (v < 0) v += orders[i];
      key = key * orders[i] + v;
    }
    return key;
  }
};

std::complex<double> to_c(const Cyclotomic& c) {
  Ball b = c.to_ball(64);
  return {b.mid().re.to_double(), b.mid().im.to_double()};
}

// Integral representatives of Cl_F prime to m.
std::vector<FractionalIdeal> class_reps_prime_to(const Field& F, const FractionalIdeal& m) {
  auto Cl = class_group(F, ClassKind::Wide);
  std::vector<std::optional<FractionalIdeal>> reps(static_cast<size_t>(Cl.order()));
  long found = 0;
  for (long X = 16; found < Cl.order(); X *= 2) {
    for (auto& [I, n] : ideals_by_norm(F, X)) {
      if (!(I + m).is_one()) continue;
      auto& slot = reps[static_cast<size_t>(Cl.class_index(I))];
      if (!slot) {
        slot = I;
        ++found;
      }
    }
    ensure(X < (1L << 20), "class representatives prime to the level not found");
  }
  std::vector<FractionalIdeal> out;
  for (auto& r : reps) out.push_back(*r);
  return out;
}

// Double-precision LLL on the columns of V (V[j] is column j), tracking the
// integer transform: column j of the result is sum_i T[j][i] original_i.
void lll(std::vector<std::vector<double>>& V, std::vector<std::vector<long>>& T) {
  const size_t n = V.size();
  T.assign(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) T[i][i] = 1;
  auto dot = [](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  size_t k = 1;
  for (int guard = 0; k < n && guard < 100000; ++guard) {
    // Gram-Schmidt from scratch: n <= 4.
    std::vector<std::vector<double>> Bs(n), mu(n, std::vector<double>(n, 0));
    std::vector<double> bn(n);
    for (size_t i = 0; i < n; ++i) {
      Bs[i] = V[i];
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(V[i], Bs[j]) / bn[j];
        for (size_t c = 0; c < Bs[i].size(); ++c) Bs[i][c] -= mu[i][j] * Bs[j][c];
      }
      bn[i] = dot(Bs[i], Bs[i]);
    }
    bool reduced = false;
    for (size_t j = k; j-- > 0;) {
      double r = std::round(mu[k][j]);
      if (r == 0) continue;
      for (size_t c = 0; c < V[k].size(); ++c) V[k][c] -= r * V[j][c];
      for (size_t c = 0; c < n; ++c) T[k][c] -= static_cast<long>(r) * T[j][c];
      for (size_t l = 0; l <= j; ++l) mu[k][l] -= r * (l == j ? 1.0 : mu[j][l]);
      reduced = true;
    }
    if (reduced) continue;
    if (bn[k] < (0.75 - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      std::swap(V[k], V[k - 1]);
      std::swap(T[k], T[k - 1]);
      k = std::max<size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
}

// Integer vectors m with |sum_j m_j V[j]|^2 <= R2 (Fincke-Pohst).
void short_vectors(const std::vector<std::vector<double>>& V, double R2,
                   const std::function<void(const std::vector<long>&)>& f) {
  const int n = static_cast<int>(V.size());
  std::vector<std::vector<double>> q(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (size_t c = 0; c < V[i].size(); ++c) s += V[i][c] * V[j][c];
      q[i][j] = s;
    }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int a = i + 1; a < n; ++a)
      for (int b = a; b < n; ++b) q[a][b] -= q[a][i] * q[i][b];
  }
  std::vector<long> m(static_cast<size_t>(n), 0);
  std::function<void(int, double)> rec = [&](int i, double rem) {
    double c = 0;
    for (int j = i + 1; j < n; ++j) c -= q[i][j] * static_cast<double>(m[j]);
    double r = std::sqrt(std::max(rem, 0.0) / q[i][i]) + 1e-9;
    for (long v = static_cast<long>(std::ceil(c - r)); v <= static_cast<long>(std::floor(c + r)); ++v) {
      double left = rem - q[i][i] * (static_cast<double>(v) - c) * (static_cast<double>(v) - c);
      if (left < -1e-9 * R2) continue;
      m[i] = v;
      if (i == 0)
        f(m);
      else
        rec(i - 1, left);
    }
    m[i] = 0;
  };
  rec(n - 1, R2);
}

struct Prepared {
  struct Entry {
    std::vector<double> e;
    cplx w;
  };
  struct Pair {
    std::array<double, 4> a, b;  // slashed (a', b') per embedding
    cplx w;
  };
  struct Block {
    double norm_k;
    std::vector<Entry> a;         // canonical nonzero a with nonzero weight
    std::vector<Entry> b;         // every b in the box with nonzero weight
    std::vector<Entry> b_canon;   // canonical nonzero b, for the a = 0 terms
    cplx a_zero;                  // weight of a = 0
    std::vector<Pair> pairs;      // slashed path: canonical pairs in the slashed box
  };
  std::vector<Block> blocks;
  cplx prefactor;
  double tail_scale = 0;
  int d = 1;
  long k = 0;
  bool slashed = false;
};

// Exact weight of one factor, cached on the residue class modulo m L.
class ResidueWeight {
 public:
  ResidueWeight(const FractionalIdeal& L, const FractionalIdeal& m, cplx zero,
                std::function<cplx(const FieldElement&)> exact)
      : L_(L), key_(L, m * L), zero_(zero), exact_(std::move(exact)) {}
  cplx operator()(const std::vector<long>& n) {
    if (std::all_of(n.begin(), n.end(), [](long v) { return v == 0; })) return zero_;
    long key = key_(n);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, exact_(element_of(L_, n))).first;
    return it->second;
  }

 private:
  FractionalIdeal L_;
  ResidueKey key_;
  cplx zero_;
  std::function<cplx(const FieldElement&)> exact_;
  std::map<long, cplx> cache_;
};

// Embeddings of an ideal's Z-basis, E[j][σ].
std::vector<std::vector<double>> basis_embeddings(const FractionalIdeal& L) {
  std::vector<std::vector<double>> E;
  for (auto& b : L.basis_elements()) E.push_back(embeddings_double(b));
  return E;
}

std::vector<double> embed(const std::vector<std::vector<double>>& E, const std::vector<long>& n) {
  std::vector<double> e(E.front().size(), 0.0);
  for (size_t j = 0; j < n.size(); ++j)
    for (size_t s = 0; s < e.size(); ++s) e[s] += static_cast<double>(n[j]) * E[j][s];
  return e;
}

Prepared prepare(const SeriesEvalSpec& s) {
  const EisensteinSpec& E = s.spec;
  const Field& F = E.field();
  const int d = F.degree();
  if (d > 2) throw UnsupportedError("oracle_hilbert: degree <= 2");
  if (E.k < 3) throw ValidationError("oracle_hilbert: k >= 3 (direct summation needs absolute convergence)");
  if (s.lambda < 0 || s.lambda >= static_cast<int>(E.twists.size()))
    throw ValidationError("lambda out of range of the narrow class group");
  require(s.box > 0, "oracle_hilbert: box > 0");
  if (s.slash) require(s.slash->det() == FieldElement(F, Rational(1)), "oracle_hilbert: slash matrix in SL2(F)");

  Prepared P;
  P.d = d;
  P.k = E.k;
  P.slashed = s.slash.has_value();
  const FractionalIdeal& t = E.twists[static_cast<size_t>(s.lambda)];
  const FractionalIdeal bdt = E.psi.modulus() * F.different() * t;
  const FractionalIdeal& m = E.level;
  UnitSubgroup U = unit_subgroup(F, m, E.k);
  UnitDomain D = unit_domain(U, F);

  // C tau(psi) N(t)^{-k/2} / N(b), C = sqrt(d_F) Γ(k)^d / ([O^x : U] N(d) (-2πi)^{kd})
  const double dF = std::abs(F.discriminant().convert_to<double>());
  const long kd = E.k * d;
  double mag = std::sqrt(dF) * std::pow(std::tgamma(static_cast<double>(E.k)), d) /
               (static_cast<double>(U.index) * dF * std::pow(2 * M_PI, static_cast<double>(kd)));
  mag *= std::pow(t.norm().convert_to<double>(), -0.5 * static_cast<double>(E.k));
  mag /= E.psi.modulus().norm().convert_to<double>();
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  P.prefactor = mag * ipow[kd % 4] * to_c(gauss_sum(E.psi));

  std::array<std::vector<double>, 4> S;  // embeddings of α, β, γ, δ
  if (s.slash) S = {embeddings_double(s.slash->a), embeddings_double(s.slash->b), embeddings_double(s.slash->c),
                    embeddings_double(s.slash->d)};

  const auto q = E.eta.signature();
  const auto r = E.psi.signature();
  const auto psi_inv = E.psi.inverse();
  double nk_sum = 0;
  for (auto& R : class_reps_prime_to(F, m)) {
    Prepared::Block blk;
    blk.norm_k = std::pow(R.norm().convert_to<double>(), static_cast<double>(E.k));
    nk_sum += blk.norm_k;
    const FractionalIdeal Rinv = R.inverse();
    const FractionalIdeal LB = bdt.inverse() * R;

    ResidueWeight wa(R, m, E.eta.is_trivial() ? cplx(1) : cplx(0), [&](const FieldElement& a) {
      if (E.eta.is_trivial()) return cplx(1);
      return static_cast<double>(sgn_power(a, q)) * to_c(E.eta(FractionalIdeal::principal(a) * Rinv));
    });
    ResidueWeight wb(LB, m, E.psi.is_trivial() ? cplx(1) : cplx(0), [&](const FieldElement& b) {
      if (E.psi.is_trivial()) return cplx(1);
      FieldElement nb = -b;
      return static_cast<double>(sgn_power(nb, r)) * to_c(psi_inv(FractionalIdeal::principal(nb) * bdt * Rinv));
    });

    if (s.slash) {
      // (a, b) in R x LB as a rank-2d lattice, mapped to the slashed pair
      // (a α + b γ, a β + b δ); enumerate the slashed box through its ℓ2 ball.
      const auto ER = basis_embeddings(R), EB = basis_embeddings(LB);
      std::vector<std::vector<double>> V;
      for (int j = 0; j < 2 * d; ++j) {
        std::vector<long> n(static_cast<size_t>(d), 0);
        n[static_cast<size_t>(j % d)] = 1;
        auto e = embed(j < d ? ER : EB, n);
        std::vector<double> col(static_cast<size_t>(2 * d));
        for (int sg = 0; sg < d; ++sg) {
          col[sg] = e[sg] * (j < d ? S[0][sg] : S[2][sg]);
          col[d + sg] = e[sg] * (j < d ? S[1][sg] : S[3][sg]);
        }
        V.push_back(std::move(col));
      }
      std::vector<std::vector<long>> T;
      auto Vr = V;
      lll(Vr, T);
      short_vectors(Vr, s.box * s.box * 2 * d, [&](const std::vector<long>& mv) {
        std::vector<long> na(static_cast<size_t>(d), 0), nb(static_cast<size_t>(d), 0);
        for (int j = 0; j < 2 * d; ++j)
          for (int i = 0; i < 2 * d; ++i) (i < d ? na[i] : nb[i - d]) += mv[j] * T[j][i];
        bool a0 = std::all_of(na.begin(), na.end(), [](long v) { return v == 0; });
        bool b0 = std::all_of(nb.begin(), nb.end(), [](long v) { return v == 0; });
        if (a0 && b0) return;
        auto ea = embed(ER, na), eb = embed(EB, nb);
        Prepared::Pair p{};
        for (int sg = 0; sg < d; ++sg) {
          p.a[sg] = ea[sg] * S[0][sg] + eb[sg] * S[2][sg];
          p.b[sg] = ea[sg] * S[1][sg] + eb[sg] * S[3][sg];
          if (std::abs(p.a[sg]) > s.box || std::abs(p.b[sg]) > s.box) return;
        }
        bool canon = a0 ? in_domain(D, eb, [&] { return element_of(LB, nb); })
                        : in_domain(D, ea, [&] { return element_of(R, na); });
        if (!canon) return;
        p.w = wa(na) * wb(nb);
        if (p.w != cplx(0)) blk.pairs.push_back(p);
      });
    } else {
      for (auto& p : box_points(R, s.box)) {
        bool zero = std::all_of(p.n.begin(), p.n.end(), [](long v) { return v == 0; });
        if (zero || !in_domain(D, p.e, [&] { return element_of(R, p.n); })) continue;
        cplx w = wa(p.n);
        if (w != cplx(0)) blk.a.push_back({p.e, w});
      }
      blk.a_zero = wa(std::vector<long>(static_cast<size_t>(d), 0));
      for (auto& p : box_points(LB, s.box)) {
        bool zero = std::all_of(p.n.begin(), p.n.end(), [](long v) { return v == 0; });
        cplx w = wb(p.n);
        if (w == cplx(0)) continue;
        blk.b.push_back({p.e, w});
        if (!zero && in_domain(D, p.e, [&] { return element_of(LB, p.n); })) blk.b_canon.push_back({p.e, w});
      }
    }
    P.blocks.push_back(std::move(blk));
  }
  // Over Q the pairs outside the box contribute O(B^{2-k}). In degree two the
  // slowest escape is along one embedding with the other coordinate bounded:
  // O(B) lattice points per unit shell, each of size B^{-k}.
  const double tail_exp = d == 1 ? static_cast<double>(2 - E.k) : static_cast<double>(1 - E.k);
  P.tail_scale = std::abs(P.prefactor) * nk_sum * std::pow(s.box, tail_exp);
  return P;
}

inline cplx inv_pow(cplx w, long k) {
  cplx p = 1;
  for (long e = k; e > 0; e >>= 1) {
    if (e & 1) p *= w;
    w *= w;
  }
  return 1.0 / p;
}

cplx evaluate(const Prepared& P, const std::vector<cplx>& z, long& terms) {
  const int d = P.d;
  cplx total = 0;
  for (auto& blk : P.blocks) {
    cplx sum = 0;
    if (P.slashed) {
      for (auto& p : blk.pairs) {
        cplx prod = 1;
        for (int i = 0; i < d; ++i) prod *= p.a[i] * z[i] + p.b[i];
        sum += p.w * inv_pow(prod, P.k);
      }
      terms += static_cast<long>(blk.pairs.size());
      total += blk.norm_k * sum;
      continue;
    }
    auto term = [&](const std::vector<double>* a, const std::vector<double>& b) {
      cplx prod = 1;
      for (int i = 0; i < d; ++i) prod *= (a ? (*a)[i] : 0.0) * z[i] + b[i];
      return prod;
    };
    for (auto& A : blk.a) {
      cplx inner = 0;
      for (auto& B : blk.b) inner += B.w * inv_pow(term(&A.e, B.e), P.k);
      sum += A.w * inner;
      terms += static_cast<long>(blk.b.size());
    }
    if (blk.a_zero != cplx(0)) {
      cplx inner = 0;
      for (auto& B : blk.b_canon) inner += B.w * inv_pow(term(nullptr, B.e), P.k);
      sum += blk.a_zero * inner;
      terms += static_cast<long>(blk.b_canon.size());
    }
    total += blk.norm_k * sum;
  }
  return P.prefactor * total;
}

}  // namespace

bool is_u_reduced(const FieldElement& a, const FieldElement& b, const UnitSubgroup& U) {
  require(!(a.is_zero() && b.is_zero()), "u_reduce: (a, b) != (0, 0)");
  const FieldElement& x = a.is_zero() ? b : a;
  UnitDomain D = unit_domain(U, x.field());
  if (D.minus_one && sign_at(x, 0) < 0) return false;
  if (D.d != 2) return true;
  return abs_ge(x, 0, 1) && !abs_ge(x / *D.u, 0, 1);
}

std::pair<FieldElement, FieldElement> u_reduce(const FieldElement& a, const FieldElement& b, const UnitSubgroup& U) {
  require(!(a.is_zero() && b.is_zero()), "u_reduce: (a, b) != (0, 0)");
  const Field& F = a.field();
  UnitDomain D = unit_domain(U, F);
  FieldElement x = a.is_zero() ? b : a;
  FieldElement f(F, Rational(1));
  if (D.d == 2) {
    auto e = embeddings_double(x);
    long n = static_cast<long>(std::floor((std::log(std::abs(e[0])) - std::log(std::abs(e[1]))) / D.two_log_u));
    f = pow(*D.u, -n);
    // exact correction of the floating estimate
    while (!abs_ge(x * f, 0, 1)) f *= *D.u;
    while (abs_ge(x * f / *D.u, 0, 1)) f = f / *D.u;
  }
  if (D.minus_one && sign_at(x * f, 0) < 0) f = -f;
  return {a * f, b * f};
}

SeriesValue evaluate_series(const SeriesEvalSpec& s) {
  auto P = prepare(s);
  require(static_cast<int>(s.z.size()) == P.d, "evaluate_series: one z per embedding");
  for (auto& w : s.z) require(w.imag() > 0, "evaluate_series: Im z > 0");
  SeriesValue out;
  out.value = evaluate(P, s.z, out.terms);
  out.tail = P.tail_scale;
  return out;
}

ExtractResult extract_constant(const SeriesEvalSpec& s, const std::vector<double>& heights, long mesh) {
  require(!heights.empty() && mesh >= 1, "extract_constant: heights and mesh >= 1");
  auto P = prepare(s);
  const EisensteinSpec& E = s.spec;
  const Field& F = E.field();
  const FractionalIdeal& t = E.twists[static_cast<size_t>(s.lambda)];
  // Periods of E | A: x with A u_x A^{-1} in the stabilizer of E, i.e.
  // γ^2 x in m t d, α^2 x in (t d)^{-1}, αγ x in m.
  const FractionalIdeal td = t * F.different();
  std::optional<FractionalIdeal> lat;
  auto meet = [&](const FieldElement& c, const FractionalIdeal& I) {
    if (c.is_zero()) return;
    FractionalIdeal J = FractionalIdeal::principal(c.inverse()) * I;
    lat = lat ? lat->intersect(J) : J;
  };
  if (s.slash) {
    const Mat2& A = *s.slash;
    meet(A.c * A.c, E.level * td);
    meet(A.a * A.a, td.inverse());
    meet(A.a * A.c, E.level);
  } else {
    lat = td.inverse();
  }
  auto periods = lat->basis_elements();
  std::vector<std::vector<double>> W;
  for (auto& w : periods) W.push_back(embeddings_double(w));
  const double normalize = std::pow(t.norm().convert_to<double>(), -0.5 * static_cast<double>(E.k));

  ExtractResult out;
  out.tail = P.tail_scale * normalize;
  const long count = P.d == 1 ? mesh : mesh * mesh;
  for (double h : heights) {
    require(h > 0, "extract_constant: heights > 0");
    cplx acc = 0;
    for (long idx = 0; idx < count; ++idx) {
      long i0 = idx % mesh, i1 = idx / mesh;
      std::vector<cplx> z(static_cast<size_t>(P.d));
      for (int sgm = 0; sgm < P.d; ++sgm) {
        double x = W[0][sgm] * static_cast<double>(i0) / static_cast<double>(mesh);
        if (P.d == 2) x += W[1][sgm] * static_cast<double>(i1) / static_cast<double>(mesh);
        z[sgm] = {x, h};
      }
      acc += evaluate(P, z, out.terms);
    }
    out.per_height.push_back(acc / static_cast<double>(count) * normalize);
  }
  out.value = out.per_height.front();
  for (auto& v : out.per_height)
    for (auto& w : out.per_height) out.spread = std::max(out.spread, std::abs(v - w));
  return out;
}

}  // namespace hc::oracle_hilbert
