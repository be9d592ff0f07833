#include "hc/ideal.hpp"

#include "../field/field_data.hpp"

#include <algorithm>

namespace hc {
namespace {

using i128 = __int128;

long mulmod(long a, long b, long p) { return static_cast<long>(static_cast<i128>(a) * b % p); }

long powmod(long a, long e, long p) {
  long r = 1 % p;
  a %= p;
  if (a < 0) a += p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Square root of a quadratic residue a mod an odd prime p (Tonelli–Shanks).
long sqrt_mod(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  long z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  long m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    long i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    long b = c;
    for (long j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

using PolyP = std::vector<long>;  // constant first, coefficients in [0, p)

void trim(PolyP& f) {
  while (f.size() > 1 && f.back() == 0) f.pop_back();
}

// f = q*g + r over F_p; g monic. Returns true if r == 0 and sets f = q.
bool divide_exact(PolyP& f, const PolyP& g, long p) {
  PolyP r = f;
  const int dg = static_cast<int>(g.size()) - 1;
  const int df = static_cast<int>(r.size()) - 1;
  if (df < dg) return false;
  PolyP q(df - dg + 1, 0);
  for (int i = df - dg; i >= 0; --i) {
    long c = r[i + dg] % p;
    q[i] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) r[i + j] = ((r[i + j] - mulmod(c, g[j], p)) % p + p) % p;
  }
  for (int i = 0; i < dg; ++i)
    if (r[i] % p != 0) return false;
  f = q;
  trim(f);
  return true;
}

// Monic irreducible factors with multiplicity, by trial division in
// increasing degree.
std::vector<std::pair<PolyP, int>> factor_mod_p(PolyP f, long p) {
  std::vector<std::pair<PolyP, int>> out;
  const int d = static_cast<int>(f.size()) - 1;
  if (d == 2 && p != 2) {
    long b = f[1], c = f[0];
    long disc = ((mulmod(b, b, p) - mulmod(4 % p, c, p)) % p + p) % p;
    long inv2 = (p + 1) / 2;
    if (disc == 0) {
      long r = mulmod((p - b) % p, inv2, p);
      out.push_back({{(p - r) % p, 1}, 2});
      return out;
    }
    if (powmod(disc, (p - 1) / 2, p) != 1) {
      out.push_back({f, 1});
      return out;
    }
    long s = sqrt_mod(disc, p);
    long r1 = mulmod(((p - b) % p + s) % p, inv2, p);
    long r2 = mulmod(((p - b) % p - s + p) % p, inv2, p);
    if (r1 > r2) std::swap(r1, r2);
    out.push_back({{(p - r1) % p, 1}, 1});
    out.push_back({{(p - r2) % p, 1}, 1});
    return out;
  }
  for (int k = 1; 2 * k <= static_cast<int>(f.size()) - 1; ++k) {
    long count = 1;
    for (int i = 0; i < k; ++i) {
      if (count > (1L << 40) / p) throw UnsupportedError("factorization mod p: prime too large");
      count *= p;
    }
    for (long idx = 0; idx < count; ++idx) {
      PolyP g(k + 1, 0);
      long t = idx;
      for (int i = 0; i < k; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[k] = 1;
      int mult = 0;
      while (static_cast<int>(f.size()) - 1 >= k && divide_exact(f, g, p)) ++mult;
      if (mult) out.push_back({g, mult});
      if (2 * k > static_cast<int>(f.size()) - 1) break;
    }
  }
  if (f.size() > 1) out.push_back({f, 1});
  return out;
}

}  // namespace

std::vector<PrimeIdeal> primes_above(const Field& F, const Integer& p) {
  ensure(p > 1, "primes_above: p must be a prime");
  const int d = F.degree();
  std::vector<PrimeIdeal> out;
  if (d == 1) {
    out.push_back({FractionalIdeal::principal(FieldElement(F, Rational(p))), p, 1, 1});
    return out;
  }
  const detail::FieldData& fd = F.data();
  Rational index = Rational(1) / boost::multiprecision::abs(determinant(fd.basis));
  ensure(is_integer(index), "primes_above: Z[θ] not contained in O");
  if (num(index) % p == 0)
    throw UnsupportedError("factorization at p = " + p.str() +
                           " needs p not dividing [O : Z[theta]]");
  const long pl = to_long(p);
  PolyP f(d + 1);
  for (int i = 0; i <= d; ++i) f[i] = to_long(mod(fd.poly[i], p));
  for (auto& [g, e] : factor_mod_p(f, pl)) {
    // g(θ) in integral-basis coordinates.
    QVector pw = QVector::Zero(d);
    for (size_t i = 0; i < g.size() && static_cast<int>(i) < d; ++i) pw(i) = Rational(g[i]);
    FieldElement gth(F);
    if (static_cast<int>(g.size()) - 1 == d) {
      gth = FieldElement(F, Rational(0));  // g = f mod p, so g(θ) ≡ 0 mod p
    } else {
      QVector c = QVector::Zero(d);
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) c(r) += fd.basis_inv(r, s) * pw(s);
      gth = FieldElement(F, c);
    }
    std::vector<FieldElement> gens{FieldElement(F, Rational(p))};
    if (!gth.is_zero()) gens.push_back(gth);
    PrimeIdeal P{FractionalIdeal::generated_by(F, gens), p, e, static_cast<int>(g.size()) - 1};
    out.push_back(P);
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  return out;
}

bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal == b.ideal; }

namespace {

int integral_valuation(FractionalIdeal B, const PrimeIdeal& P, const FractionalIdeal& Pinv) {
  int v = 0;
  while (P.ideal.contains(B)) {
    B = B * Pinv;
    ++v;
  }
  return v;
}

int vp(Integer n, const Integer& p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

int valuation(const FractionalIdeal& a, const PrimeIdeal& P) {
  FractionalIdeal B = FractionalIdeal::from_lattice(a.field(), a.hnf(), Integer(1));
  return integral_valuation(B, P, P.ideal.inverse()) - P.e * vp(a.denom(), P.p);
}

Factorization factor(const FractionalIdeal& a) {
  const Field& F = a.field();
  FractionalIdeal B = FractionalIdeal::from_lattice(F, a.hnf(), Integer(1));
  Integer nb = num(B.norm());
  std::vector<Integer> ps;
  for (auto& [p, e] : factor_integer(nb)) ps.push_back(p);
  if (a.denom() > 1)
    for (auto& [p, e] : factor_integer(a.denom())) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  Factorization out;
  for (auto& p : ps) {
    for (auto& P : primes_above(F, p)) {
      int v = integral_valuation(B, P, P.ideal.inverse()) - P.e * vp(a.denom(), p);
      if (v != 0) out.emplace_back(P, v);
    }
  }
  return out;
}

FractionalIdeal product(const Field& F, const Factorization& f) {
  FractionalIdeal r = F.unit_ideal();
  for (auto& [P, e] : f) r = r * pow(P.ideal, e);
  return r;
}

std::vector<PrimeIdeal> prime_divisors(const FractionalIdeal& a) {
  ensure(a.is_integral(), "prime_divisors: integral ideal required");
  std::vector<PrimeIdeal> out;
  for (auto& [P, e] : factor(a)) out.push_back(P);
  return out;
}

std::vector<FractionalIdeal> integral_divisors(const FractionalIdeal& a) {
  ensure(a.is_integral(), "integral_divisors: integral ideal required");
  std::vector<FractionalIdeal> out{a.field().unit_ideal()};
  for (auto& [P, e] : factor(a)) {
    size_t m = out.size();
    FractionalIdeal pk = a.field().unit_ideal();
    for (int k = 1; k <= e; ++k) {
      pk = pk * P.ideal;
      for (size_t i = 0; i < m; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hc
