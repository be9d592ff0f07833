#include "hc/ideal.hpp"

#include <map>

namespace hc {

namespace {

// Image of a unit in (O/m)^x × {±1}: reduced residue and N(u)^k.
struct UnitImage {
  QVector residue;
  int norm_power;
  bool operator<(const UnitImage& o) const {
    if (norm_power != o.norm_power) return norm_power < o.norm_power;
    for (Eigen::Index i = 0; i < residue.size(); ++i) {
      if (residue(i) < o.residue(i)) return true;
      if (o.residue(i) < residue(i)) return false;
    }
    return false;
  }
  bool operator==(const UnitImage& o) const { return !(*this < o) && !(o < *this); }
};

UnitImage image_of(const FieldElement& u, const FractionalIdeal& m, long k) {
  int s = u.norm() < 0 && (k % 2 != 0) ? -1 : 1;
  return {reduce_mod(u, m).coords(), s};
}

}  // namespace

UnitSubgroup unit_subgroup(const Field& F, const FractionalIdeal& m, long k) {
  require(m.is_integral(), "unit_subgroup: modulus must be integral");
  if (F.degree() >= 3 && !F.has_unit_data())
    throw UnsupportedError("insufficient field data: unit generators");
  // Generators of O^x: -1 first, then the fundamental units.
  std::vector<FieldElement> gens{FieldElement(F, Rational(-1))};
  for (auto& u : F.unit_generators()) gens.push_back(u);
  const int n = static_cast<int>(gens.size());
  const UnitImage one = image_of(FieldElement(F, Rational(1)), m, k);

  // Order of each generator's image; the residue is reduced as we go, so the
  // norm sign is tracked separately.
  std::vector<long> ord(n);
  for (int i = 0; i < n; ++i) {
    const int gs = gens[i].norm() < 0 && k % 2 != 0 ? -1 : 1;
    FieldElement x = reduce_mod(gens[i], m);
    int sgn = gs;
    long o = 1;
    while (!(UnitImage{x.coords(), sgn} == one)) {
      x = reduce_mod(x * gens[i], m);
      sgn *= gs;
      ++o;
      ensure(o <= 100000000, "unit_subgroup: order search exhausted");
    }
    ord[i] = o;
  }
  // Exhaustive enumeration of the box prod [0, ord_i) for the kernel.
  std::vector<std::vector<long>> rel;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = ord[i];
    rel.push_back(e);
  }
  std::vector<long> e(n, 0);
  std::map<UnitImage, std::vector<long>> seen;
  for (;;) {
    FieldElement x(F, Rational(1));
    int sgn = 1;
    for (int i = 0; i < n; ++i)
      for (long j = 0; j < e[i]; ++j) {
        x = reduce_mod(x * gens[i], m);
        if (gens[i].norm() < 0 && k % 2 != 0) sgn = -sgn;
      }
    UnitImage im{reduce_mod(x, m).coords(), sgn};
    auto [it, fresh] = seen.emplace(im, e);
    if (!fresh) {
      std::vector<long> r(n);
      for (int i = 0; i < n; ++i) r[i] = e[i] - it->second[i];
      rel.push_back(r);
    }
    int i = 0;
    while (i < n && ++e[i] == ord[i]) {
      e[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  UnitSubgroup U;
  U.index = static_cast<long>(seen.size());
  // Relation lattice K in Z^n (coordinate 0 is the exponent of -1).
  ZMatrix R(n, static_cast<Eigen::Index>(rel.size()));
  for (size_t j = 0; j < rel.size(); ++j)
    for (int i = 0; i < n; ++i) R(i, static_cast<Eigen::Index>(j)) = rel[j][i];
  ZMatrix K = hermite_normal_form(R);
  // Upper triangular: column 0 is (K00, 0, ..); -1 ∈ U iff K00 == 1.
  U.contains_minus_one = K(0, 0) == 1;
  for (int j = 1; j < n; ++j) {
    FieldElement u(F, Rational(1));
    std::vector<long> ex;
    for (int i = 0; i < n; ++i) {
      long c = to_long(K(i, j));
      if (i > 0) ex.push_back(c);
      if (c != 0) u *= pow(gens[i], c);
    }
    U.generators.push_back(u);
    U.exponents.push_back(ex);
  }
  if (U.contains_minus_one) U.generators.push_back(gens[0]);
  return U;
}

}  // namespace hc
