#include "hc/ideal.hpp"

#include "../field/field_data.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

namespace hc {

namespace detail {

bool is_reduced_quadratic(const FieldElement& theta) {
  const Field& F = theta.field();
  FieldElement one(F, Rational(1));
  return sign_at(theta - one, 0) > 0 && sign_at(theta, 1) < 0 && sign_at(theta + one, 1) > 0;
}

}  // namespace detail

namespace {

double log_abs(const Real& x) {
  Real a = abs(x);
  return log(a).to_double();
}

// Generator of a principal ideal by walking the continued-fraction cycle of
// a = g1 (Z + θ0 Z).
std::optional<FieldElement> quadratic_generator(const FractionalIdeal& a) {
  const Field& F = a.field();
  FieldElement g1 = a.basis_element(0);
  FieldElement theta = a.basis_element(1) / g1;
  const FieldElement phi0 = detail::principal_reduced(F);
  FieldElement c = g1;
  std::set<QVector, bool (*)(const QVector&, const QVector&)> seen(
      [](const QVector& x, const QVector& y) {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
          if (x(i) < y(i)) return true;
          if (y(i) < x(i)) return false;
        }
        return false;
      });
  for (long steps = 0; steps < 10000000; ++steps) {
    if (theta == phi0) {
      ensure(FractionalIdeal::principal(c) == a, "principality: cycle generator mismatch");
      return c;
    }
    if (detail::is_reduced_quadratic(theta)) {
      if (!seen.insert(theta.coords()).second) return std::nullopt;
    }
    FieldElement t = theta - FieldElement(F, Rational(floor_at(theta, 0)));
    c *= t;
    theta = t.inverse();
  }
  throw InternalError("principality: cycle did not close");
}

// Sign vectors of ±∏ u_i^{e_i}, e_i ∈ {0, 1}; the units realizing each.
std::map<SignVector, FieldElement> unit_sign_table(const Field& F) {
  std::map<SignVector, FieldElement> table;
  std::vector<FieldElement> gens{FieldElement(F, Rational(-1))};
  for (auto& u : F.unit_generators()) gens.push_back(u);
  table.emplace(SignVector(F.degree(), 1), FieldElement(F, Rational(1)));
  for (auto& g : gens) {
    auto snapshot = table;
    for (auto& [s, u] : snapshot) {
      FieldElement v = u * g;
      table.emplace(signs(v), v);
    }
  }
  return table;
}

std::optional<FieldElement> make_totally_positive(const FieldElement& g) {
  SignVector s = signs(g);
  auto table = unit_sign_table(g.field());
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return g * it->second;
}

}  // namespace

FieldElement balance_by_units(const FieldElement& g) {
  const Field& F = g.field();
  if (F.degree() != 2) return g;
  FieldElement eps = F.unit_generators()[0];
  auto e = embeddings(g, 64);
  double l1 = log_abs(e[0]), l2 = log_abs(e[1]);
  double le = log_abs(embeddings(eps, 64)[0]);
  long j = std::lround((l2 - l1) / (2 * le));
  return j == 0 ? g : g * pow(eps, j);
}

std::optional<FieldElement> find_generator_bounded(const FractionalIdeal& a, double bound) {
  const Field& F = a.field();
  const int d = F.degree();
  const Rational target = a.norm();
  auto basis = a.basis_elements();
  // Embedding matrix and coefficient bounds |m_i| <= bound * Σ_j |E^{-1}_{ij}|.
  Eigen::MatrixXd E(d, d);
  for (int j = 0; j < d; ++j) {
    auto e = embeddings_double(basis[j]);
    for (int i = 0; i < d; ++i) E(i, j) = e[i];
  }
  Eigen::MatrixXd Einv = E.inverse();
  std::vector<long> lim(d);
  for (int i = 0; i < d; ++i) {
    double s = 0;
    for (int j = 0; j < d; ++j) s += std::fabs(Einv(i, j));
    lim[i] = static_cast<long>(std::ceil(s * bound)) + 1;
  }
  std::vector<long> m(d);
  for (int i = 0; i < d; ++i) m[i] = -lim[i];
  for (;;) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < d; ++j) v += static_cast<double>(m[j]) * E.col(j);
    if (v.cwiseAbs().maxCoeff() <= bound * (1 + 1e-9)) {
      FieldElement x(F);
      for (int j = 0; j < d; ++j) x += Rational(m[j]) * basis[j];
      if (!x.is_zero() && boost::multiprecision::abs(x.norm()) == target) return x;
    }
    int k = 0;
    while (k < d && ++m[k] > lim[k]) {
      m[k] = -lim[k];
      ++k;
    }
    if (k == d) break;
  }
  return std::nullopt;
}

PrincipalTest is_principal(const FractionalIdeal& a, bool narrow) {
  const Field& F = a.field();
  const int d = F.degree();
  std::optional<FieldElement> g;
  if (d == 1) {
    g = FieldElement(F, Rational(a.hnf()(0, 0), a.denom()));
  } else if (d == 2) {
    g = quadratic_generator(a);
    if (g) g = balance_by_units(*g);
  } else {
    if (!F.has_class_data()) throw UnsupportedError("insufficient field data: class group");
    double base = std::pow(a.norm().convert_to<double>(), 1.0 / d);
    for (double c = 2; c <= 1e6 && !g; c *= 4) g = find_generator_bounded(a, base * c);
    if (!g) throw UnsupportedError("insufficient field data: generator search exhausted");
  }
  if (!g) return {false, std::nullopt};
  if (!narrow) {
    if (sign_at(*g, 0) < 0) g = -*g;
    return {true, g};
  }
  auto pos = make_totally_positive(*g);
  if (!pos) return {false, std::nullopt};
  return {true, pos};
}

// ---------------------------------------------------------------------------

namespace {

bool equivalent(const FractionalIdeal& a, const FractionalIdeal& b, ClassKind kind) {
  return is_principal(a / b, kind == ClassKind::Narrow).principal;
}

long sign_image_size(const Field& F) { return static_cast<long>(unit_sign_table(F).size()); }

// Prime ideals in increasing norm, rational primes p <= pmax.
std::vector<PrimeIdeal> primes_up_to(const Field& F, long pmax) {
  std::vector<PrimeIdeal> out;
  for (long p = 2; p <= pmax; ++p) {
    if (!is_prime(Integer(p))) continue;
    for (auto& P : primes_above(F, Integer(p))) out.push_back(P);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.norm() < b.norm(); });
  return out;
}


}  // namespace

IdealClassGroup class_group(const Field& F, ClassKind kind) {
  static std::mutex mu;
  static std::map<std::pair<const void*, int>, IdealClassGroup> cache;
  const auto key = std::make_pair(static_cast<const void*>(&F.data()), static_cast<int>(kind));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int d = F.degree();
  IdealClassGroup G;
  G.F_ = F;
  G.kind_ = kind;
  long target = 0;  // 0: unknown, stop at the Minkowski bound
  if (d >= 3) {
    if (!F.has_class_data()) throw UnsupportedError("insufficient field data: class group");
    if (kind == ClassKind::Narrow && sign_image_size(F) != (1L << d))
      throw UnsupportedError("insufficient field data: narrow class group for d >= 3");
  }
  if (d != 2) {
    G.reps_ = {F.unit_ideal()};
    G.rep_coords_ = {{}};
  } else {
    if (kind == ClassKind::Narrow) {
      long h = class_group(F, ClassKind::Wide).order();
      target = h * 4 / sign_image_size(F);
    }
    double mink = std::sqrt(std::fabs(F.discriminant().convert_to<double>())) / 2;
    struct Elt {
      FractionalIdeal ideal;
      std::vector<long> exps;
    };
    std::vector<Elt> H{{F.unit_ideal(), {}}};
    std::vector<FractionalIdeal> gens;
    std::vector<std::vector<long>> rels;
    long pmax = std::max<long>(2, static_cast<long>(std::floor(mink)));
    size_t next = 0;
    std::vector<PrimeIdeal> primes = primes_up_to(F, pmax);
    for (;;) {
      if (next == primes.size()) {
        if (target == 0 || static_cast<long>(H.size()) >= target) break;
        pmax *= 2;
        auto more = primes_up_to(F, pmax);
        primes.assign(more.begin(), more.end());
        continue;
      }
      const PrimeIdeal& P = primes[next++];
      if (target == 0 && P.norm() > Integer(static_cast<long>(std::floor(mink)))) continue;
      FractionalIdeal cur = P.ideal;
      long m = 0;
      const Elt* hit = nullptr;
      for (m = 1; m <= 1000; ++m) {
        for (auto& h : H)
          if (equivalent(cur, h.ideal, kind)) {
            hit = &h;
            break;
          }
        if (hit) break;
        cur = cur * P.ideal;
      }
      ensure(hit != nullptr, "class group: generator order not found");
      if (m == 1) continue;
      std::vector<long> rel(gens.size() + 1, 0);
      for (size_t i = 0; i < hit->exps.size(); ++i) rel[i] = -hit->exps[i];
      rel[gens.size()] = m;
      gens.push_back(P.ideal);
      for (auto& r : rels) r.push_back(0);
      rels.push_back(rel);
      std::vector<Elt> Hn;
      FractionalIdeal pj = F.unit_ideal();
      for (long j = 0; j < m; ++j) {
        for (auto& h : H) {
          Elt e{pj * h.ideal, h.exps};
          e.exps.push_back(j);
          Hn.push_back(std::move(e));
        }
        pj = pj * P.ideal;
      }
      H = std::move(Hn);
      for (auto& h : H) h.exps.resize(gens.size(), 0);
      if (target && static_cast<long>(H.size()) == target) break;
    }
    const int g = static_cast<int>(gens.size());
    if (g == 0) {
      G.reps_ = {F.unit_ideal()};
      G.rep_coords_ = {{}};
    } else {
      ZMatrix R(g, g);
      for (int j = 0; j < g; ++j)
        for (int i = 0; i < g; ++i) R(i, j) = rels[j][i];
      SmithForm sf = smith_form(R);
      std::vector<int> rows;
      for (int i = 0; i < g; ++i)
        if (sf.diagonal[i] != 1) {
          rows.push_back(i);
          G.orders_.push_back(sf.diagonal[i]);
        }
      auto coords_of = [&](const std::vector<long>& e) {
        std::vector<Integer> c;
        for (size_t k = 0; k < rows.size(); ++k) {
          Integer s = 0;
          for (int j = 0; j < g; ++j) s += sf.U(rows[k], j) * e[j];
          c.push_back(mod(s, G.orders_[k]));
        }
        return c;
      };
      std::map<std::vector<Integer>, FractionalIdeal> best;
      for (auto& h : H) {
        auto c = coords_of(h.exps);
        auto it = best.find(c);
        if (it == best.end())
          best.emplace(c, h.ideal);
        else if (h.ideal < it->second)
          it->second = h.ideal;
      }
      for (auto& [c, I] : best) {
        G.rep_coords_.push_back(c);
        G.reps_.push_back(I);
      }
      // SNF generator k has coordinates e_k.
      for (size_t k = 0; k < rows.size(); ++k) {
        std::vector<Integer> ek(rows.size(), Integer(0));
        ek[k] = 1;
        G.gens_.push_back(best.at(ek));
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, G).first->second;
}

std::vector<Integer> IdealClassGroup::dlog(const FractionalIdeal& a) const {
  return rep_coords_[class_index(a)];
}

int IdealClassGroup::class_index(const FractionalIdeal& a) const {
  for (size_t i = 0; i < reps_.size(); ++i)
    if (equivalent(a, reps_[i], kind_)) return static_cast<int>(i);
  throw InternalError("class group: ideal matches no class representative");
}

bool IdealClassGroup::same_class(const FractionalIdeal& a, const FractionalIdeal& b) const {
  return equivalent(a, b, kind_);
}

int IdealClassGroup::index_of(const std::vector<Integer>& coords) const {
  for (size_t i = 0; i < rep_coords_.size(); ++i)
    if (rep_coords_[i] == coords) return static_cast<int>(i);
  throw InternalError("class group: coordinates out of range");
}

}  // namespace hc
