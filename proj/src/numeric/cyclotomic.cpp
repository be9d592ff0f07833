#include "hc/numeric/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace hc {

int euler_phi(int M) {
  int r = M, n = M;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

const std::vector<long>& cyclotomic_polynomial(int M) {
  static std::mutex mu;
  static std::map<int, std::vector<long>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
  }
  // Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d, by exact long division.
  std::vector<long> num(M + 1, 0);
  num[0] = -1;
  num[M] = 1;
  for (int d = 1; d < M; ++d) {
    if (M % d) continue;
    const std::vector<long>& den = cyclotomic_polynomial(d);
    const int dd = static_cast<int>(den.size()) - 1;
    const int nd = static_cast<int>(num.size()) - 1;
    std::vector<long> q(nd - dd + 1, 0);
    for (int i = nd - dd; i >= 0; --i) {
      q[i] = num[i + dd];  // den is monic
      for (int j = 0; j <= dd; ++j) num[i + j] -= q[i] * den[j];
    }
    num = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(M, num).first->second;
}

Cyclotomic::Cyclotomic(int level, std::vector<Rational> dense, bool reduce) : level_(level) {
  if (!reduce) {
    c_ = std::move(dense);
    return;
  }
  const std::vector<long>& phi = cyclotomic_polynomial(level);
  const int deg = static_cast<int>(phi.size()) - 1;
  for (int i = static_cast<int>(dense.size()) - 1; i >= deg; --i) {
    if (dense[i] == 0) continue;
    Rational q = dense[i];
    for (int j = 0; j <= deg; ++j)
      if (phi[j]) dense[i - deg + j] -= q * phi[j];
  }
  dense.resize(deg);
  c_ = std::move(dense);
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& e) {
  Rational f = frac(e);
  int M = static_cast<int>(to_long(den(f)));
  int j = static_cast<int>(to_long(num(f)));
  std::vector<Rational> dense(M, Rational(0));
  dense[j] = 1;
  return Cyclotomic(M, std::move(dense), true);
}

bool Cyclotomic::is_zero() const {
  for (auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  ensure(is_rational(), "Cyclotomic::rational_value: not rational");
  return c_[0];
}

bool Cyclotomic::is_real() const { return *this == conj(); }

Cyclotomic Cyclotomic::lift(int L) const {
  if (L == level_) return *this;
  ensure(L % level_ == 0, "Cyclotomic::lift: level must divide target");
  const int s = L / level_;
  std::vector<Rational> dense(L, Rational(0));
  for (size_t j = 0; j < c_.size(); ++j) dense[j * s] = c_[j];
  return Cyclotomic(L, std::move(dense), true);
}

Cyclotomic Cyclotomic::galois(long a) const {
  ensure(std::gcd(a, static_cast<long>(level_)) == 1, "Cyclotomic::galois: a not coprime");
  std::vector<Rational> dense(level_, Rational(0));
  for (size_t j = 0; j < c_.size(); ++j) {
    long t = (static_cast<long>(j) * a) % level_;
    if (t < 0) t += level_;
    dense[t] += c_[j];
  }
  return Cyclotomic(level_, std::move(dense), true);
}

Cyclotomic Cyclotomic::inverse() const {
  ensure(!is_zero(), "Cyclotomic::inverse: zero");
  Cyclotomic others(Rational(1));
  others = others.lift(level_);
  for (long a = 2; a < level_; ++a)
    if (std::gcd(a, static_cast<long>(level_)) == 1) others *= galois(a);
  Cyclotomic n = *this * others;
  return others * Cyclotomic(Rational(1) / n.rational_value());
}

Rational Cyclotomic::norm() const {
  Cyclotomic p(Rational(1));
  for (long a = 1; a < std::max(level_, 2); ++a)
    if (std::gcd(a, static_cast<long>(level_)) == 1) p *= galois(a);
  return p.rational_value();
}

Ball Cyclotomic::to_ball(Precision prec) const {
  const Precision wp = prec + 32;
  Ball acc(wp);
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    Complex z = exp_2pi_i(Rational(static_cast<long>(j), level_), wp);
    Ball term(z * Real(c_[j], wp), 0.0);
    term.inflate(rounding_bound(term.mid()) * 4);
    acc += term;
  }
  return acc;
}

std::string Cyclotomic::str() const {
  std::string out;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    if (!out.empty()) out += " + ";
    out += to_string(c_[j]);
    if (j) out += "*z" + std::to_string(level_) + "^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

namespace {
int common_level(const Cyclotomic& a, const Cyclotomic& b) {
  return std::lcm(a.level(), b.level());
}
}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  int L = common_level(*this, o);
  Cyclotomic a = lift(L), b = o.lift(L);
  for (size_t j = 0; j < a.c_.size(); ++j) a.c_[j] += b.c_[j];
  *this = std::move(a);
  return *this;
}
Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  int L = common_level(*this, o);
  Cyclotomic a = lift(L), b = o.lift(L);
  for (size_t j = 0; j < a.c_.size(); ++j) a.c_[j] -= b.c_[j];
  *this = std::move(a);
  return *this;
}
Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  int L = common_level(*this, o);
  Cyclotomic a = lift(L), b = o.lift(L);
  std::vector<Rational> dense(a.c_.size() + b.c_.size(), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) dense[i + j] += a.c_[i] * b.c_[j];
  }
  *this = Cyclotomic(L, std::move(dense), true);
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  int L = std::lcm(a.level(), b.level());
  return a.lift(L).c_ == b.lift(L).c_;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic r = a;
  r += b;
  return r;
}
Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic r = a;
  r -= b;
  return r;
}
Cyclotomic operator-(const Cyclotomic& a) { return Cyclotomic(Rational(0)) - a; }
Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic r = a;
  r *= b;
  return r;
}
Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
Cyclotomic pow(const Cyclotomic& a, long n) {
  if (n < 0) return pow(a.inverse(), -n);
  Cyclotomic r(Rational(1)), b = a;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

}  // namespace hc
