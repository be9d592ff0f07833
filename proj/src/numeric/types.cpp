#include "hc/numeric/types.hpp"

#include <algorithm>
#include <cctype>

namespace hc {

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto parse_int = [&](const std::string& t, size_t offset) {
    size_t i = 0;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size())
      throw ValidationError("malformed rational '" + raw + "' at position " +
                            std::to_string(offset + i));
    for (size_t j = i; j < t.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(t[j])))
        throw ValidationError("malformed rational '" + raw + "' at position " +
                              std::to_string(offset + j));
    return Integer(t[0] == '+' ? t.substr(1) : t);
  };
  size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, 0));
  Integer p = parse_int(s.substr(0, slash), 0);
  Integer q = parse_int(s.substr(slash + 1), slash + 1);
  if (q == 0) throw ValidationError("rational '" + raw + "' has zero denominator");
  return Rational(p, q);
}

Integer pow(const Integer& base, unsigned e) { return boost::multiprecision::pow(base, e); }

Rational pow(const Rational& base, long e) {
  if (e < 0) {
    ensure(base != 0, "pow: zero to negative power");
    return pow(Rational(1) / base, -e);
  }
  Rational r = 1, b = base;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

std::vector<std::pair<Integer, int>> factor_integer(Integer n) {
  ensure(n > 0, "factor_integer: n must be positive");
  std::vector<std::pair<Integer, int>> out;
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (auto& [p, e] : factor_integer(n)) {
    size_t m = ds.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < m; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  auto f = factor_integer(n);
  return f.size() == 1 && f[0].second == 1;
}

bool is_squarefree(const Integer& n) {
  for (auto& [p, e] : factor_integer(boost::multiprecision::abs(n)))
    if (e > 1) return false;
  return true;
}

}  // namespace hc
