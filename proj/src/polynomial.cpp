#include "gcohom/polynomial.hpp"

#include <sstream>

namespace gcohom {

Poly2 Poly2::constant(long long c) { return monomial(c, 0, 0); }

Poly2 Poly2::monomial(long long c, int q, int p) {
  Poly2 r;
  r.add_term(c, q, p);
  return r;
}

void Poly2::add_term(long long c, int q, int p) {
  if (c == 0) return;
  auto& slot = terms_[{q, p}];
  slot += c;
  if (slot == 0) terms_.erase({q, p});
}

long long Poly2::coeff(int q, int p) const {
  auto it = terms_.find({q, p});
  return it == terms_.end() ? 0 : it->second;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(c, k.first, k.second);
  return r;
}

Poly2 Poly2::operator-(const Poly2& o) const {
  Poly2 r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(-c, k.first, k.second);
  return r;
}

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r;
  for (const auto& [a, x] : terms_)
    for (const auto& [b, y] : o.terms_) r.add_term(x * y, a.first + b.first, a.second + b.second);
  return r;
}

Poly2 Poly2::pow(unsigned e) const {
  Poly2 r = constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Poly2 Poly2::at_u(long long value) const {
  Poly2 r;
  for (const auto& [k, c] : terms_) {
    long long f = 1;
    for (int i = 0; i < k.second; ++i) f *= value;
    r.add_term(c * f, k.first, 0);
  }
  return r;
}

Poly2 Poly2::at_t(long long value) const {
  Poly2 r;
  for (const auto& [k, c] : terms_) {
    long long f = 1;
    for (int i = 0; i < k.first; ++i) f *= value;
    r.add_term(c * f, 0, k.second);
  }
  return r;
}

Poly2 Poly2::total() const {
  Poly2 r;
  for (const auto& [k, c] : terms_) r.add_term(c, k.first + k.second, 0);
  return r;
}

long long Poly2::evaluate(long long t, long long u) const {
  long long s = 0;
  for (const auto& [k, c] : terms_) {
    long long f = c;
    for (int i = 0; i < k.first; ++i) f *= t;
    for (int i = 0; i < k.second; ++i) f *= u;
    s += f;
  }
  return s;
}

std::string Poly2::to_string(const std::string& tvar, const std::string& uvar) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Order by total degree, then by t-degree.
  std::map<std::pair<int, int>, long long> ordered;
  for (const auto& [k, c] : terms_) ordered[{k.first + k.second, -k.first}] = c;
  for (const auto& [key, c] : ordered) {
    int q = -key.second;
    int p = key.first - q;
    long long mag = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool has_var = q != 0 || p != 0;
    if (mag != 1 || !has_var) os << mag;
    if (q != 0) os << tvar << (q != 1 ? "^" + std::to_string(q) : "");
    if (p != 0) os << uvar << (p != 1 ? "^" + std::to_string(p) : "");
  }
  return os.str();
}

}  // namespace gcohom
