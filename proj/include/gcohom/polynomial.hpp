#pragma once

#include <map>
#include <string>
#include <utility>

namespace gcohom {

/// Integer polynomial in t and u: sum of c * t^q * u^p. One-variable series
/// simply leave p = 0.
class Poly2 {
 public:
  using Key = std::pair<int, int>;  // (q, p)

  Poly2() = default;
  static Poly2 constant(long long c);
  static Poly2 monomial(long long c, int q, int p = 0);

  void add_term(long long c, int q, int p = 0);
  long long coeff(int q, int p = 0) const;
  const std::map<Key, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 pow(unsigned e) const;
  bool operator==(const Poly2& o) const { return terms_ == o.terms_; }

  /// Substitutes u = value.
  Poly2 at_u(long long value) const;
  /// Substitutes t = value (collapses onto p).
  Poly2 at_t(long long value) const;
  /// Substitutes t = u = x (total grading).
  Poly2 total() const;
  long long evaluate(long long t, long long u) const;

  /// e.g. "1 + 2t + t^2u"
  std::string to_string(const std::string& tvar = "t", const std::string& uvar = "u") const;

 private:
  std::map<Key, long long> terms_;
};

}  // namespace gcohom
