#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/rational.hpp"

namespace parallax {

namespace detail {

/// Splits |n| = s^2 * m with m squarefree (trial division; a large leftover factor
/// that is not a perfect square is taken as squarefree).
inline std::pair<Integer, Integer> square_split(Integer n) {
  n = abs(n);
  Integer s = 1, m = 1;
  for (unsigned long p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
    Integer pp = p;
    if (pp * pp > n) break;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= pp;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) s *= pp;
    if (e % 2) m *= pp;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      s *= r;
    } else {
      m *= n;
    }
  }
  return {s, m};
}

inline Integer smallest_factor(const Integer& m) {
  for (unsigned long p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
    Integer pp = p;
    if (pp * pp > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return pp;
  }
  return m;
}

}  // namespace detail

/// Element of a multiquadratic extension of Q: a finite sum of c * sqrt(m) * i^e with
/// m a positive squarefree integer and e in {0, 1}. Square roots are the principal ones.
class AlgNum {
 public:
  using Key = std::pair<Integer, bool>;  // (m, has factor i)

  AlgNum() = default;
  AlgNum(const Rational& q) { add({Integer(1), false}, q); }  // NOLINT(google-explicit-constructor)
  AlgNum(long q) : AlgNum(Rational(q)) {}                     // NOLINT(google-explicit-constructor)

  static AlgNum sqrt(const Rational& q) {
    if (sgn(q) == 0) return {};
    Integer nd = q.get_num() * q.get_den();
    auto [s, m] = detail::square_split(nd);
    Rational coeff(s, q.get_den());
    coeff.canonicalize();
    AlgNum r;
    r.add({m, sgn(q) < 0}, coeff);
    return r;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{Integer(1), false});
  }
  Rational rational_value() const {
    auto it = terms_.find(Key{Integer(1), false});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const std::map<Key, Rational>& terms() const { return terms_; }

  AlgNum operator-() const {
    AlgNum r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend AlgNum operator+(AlgNum a, const AlgNum& b) {
    for (const auto& [k, c] : b.terms_) a.add(k, c);
    return a;
  }
  friend AlgNum operator-(AlgNum a, const AlgNum& b) {
    for (const auto& [k, c] : b.terms_) a.add(k, -c);
    return a;
  }
  friend AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    AlgNum r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Integer g = gcd(ka.first, kb.first);
        Integer m = ka.first * kb.first / (g * g);
        Rational c = ca * cb * Rational(g);
        if (ka.second && kb.second) c = -c;
        r.add({m, ka.second != kb.second}, c);
      }
    return r;
  }
  AlgNum inverse() const {
    if (is_zero()) throw DivisionByZeroPolynomial("inverse of zero algebraic number");
    if (is_rational()) return AlgNum(Rational(1) / rational_value());
    AlgNum c = conjugate(pick_generator());
    return c * (*this * c).inverse();
  }
  friend AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * b.inverse(); }

  AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
  AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
  AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }
  AlgNum& operator/=(const AlgNum& o) { return *this = *this / o; }

  friend bool operator==(const AlgNum& a, const AlgNum& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      Rational a = abs(c);
      if (first)
        os << (sgn(c) < 0 ? "-" : "");
      else
        os << (sgn(c) < 0 ? " - " : " + ");
      first = false;
      bool unit = k.first == 1 && !k.second;
      if (unit || a != 1) os << a.get_str() << (unit ? "" : "*");
      if (k.second) os << "I" << (k.first == 1 ? "" : "*");
      if (k.first != 1) os << "sqrt(" << k.first.get_str() << ")";
    }
    return os.str();
  }

 private:
  void add(const Key& k, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, ins] = terms_.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  // 0 stands for i; otherwise a prime dividing some radicand.
  Integer pick_generator() const {
    for (const auto& [k, c] : terms_)
      if (k.second) return 0;
    for (const auto& [k, c] : terms_)
      if (k.first > 1) return detail::smallest_factor(k.first);
    return 1;
  }

  AlgNum conjugate(const Integer& g) const {
    AlgNum r;
    for (const auto& [k, c] : terms_) {
      bool flip = g == 0 ? k.second : mpz_divisible_p(k.first.get_mpz_t(), g.get_mpz_t()) != 0;
      r.add(k, flip ? -c : c);
    }
    return r;
  }

  std::map<Key, Rational> terms_;
};

inline bool is_zero(const AlgNum& x) { return x.is_zero(); }
inline std::ostream& operator<<(std::ostream& os, const AlgNum& x) { return os << x.str(); }

}  // namespace parallax
