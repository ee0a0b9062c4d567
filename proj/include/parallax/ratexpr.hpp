#pragma once

#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/poly.hpp"

namespace parallax {

/// Rational function num/den over Q in named symbols. Canonical: gcd(num, den) = 1
/// and the leading coefficient of den is 1, so structural equality is equality.
class RatExpr {
 public:
  RatExpr() : den_(1) {}
  RatExpr(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatExpr(long c) : num_(c), den_(1) {}             // NOLINT(google-explicit-constructor)
  RatExpr(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)

  static RatExpr symbol(const std::string& name) { return RatExpr(Poly::variable(name)); }

  static RatExpr fraction(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw DivisionByZeroPolynomial("denominator is the zero polynomial");
    if (n.is_zero()) return {};
    if (d.is_constant()) return RatExpr(n.scaled(Rational(1) / d.constant_value()));
    Poly g = gcd(n, d);
    RatExpr r;
    if (g.is_constant()) {
      r.num_ = n;
      r.den_ = d;
    } else {
      r.num_ = detail::exact_div_or_throw(n, g);
      r.den_ = detail::exact_div_or_throw(d, g);
    }
    r.normalize_lc();
    return r;
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// True when the value is a plain rational number.
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  Rational rational_value() const { return num_.constant_value(); }

  std::set<std::string> symbols() const {
    auto s = num_.variables();
    auto d = den_.variables();
    s.insert(d.begin(), d.end());
    return s;
  }
  bool contains(std::string_view v) const { return num_.contains(v) || den_.contains(v); }

  RatExpr operator-() const {
    RatExpr r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatExpr operator+(const RatExpr& a, const RatExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_constant() && b.den_.is_constant()) return RatExpr(a.num_ + b.num_);
    if (a.den_ == b.den_) return fraction(a.num_ + b.num_, a.den_);
    Poly g = gcd(a.den_, b.den_);
    if (g.is_constant()) return raw(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly a1 = detail::exact_div_or_throw(a.den_, g);
    Poly b1 = detail::exact_div_or_throw(b.den_, g);
    Poly t = a.num_ * b1 + b.num_ * a1;
    if (t.is_zero()) return {};
    Poly g2 = gcd(t, g);
    if (g2.is_constant()) return raw(t, a1 * b.den_);
    return raw(detail::exact_div_or_throw(t, g2), a1 * detail::exact_div_or_throw(b.den_, g2));
  }
  friend RatExpr operator-(const RatExpr& a, const RatExpr& b) { return a + (-b); }

  friend RatExpr operator*(const RatExpr& a, const RatExpr& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant()) return RatExpr(a.num_ * b.num_);
    Poly g1 = gcd(a.num_, b.den_);
    Poly g2 = gcd(b.num_, a.den_);
    Poly n1 = g1.is_constant() ? a.num_ : detail::exact_div_or_throw(a.num_, g1);
    Poly d2 = g1.is_constant() ? b.den_ : detail::exact_div_or_throw(b.den_, g1);
    Poly n2 = g2.is_constant() ? b.num_ : detail::exact_div_or_throw(b.num_, g2);
    Poly d1 = g2.is_constant() ? a.den_ : detail::exact_div_or_throw(a.den_, g2);
    return raw(n1 * n2, d1 * d2);
  }

  RatExpr inverse() const {
    if (is_zero()) throw DivisionByZeroPolynomial("inverse of zero");
    return raw(den_, num_);
  }
  friend RatExpr operator/(const RatExpr& a, const RatExpr& b) { return a * b.inverse(); }

  RatExpr& operator+=(const RatExpr& o) { return *this = *this + o; }
  RatExpr& operator-=(const RatExpr& o) { return *this = *this - o; }
  RatExpr& operator*=(const RatExpr& o) { return *this = *this * o; }
  RatExpr& operator/=(const RatExpr& o) { return *this = *this / o; }

  RatExpr pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    return raw(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  }

  friend bool operator==(const RatExpr& a, const RatExpr& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Formal partial derivative treating every other symbol as independent.
  RatExpr partial(std::string_view v) const {
    Poly dn = num_.derivative(v);
    if (den_.is_constant()) return RatExpr(dn.scaled(Rational(1) / den_.constant_value()));
    Poly dd = den_.derivative(v);
    if (dd.is_zero()) return fraction(dn, den_);
    return fraction(dn * den_ - num_ * dd, den_ * den_);
  }

  /// Simultaneous substitution of symbols by expressions.
  RatExpr substitute(const std::map<std::string, RatExpr>& s) const {
    RatExpr d = substitute_poly(den_, s);
    if (d.is_zero()) throw DivisionByZeroPolynomial("denominator vanishes after substitution");
    return substitute_poly(num_, s) / d;
  }

  static RatExpr substitute_poly(const Poly& p, const std::map<std::string, RatExpr>& s) {
    RatExpr acc;
    std::map<std::pair<std::string, int>, RatExpr> powers;
    for (const auto& [m, c] : p.terms()) {
      RatExpr term(c);
      for (const auto& [v, e] : m.powers()) {
        auto it = s.find(v);
        if (it == s.end()) {
          term *= RatExpr(Poly::variable(v, e));
          continue;
        }
        auto key = std::make_pair(v, e);
        auto pit = powers.find(key);
        if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
        term *= pit->second;
      }
      acc += term;
    }
    return acc;
  }

 private:
  // Assumes gcd(n, d) = 1 already.
  static RatExpr raw(Poly n, Poly d) {
    if (d.is_zero()) throw DivisionByZeroPolynomial("denominator is the zero polynomial");
    RatExpr r;
    if (n.is_zero()) return r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    r.normalize_lc();
    return r;
  }

  void normalize_lc() {
    Rational lc = den_.leading_coeff();
    if (lc != 1) {
      Rational inv = Rational(1) / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Poly num_;
  Poly den_;
};

namespace detail {

inline void print_coeff_term(std::ostream& os, const Monomial& m, const Rational& c, bool first) {
  Rational a = abs(c);
  if (first) {
    if (sgn(c) < 0) os << '-';
  } else {
    os << (sgn(c) < 0 ? " - " : " + ");
  }
  bool need_star = false;
  if (m.is_one() || a != 1) {
    os << a.get_str();
    need_star = true;
  }
  for (const auto& [v, e] : m.powers()) {
    if (need_star) os << '*';
    os << v;
    if (e != 1) os << '^' << e;
    need_star = true;
  }
}

}  // namespace detail

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    detail::print_coeff_term(os, it->first, it->second, first);
    first = false;
  }
  return os.str();
}

/// Text in the expression grammar; parses back to the same value.
inline std::string to_string(const RatExpr& f) {
  const Poly& n = f.num();
  const Poly& d = f.den();
  if (d.is_constant()) return to_string(n);
  std::string ns = to_string(n);
  if (n.size() > 1) ns = "(" + ns + ")";
  std::string ds = to_string(d);
  const bool bare = d.is_monomial() && d.leading_coeff() == 1 && d.leading_monomial().powers().size() == 1;
  if (!bare) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

inline std::ostream& operator<<(std::ostream& os, const RatExpr& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace parallax
