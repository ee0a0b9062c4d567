#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parallax/algnum.hpp"
#include "parallax/errors.hpp"
#include "parallax/ratexpr.hpp"

namespace parallax {

inline std::string coeff_str(const Rational& q) { return q.get_str(); }
inline std::string coeff_str(const AlgNum& a) { return a.str(); }
inline bool coeff_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool coeff_is_zero(const AlgNum& a) { return a.is_zero(); }

/// Dense univariate polynomial over a field T, coefficients low to high, no trailing zeros.
template <class T>
class UPoly {
 public:
  UPoly() = default;
  UPoly(const T& c) : c_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  explicit UPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static UPoly x() { return UPoly(std::vector<T>{T(0), T(1)}); }
  static UPoly monomial(const T& c, int d) {
    std::vector<T> v(static_cast<std::size_t>(d) + 1, T(0));
    v.back() = c;
    return UPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : T(0); }
  T lc() const { return c_.empty() ? T(0) : c_.back(); }

  /// Order of vanishing at 0 (lowest nonzero index).
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!coeff_is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(v));
  }
  UPoly scaled(const T& s) const {
    UPoly r = *this;
    for (auto& a : r.c_) a *= s;
    r.trim();
    return r;
  }
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> v(c_.size() - 1, T(0));
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * T(static_cast<long>(i));
    return UPoly(std::move(v));
  }
  UPoly pow(unsigned e) const {
    UPoly r(T(1)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1u;
    }
    return r;
  }

  T eval(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// p(x + a).
  UPoly shifted(const T& a) const {
    UPoly r, base(std::vector<T>{a, T(1)});
    for (std::size_t i = c_.size(); i-- > 0;) r = r * base + UPoly(c_[i]);
    return r;
  }

  /// Quotient and remainder.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw DivisionByZeroPolynomial("polynomial division by zero");
    UPoly q, r = *this;
    const T inv = T(1) / d.lc();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      UPoly t = monomial(r.lc() * inv, r.degree() - d.degree());
      q += t;
      r -= t * d;
    }
    return {q, r};
  }

  UPoly monic() const { return is_zero() ? *this : scaled(T(1) / lc()); }

  std::string str(const std::string& var = "z") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (coeff_is_zero(c_[i])) continue;
      std::string cs = coeff_str(c_[i]);
      const bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
      bool neg = !compound && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      if (compound) cs = "(" + cs + ")";
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      if (i == 0) {
        os << cs;
        continue;
      }
      if (cs != "1") os << cs << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& c : c_) n += coeff_is_zero(c) ? 0 : 1;
    return n;
  }

 private:
  void trim() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
UPoly<T> gcd(UPoly<T> a, UPoly<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Reduced fraction of univariate polynomials with monic denominator.
template <class T>
class URat {
 public:
  URat() : d_(T(1)) {}
  URat(const T& c) : n_(c), d_(T(1)) {}          // NOLINT(google-explicit-constructor)
  URat(UPoly<T> p) : n_(std::move(p)), d_(T(1)) {}  // NOLINT(google-explicit-constructor)
  URat(UPoly<T> n, UPoly<T> d) : n_(std::move(n)), d_(std::move(d)) { normalize(); }

  const UPoly<T>& num() const { return n_; }
  const UPoly<T>& den() const { return d_; }
  bool is_zero() const { return n_.is_zero(); }

  URat operator-() const { return URat(-n_, d_); }
  friend URat operator+(const URat& a, const URat& b) { return URat(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_); }
  friend URat operator-(const URat& a, const URat& b) { return a + (-b); }
  friend URat operator*(const URat& a, const URat& b) { return URat(a.n_ * b.n_, a.d_ * b.d_); }
  friend URat operator/(const URat& a, const URat& b) {
    if (b.is_zero()) throw DivisionByZeroPolynomial("division by the zero rational function");
    return URat(a.n_ * b.d_, a.d_ * b.n_);
  }
  URat& operator+=(const URat& o) { return *this = *this + o; }
  URat& operator-=(const URat& o) { return *this = *this - o; }
  URat& operator*=(const URat& o) { return *this = *this * o; }
  friend bool operator==(const URat& a, const URat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }

  URat derivative() const { return URat(n_.derivative() * d_ - n_ * d_.derivative(), d_ * d_); }

  std::string str(const std::string& var = "z") const {
    std::string ns = n_.str(var);
    if (d_.degree() == 0) return ns;
    if (n_.term_count() > 1) ns = "(" + ns + ")";
    std::string ds = d_.str(var);
    if (d_.term_count() > 1) ds = "(" + ds + ")";
    return ns + "/" + ds;
  }

 private:
  void normalize() {
    if (d_.is_zero()) throw DivisionByZeroPolynomial("zero denominator");
    if (n_.is_zero()) {
      d_ = UPoly<T>(T(1));
      return;
    }
    UPoly<T> g = gcd(n_, d_);
    if (g.degree() > 0) {
      n_ = n_.divmod(g).first;
      d_ = d_.divmod(g).first;
    }
    T inv = T(1) / d_.lc();
    n_ = n_.scaled(inv);
    d_ = d_.scaled(inv);
  }
  UPoly<T> n_, d_;
};

/// Univariate view of a polynomial with rational coefficients in `var` only.
inline UPoly<Rational> to_upoly(const Poly& p, const std::string& var) {
  std::vector<Rational> v;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [name, e] : m.powers())
      if (name != var) throw UnsupportedInput("expected a rational function of " + var + " alone", {{"symbol", name}});
    auto d = static_cast<std::size_t>(m.degree_in(var));
    if (v.size() <= d) v.resize(d + 1, Rational(0));
    v[d] += c;
  }
  return UPoly<Rational>(std::move(v));
}

inline URat<Rational> to_urat(const RatExpr& f, const std::string& var) {
  return URat<Rational>(to_upoly(f.num(), var), to_upoly(f.den(), var));
}

inline Poly to_poly(const UPoly<Rational>& p, const std::string& var) {
  Poly r;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    r += Poly::variable(var, static_cast<int>(i)).scaled(p.coeffs()[i]);
  return r;
}

inline RatExpr to_ratexpr(const URat<Rational>& f, const std::string& var) {
  return RatExpr::fraction(to_poly(f.num(), var), to_poly(f.den(), var));
}

template <class S, class T>
UPoly<S> lift(const UPoly<T>& p) {
  std::vector<S> v;
  for (const auto& c : p.coeffs()) v.push_back(S(c));
  return UPoly<S>(std::move(v));
}

template <class S, class T>
URat<S> lift(const URat<T>& f) {
  return URat<S>(lift<S>(f.num()), lift<S>(f.den()));
}

}  // namespace parallax
