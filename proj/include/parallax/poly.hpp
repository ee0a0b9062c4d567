#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parallax/rational.hpp"

namespace parallax {

/// Power product x1^e1 * ... * xk^ek over named variables. Powers are kept
/// sorted by variable name, with strictly positive exponents.
class Monomial {
 public:
  using Power = std::pair<std::string, int>;

  Monomial() = default;

  explicit Monomial(std::vector<Power> powers) : powers_(std::move(powers)) {
    std::sort(powers_.begin(), powers_.end(),
              [](const Power& a, const Power& b) { return a.first < b.first; });
    std::vector<Power> merged;
    for (auto& p : powers_) {
      if (!merged.empty() && merged.back().first == p.first)
        merged.back().second += p.second;
      else
        merged.push_back(std::move(p));
    }
    std::erase_if(merged, [](const Power& p) { return p.second == 0; });
    powers_ = std::move(merged);
  }

  static Monomial variable(std::string name, int exp = 1) {
    return Monomial({{std::move(name), exp}});
  }

  const std::vector<Power>& powers() const { return powers_; }
  bool is_one() const { return powers_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& p : powers_) d += p.second;
    return d;
  }

  int degree_in(std::string_view v) const {
    for (const auto& p : powers_)
      if (p.first == v) return p.second;
    return 0;
  }

  Monomial without(std::string_view v) const {
    Monomial m;
    for (const auto& p : powers_)
      if (p.first != v) m.powers_.push_back(p);
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial m;
    m.powers_.reserve(powers_.size() + o.powers_.size());
    auto a = powers_.begin();
    auto b = o.powers_.begin();
    while (a != powers_.end() || b != o.powers_.end()) {
      if (b == o.powers_.end() || (a != powers_.end() && a->first < b->first)) {
        m.powers_.push_back(*a++);
      } else if (a == powers_.end() || b->first < a->first) {
        m.powers_.push_back(*b++);
      } else {
        m.powers_.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    return m;
  }

  /// this / o when o divides this.
  std::optional<Monomial> divide(const Monomial& o) const {
    Monomial m;
    auto a = powers_.begin();
    for (const auto& q : o.powers_) {
      while (a != powers_.end() && a->first < q.first) m.powers_.push_back(*a++);
      if (a == powers_.end() || a->first != q.first || a->second < q.second) return std::nullopt;
      if (a->second > q.second) m.powers_.emplace_back(a->first, a->second - q.second);
      ++a;
    }
    while (a != powers_.end()) m.powers_.push_back(*a++);
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Power> powers_;
};

/// Graded lexicographic order; among variables, the alphabetically earlier name
/// is the larger one (x > y > z).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    const auto& pa = a.powers();
    const auto& pb = b.powers();
    std::size_t i = 0, j = 0;
    while (i < pa.size() || j < pb.size()) {
      int ea = 0, eb = 0;
      if (j == pb.size() || (i < pa.size() && pa[i].first < pb[j].first)) {
        ea = pa[i++].second;
      } else if (i == pa.size() || pb[j].first < pa[i].first) {
        eb = pb[j++].second;
      } else {
        ea = pa[i++].second;
        eb = pb[j++].second;
      }
      if (ea != eb) return ea < eb;
    }
    return false;
  }
};

/// Sparse multivariate polynomial over Q with named variables.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(const std::string& name, int exp = 1) {
    return monomial(Monomial::variable(name, exp), Rational(1));
  }
  static Poly monomial(Monomial m, const Rational& c) {
    Poly p;
    if (sgn(c) != 0) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }

  Rational constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coeff() const { return terms_.rbegin()->second; }

  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  int degree_in(std::string_view v) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
  }

  int min_degree_in(std::string_view v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int e = m.degree_in(v);
      d = d < 0 ? e : std::min(d, e);
    }
    return d;
  }

  std::set<std::string> variables() const {
    std::set<std::string> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& p : m.powers()) vs.insert(p.first);
    return vs;
  }

  bool contains(std::string_view v) const {
    for (const auto& [m, c] : terms_)
      if (m.degree_in(v) > 0) return true;
    return false;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (b.is_constant()) return a.scaled(b.constant_value());
    if (a.is_constant()) return b.scaled(a.constant_value());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rational& c) const {
    if (sgn(c) == 0) return {};
    Poly r = *this;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
  }

  Poly times_monomial(const Monomial& mono, const Rational& c) const {
    Poly r;
    if (sgn(c) == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * mono, v * c);
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result(1);
    Poly b = *this;
    while (e) {
      if (e & 1u) result *= b;
      e >>= 1u;
      if (e) b *= b;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly derivative(std::string_view v) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      int e = m.degree_in(v);
      if (e == 0) continue;
      std::vector<Monomial::Power> ps;
      for (const auto& p : m.powers())
        ps.emplace_back(p.first, p.first == v ? p.second - 1 : p.second);
      r.add_term(Monomial(std::move(ps)), c * e);
    }
    return r;
  }

  /// Coefficients with respect to `v`: result[k] is the coefficient of v^k.
  std::vector<Poly> coefficients_in(std::string_view v) const {
    std::vector<Poly> out(static_cast<std::size_t>(std::max(degree_in(v), 0)) + 1);
    for (const auto& [m, c] : terms_) out[static_cast<std::size_t>(m.degree_in(v))].add_term(m.without(v), c);
    return out;
  }

  static Poly from_coefficients(const std::string& v, const std::vector<Poly>& coeffs) {
    Poly r;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      r += coeffs[k].times_monomial(Monomial::variable(v, static_cast<int>(k)), Rational(1));
    return r;
  }

  /// Leading coefficient made 1 (zero stays zero).
  Poly monic() const { return is_zero() ? *this : scaled(Rational(1) / leading_coeff()); }

  /// Quotient when `d` divides this exactly, otherwise nullopt.
  std::optional<Poly> exact_divide(const Poly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (d.is_constant()) return scaled(Rational(1) / d.constant_value());
    Poly rem = *this;
    Poly q;
    const Monomial& lm = d.leading_monomial();
    const Rational& lc = d.leading_coeff();
    while (!rem.is_zero()) {
      auto t = rem.leading_monomial().divide(lm);
      if (!t) return std::nullopt;
      Rational c = rem.leading_coeff() / lc;
      q.add_term(*t, c);
      rem -= d.times_monomial(*t, c);
    }
    return q;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

 private:
  Terms terms_;
};

namespace detail {

inline Poly exact_div_or_throw(const Poly& a, const Poly& b) {
  auto q = a.exact_divide(b);
  if (!q) throw std::logic_error("internal: inexact polynomial division");
  return *std::move(q);
}

inline Poly monomial_gcd_with(const Monomial& m, const Poly& p) {
  std::vector<Monomial::Power> ps;
  for (const auto& [v, e] : m.powers()) {
    int k = std::min(e, p.min_degree_in(v));
    if (k > 0) ps.emplace_back(v, k);
  }
  return Poly::monomial(Monomial(std::move(ps)), Rational(1));
}

/// Pseudo-remainder of a by b, both given by coefficient lists in one variable.
inline std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  int da = static_cast<int>(a.size()) - 1;
  const Poly& lb = b.back();
  int steps = da - db + 1;
  while (da >= db && !a.empty()) {
    Poly la = a.back();
    const int shift = da - db;
    for (auto& c : a) c *= lb;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= la * b[static_cast<std::size_t>(k)];
    --steps;
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    da = static_cast<int>(a.size()) - 1;
  }
  if (steps > 0) {
    Poly f = lb.pow(static_cast<unsigned>(steps));
    for (auto& c : a) c *= f;
  }
  return a;
}

}  // namespace detail

Poly gcd(const Poly& a, const Poly& b);

namespace detail {

inline Poly content_in(const std::vector<Poly>& coeffs) {
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

inline std::vector<Poly> strip(std::vector<Poly> c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return c;
}

/// gcd of two polynomials that are primitive with respect to v, via the
/// subresultant remainder sequence over Q[other variables].
inline Poly primitive_gcd(const std::string& v, const Poly& pa, const Poly& pb) {
  auto a = strip(pa.coefficients_in(v));
  auto b = strip(pb.coefficients_in(v));
  if (a.size() < b.size()) std::swap(a, b);
  Poly g(1), h(1);
  while (true) {
    const int delta = static_cast<int>(a.size()) - static_cast<int>(b.size());
    auto r = strip(prem(a, b));
    if (r.empty()) break;
    if (r.size() == 1) return Poly(1);
    a = std::move(b);
    Poly divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact_div_or_throw(c, divisor);
    b = std::move(r);
    g = a.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact_div_or_throw(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Poly cont = content_in(b);
  Poly result = Poly::from_coefficients(v, b);
  return exact_div_or_throw(result, cont);
}

}  // namespace detail

/// Greatest common divisor, normalized to leading coefficient 1. gcd(0,0) = 0.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.is_monomial()) return detail::monomial_gcd_with(a.leading_monomial(), b);
  if (b.is_monomial()) return detail::monomial_gcd_with(b.leading_monomial(), a);
  if (a == b) return a.monic();
  if (a.exact_divide(b)) return b.monic();
  if (b.exact_divide(a)) return a.monic();

  const auto va = a.variables();
  const auto vb = b.variables();
  // A common divisor is free of any variable that only one side involves.
  auto reduce = [](const Poly& p, const std::string& x, const Poly& other) {
    Poly g = other;
    for (const auto& c : p.coefficients_in(x)) {
      if (c.is_zero()) continue;
      g = gcd(g, c);
      if (g.is_constant()) return Poly(1);
    }
    return g.monic();
  };
  for (const auto& x : va)
    if (!vb.count(x)) return reduce(a, x, b);
  for (const auto& x : vb)
    if (!va.count(x)) return reduce(b, x, a);
  std::string v;
  for (const auto& x : va)
    if (vb.count(x)) {
      v = x;
      break;
    }
  if (v.empty()) return Poly(1);
  Poly ca = detail::content_in(a.coefficients_in(v));
  Poly cb = detail::content_in(b.coefficients_in(v));
  Poly pa = detail::exact_div_or_throw(a, ca);
  Poly pb = detail::exact_div_or_throw(b, cb);
  Poly gc = gcd(ca, cb);
  Poly gp = detail::primitive_gcd(v, pa, pb);
  return (gc * gp).monic();
}

}  // namespace parallax
