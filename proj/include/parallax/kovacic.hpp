#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parallax/algnum.hpp"
#include "parallax/errors.hpp"
#include "parallax/linalg.hpp"
#include "parallax/ratexpr.hpp"
#include "parallax/upoly.hpp"

namespace parallax {

enum class GroupLevel { SL2, PSL2 };

enum class GaloisTag {
  Trivial,
  FiniteCyclic,
  Unipotent,
  TriangularFinite,
  DiagonalTorus,
  Borel,
  DihedralFinite,
  DihedralInfinite,
  Tetrahedral,
  Octahedral,
  Icosahedral,
  Full
};

inline const char* tag_name(GaloisTag t) {
  switch (t) {
    case GaloisTag::Trivial: return "Trivial";
    case GaloisTag::FiniteCyclic: return "FiniteCyclic";
    case GaloisTag::Unipotent: return "Unipotent";
    case GaloisTag::TriangularFinite: return "TriangularFinite";
    case GaloisTag::DiagonalTorus: return "DiagonalTorus";
    case GaloisTag::Borel: return "Borel";
    case GaloisTag::DihedralFinite: return "DihedralFinite";
    case GaloisTag::DihedralInfinite: return "DihedralInfinite";
    case GaloisTag::Tetrahedral: return "Tetrahedral";
    case GaloisTag::Octahedral: return "Octahedral";
    case GaloisTag::Icosahedral: return "Icosahedral";
    case GaloisTag::Full: return "Full";
  }
  return "?";
}

/// A conjugacy class of algebraic subgroups of SL2 or PSL2.
/// `order` is the group order for FiniteCyclic and DihedralFinite, and the order of
/// the finite diagonal quotient for TriangularFinite (the group is G_a x| mu_N).
struct GaloisClass {
  GroupLevel level = GroupLevel::SL2;
  GaloisTag tag = GaloisTag::Full;
  long order = 0;
  bool finiteness_certified = true;

  bool has_order() const {
    return tag == GaloisTag::FiniteCyclic || tag == GaloisTag::DihedralFinite || tag == GaloisTag::TriangularFinite;
  }
  std::string str() const {
    std::string s = tag_name(tag);
    if (has_order()) s += "(" + std::to_string(order) + ")";
    return s;
  }
  std::string level_name() const { return level == GroupLevel::SL2 ? "SL2" : "PSL2"; }

  friend bool operator==(const GaloisClass&, const GaloisClass&) = default;
};

inline GaloisClass make_class(GroupLevel level, GaloisTag tag, long order = 0) { return {level, tag, order, true}; }

/// Liouvillian certificate: rational solutions u of u' + u^2 = r (degree 1), or the
/// minimal polynomial of u over Q(z), coefficients of w^0..w^n with w^n monic.
struct KovacicCertificate {
  int kovacic_case = 0;
  int degree = 0;
  std::vector<std::string> riccati;
  std::vector<std::string> minimal_polynomial;
  bool verified = false;
};

struct KovacicResult {
  GaloisClass sl2;
  std::optional<KovacicCertificate> certificate;
};

namespace detail {

using QPoly = UPoly<Rational>;
using QRat = URat<Rational>;
using APoly = UPoly<AlgNum>;
using ARat = URat<AlgNum>;

/// First n coefficients of num/den as a power series at 0 (den(0) != 0).
inline std::vector<Rational> series_quotient(const QPoly& num, const QPoly& den, int n) {
  std::vector<Rational> out;
  const Rational d0 = den.coeff(0);
  for (int j = 0; j < n; ++j) {
    Rational acc = num.coeff(j);
    for (int i = 1; i <= j; ++i) acc -= den.coeff(i) * out[static_cast<std::size_t>(j - i)];
    out.push_back(acc / d0);
  }
  return out;
}

/// First n coefficients of the square root of a power series with a(0) != 0.
inline std::vector<AlgNum> series_sqrt(const std::vector<Rational>& a, int n) {
  std::vector<AlgNum> s;
  s.push_back(AlgNum::sqrt(a.at(0)));
  const AlgNum inv2s0 = (AlgNum(2) * s[0]).inverse();
  for (int j = 1; j < n; ++j) {
    AlgNum acc = j < static_cast<int>(a.size()) ? AlgNum(a[static_cast<std::size_t>(j)]) : AlgNum();
    for (int i = 1; i < j; ++i) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j - i)];
    s.push_back(acc * inv2s0);
  }
  return s;
}

inline std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<std::pair<Integer, int>> f;
  for (unsigned long p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
    Integer pp = p;
    if (pp * pp > n) break;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= pp;
      ++e;
    }
    if (e) f.emplace_back(pp, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  std::vector<Integer> out{Integer(1)};
  for (const auto& [p, e] : f) {
    std::size_t base = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

/// Rational roots with multiplicities; the polynomial must split over Q.
inline std::vector<std::pair<Rational, int>> rational_roots(QPoly t) {
  std::vector<std::pair<Rational, int>> out;
  if (t.degree() <= 0) return out;
  int zero_mult = 0;
  while (t.degree() > 0 && sgn(t.coeff(0)) == 0) {
    t = t.divmod(QPoly::x()).first;
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(Rational(0), zero_mult);
  if (t.degree() > 0) {
    Integer L = 1;
    for (const auto& c : t.coeffs()) L = lcm(L, Integer(c.get_den()));
    Integer a0 = Integer(t.coeff(0) * Rational(L)), an = Integer(t.lc() * Rational(L));
    std::vector<Integer> ps = divisors(a0), qs = divisors(an);
    std::set<Rational> candidates;
    for (const auto& p : ps)
      for (const auto& q : qs) {
        Rational c(p, q);
        c.canonicalize();
        candidates.insert(c);
        candidates.insert(-c);
      }
    for (const auto& c : candidates) {
      int m = 0;
      const QPoly lin(std::vector<Rational>{-c, Rational(1)});
      while (t.degree() > 0 && sgn(t.eval(c)) == 0) {
        t = t.divmod(lin).first;
        ++m;
      }
      if (m) out.emplace_back(c, m);
      if (t.degree() <= 0) break;
    }
  }
  if (t.degree() > 0)
    throw UnsupportedInput("the poles of r must be rational points", {{"irreducible factor", t.str()}});
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
UPoly<T> lcm_poly(const UPoly<T>& a, const UPoly<T>& b) {
  return (a * b).divmod(gcd(a, b)).first.monic();
}

/// Monic polynomial solutions of degree d of sum_k op[k] P^(k) = 0: one particular
/// solution followed by its translates along a basis of the homogeneous solutions.
template <class T>
std::vector<UPoly<T>> polynomial_solutions(const std::vector<URat<T>>& op, int d) {
  UPoly<T> D(T(1));
  for (const auto& c : op) D = lcm_poly(D, c.den());
  std::vector<UPoly<T>> coeffs;
  for (const auto& c : op) coeffs.push_back(c.num() * D.divmod(c.den()).first);
  auto apply = [&](UPoly<T> p) {
    UPoly<T> acc;
    for (const auto& c : coeffs) {
      acc += c * p;
      p = p.derivative();
    }
    return acc;
  };
  std::vector<UPoly<T>> images;
  int rows = 1;
  for (int j = 0; j <= d; ++j) {
    images.push_back(apply(UPoly<T>::monomial(T(1), j)));
    rows = std::max(rows, images.back().degree() + 1);
  }
  Matrix<T> A(static_cast<std::size_t>(rows), static_cast<std::size_t>(d));
  std::vector<T> rhs(static_cast<std::size_t>(rows), T(0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < d; ++j) A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = images[static_cast<std::size_t>(j)].coeff(i);
    rhs[static_cast<std::size_t>(i)] = -images[static_cast<std::size_t>(d)].coeff(i);
  }
  auto x = A.solve(rhs);
  if (!x) return {};
  auto build = [&](const std::vector<T>& low) {
    std::vector<T> v(low);
    v.push_back(T(1));
    return UPoly<T>(std::move(v));
  };
  std::vector<UPoly<T>> out{build(*x)};
  for (const auto& n : A.nullspace()) {
    std::vector<T> y = *x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += n[i];
    out.push_back(build(y));
  }
  return out;
}

inline bool is_nonneg_integer(const AlgNum& a) {
  return a.is_rational() && a.rational_value().get_den() == 1 && sgn(a.rational_value()) >= 0;
}

inline APoly linear_factor(const Rational& c) { return APoly(std::vector<AlgNum>{AlgNum(-c), AlgNum(1)}); }

/// Local data of r = s/t at its poles and at infinity.
struct LocalData {
  Rational c;
  int order = 0;                 // pole order; at infinity: the order of vanishing o(inf)
  std::vector<Rational> series;  // r = x^{-order} sum series[j] x^j, x = z - c or 1/z
  bool at_infinity = false;
};

struct Expansion {
  QRat r;
  std::vector<LocalData> poles;
  LocalData inf;
  bool r_zero = false;
};

inline Expansion expand(const QRat& r, int terms) {
  Expansion e;
  e.r = r;
  e.r_zero = r.is_zero();
  const QPoly& s = r.num();
  const QPoly& t = r.den();
  for (const auto& [c, k] : rational_roots(t)) {
    LocalData p;
    p.c = c;
    p.order = k;
    QPoly tc = t.shifted(c);
    QPoly tt(std::vector<Rational>(tc.coeffs().begin() + k, tc.coeffs().end()));
    p.series = series_quotient(s.shifted(c), tt, terms);
    e.poles.push_back(std::move(p));
  }
  e.inf.at_infinity = true;
  if (e.r_zero) {
    e.inf.order = 1 << 20;
    return e;
  }
  e.inf.order = t.degree() - s.degree();
  auto rev = [](const QPoly& p) {
    std::vector<Rational> v = p.coeffs();
    std::reverse(v.begin(), v.end());
    return QPoly(std::move(v));
  };
  e.inf.series = series_quotient(rev(s), rev(t), terms);
  return e;
}

inline Rational series_at(const LocalData& d, int j) {
  return j < static_cast<int>(d.series.size()) ? d.series[static_cast<std::size_t>(j)] : Rational(0);
}

/// sqrt(1 + 4 b) where b is the coefficient of the double pole (or of z^-2 at infinity).
inline AlgNum double_pole_root(const LocalData& d) {
  Rational b = d.at_infinity && d.order > 2 ? Rational(0) : series_at(d, 0);
  return AlgNum::sqrt(Rational(1) + Rational(4) * b);
}

struct Case1Option {
  AlgNum alpha;
  ARat sqrt_part;
  bool exponential = false;
};

inline std::optional<std::vector<Case1Option>> case1_options(const LocalData& d) {
  std::vector<Case1Option> out;
  const AlgNum half = AlgNum(make_rational(1, 2));
  if (!d.at_infinity) {
    if (d.order == 1) return std::vector<Case1Option>{{AlgNum(1), ARat(), false}};
    if (d.order == 2) {
      AlgNum root = double_pole_root(d);
      out.push_back({half + half * root, ARat(), false});
      out.push_back({half - half * root, ARat(), false});
      return out;
    }
    if (d.order % 2) return std::nullopt;
    const int nu = d.order / 2;
    auto s = series_sqrt(d.series, nu);
    APoly num;
    for (int j = 0; j <= nu - 2; ++j) num += linear_factor(d.c).pow(static_cast<unsigned>(j)).scaled(s[static_cast<std::size_t>(j)]);
    ARat part(num, linear_factor(d.c).pow(static_cast<unsigned>(nu)));
    AlgNum b_over_a = AlgNum(2) * s[static_cast<std::size_t>(nu - 1)];
    out.push_back({half * (b_over_a + AlgNum(nu)), part, true});
    out.push_back({half * (-b_over_a + AlgNum(nu)), -part, true});
    return out;
  }
  if (d.order > 2) return std::vector<Case1Option>{{AlgNum(0), ARat(), false}, {AlgNum(1), ARat(), false}};
  if (d.order == 2) {
    AlgNum root = double_pole_root(d);
    out.push_back({half + half * root, ARat(), false});
    out.push_back({half - half * root, ARat(), false});
    return out;
  }
  if (d.order % 2) return std::nullopt;
  const int nu = -d.order / 2;
  auto s = series_sqrt(d.series, nu + 2);
  std::vector<AlgNum> coeffs(static_cast<std::size_t>(nu) + 1);
  for (int j = 0; j <= nu; ++j) coeffs[static_cast<std::size_t>(nu - j)] = s[static_cast<std::size_t>(j)];
  ARat part{APoly(coeffs)};
  AlgNum b_over_a = AlgNum(2) * s[static_cast<std::size_t>(nu + 1)];
  out.push_back({half * (b_over_a - AlgNum(nu)), part, true});
  out.push_back({half * (-b_over_a - AlgNum(nu)), -part, true});
  return out;
}

/// Local exponent difference at a regular singular point, or nullopt when irregular.
inline std::optional<AlgNum> exponent_difference(const LocalData& d) {
  if (!d.at_infinity) {
    if (d.order == 1) return AlgNum(1);
    if (d.order == 2) return double_pole_root(d);
    return std::nullopt;
  }
  if (d.order >= 4) return AlgNum(0);  // ordinary point
  if (d.order == 3) return AlgNum(1);
  if (d.order == 2) return double_pole_root(d);
  return std::nullopt;
}

inline long den_of(const Rational& q) { return q.get_den().get_si(); }

/// Derivative along z of M(z, w) restricted to w' = r - w^2, reduced modulo M. Denominators
/// are cleared first, so the reduction is a pseudo-division with polynomial coefficients.
inline bool algebraic_certificate_holds(const std::vector<QRat>& M, const QRat& r) {
  if (M.size() < 2) return false;
  QPoly D(Rational(1));
  for (const auto& m : M) D = lcm_poly(D, m.den());
  std::vector<QPoly> N;
  for (const auto& m : M) N.push_back(m.num() * D.divmod(m.den()).first);
  const QPoly& a = r.num();
  const QPoly& b = r.den();
  const std::size_t n = N.size() - 1;
  std::vector<QPoly> E(n + 2);
  for (std::size_t i = 0; i <= n; ++i) {
    E[i] += b * N[i].derivative();
    if (i > 0) {
      const QPoly t = N[i].scaled(Rational(static_cast<long>(i)));
      E[i - 1] += a * t;
      E[i + 1] -= b * t;
    }
  }
  const QPoly& lc = N[n];
  for (std::size_t k = n + 1; k >= n; --k) {
    const QPoly c = E[k];
    if (c.is_zero()) continue;
    for (auto& e : E) e = e * lc;
    for (std::size_t j = 0; j <= n; ++j) E[j + k - n] -= c * N[j];
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!E[j].is_zero()) return false;
  return true;
}

inline std::vector<std::string> coefficient_strings(const std::vector<QRat>& M) {
  std::vector<std::string> out;
  for (const auto& c : M) out.push_back(to_string(to_ratexpr(c, "z")));
  return out;
}

inline std::optional<KovacicResult> kovacic_case1(const Expansion& e) {
  std::vector<std::vector<Case1Option>> choices;
  for (const auto& p : e.poles) {
    auto o = case1_options(p);
    if (!o) return std::nullopt;
    choices.push_back(*o);
  }
  auto oi = case1_options(e.inf);
  if (!oi) return std::nullopt;
  choices.push_back(*oi);

  const ARat r = lift<AlgNum>(e.r);
  struct Found {
    ARat u;
    bool infinite;
    long N;
  };
  std::vector<Found> found;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    AlgNum d = choices.back()[pick.back()].alpha;
    for (std::size_t i = 0; i + 1 < choices.size(); ++i) d -= choices[i][pick[i]].alpha;
    if (is_nonneg_integer(d)) {
      ARat omega = choices.back()[pick.back()].sqrt_part;
      bool infinite = choices.back()[pick.back()].exponential;
      Integer N = 1;
      for (std::size_t i = 0; i + 1 < choices.size(); ++i) {
        const auto& o = choices[i][pick[i]];
        omega += o.sqrt_part + ARat(APoly(o.alpha), linear_factor(e.poles[i].c));
        infinite = infinite || o.exponential || !o.alpha.is_rational();
        if (o.alpha.is_rational()) N = lcm(N, Integer(o.alpha.rational_value().get_den()));
      }
      std::vector<ARat> op{omega.derivative() + omega * omega - r, ARat(AlgNum(2)) * omega, ARat(AlgNum(1))};
      for (const auto& P : polynomial_solutions(op, static_cast<int>(d.rational_value().get_num().get_si()))) {
        ARat u = omega + ARat(P.derivative(), P);
        if (!(u.derivative() + u * u - r).is_zero())
          throw std::logic_error("Kovacic case 1 produced a non-solution of the Riccati equation");
        bool dup = false;
        for (const auto& f : found) dup = dup || f.u == u;
        if (!dup) found.push_back({u, infinite, N.get_si()});
      }
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  if (found.empty()) return std::nullopt;

  KovacicResult res;
  const Found& f = found.front();
  if (found.size() >= 2) {
    if (f.infinite)
      res.sl2 = make_class(GroupLevel::SL2, GaloisTag::DiagonalTorus);
    else if (f.N == 1)
      res.sl2 = make_class(GroupLevel::SL2, GaloisTag::Trivial);
    else
      res.sl2 = make_class(GroupLevel::SL2, GaloisTag::FiniteCyclic, f.N);
  } else {
    if (f.infinite)
      res.sl2 = make_class(GroupLevel::SL2, GaloisTag::Borel);
    else if (f.N == 1)
      res.sl2 = make_class(GroupLevel::SL2, GaloisTag::Unipotent);
    else
      res.sl2 = make_class(GroupLevel::SL2, GaloisTag::TriangularFinite, f.N);
  }
  KovacicCertificate cert;
  cert.kovacic_case = 1;
  cert.degree = 1;
  for (std::size_t i = 0; i < found.size() && i < 2; ++i) cert.riccati.push_back(found[i].u.str());
  cert.verified = true;
  res.certificate = cert;
  return res;
}

inline std::vector<Integer> integer_members(const std::vector<AlgNum>& xs) {
  std::set<Integer> s;
  for (const auto& x : xs)
    if (x.is_rational() && x.rational_value().get_den() == 1) s.insert(x.rational_value().get_num());
  return {s.begin(), s.end()};
}

inline GaloisClass dihedral_class(const Expansion& e) {
  std::vector<AlgNum> deltas;
  for (const auto& p : e.poles) {
    auto d = exponent_difference(p);
    if (!d) return make_class(GroupLevel::SL2, GaloisTag::DihedralInfinite);
    deltas.push_back(*d);
  }
  auto di = exponent_difference(e.inf);
  if (!di) return make_class(GroupLevel::SL2, GaloisTag::DihedralInfinite);
  if (e.inf.order < 4) deltas.push_back(*di);
  std::vector<Rational> q;
  for (const auto& d : deltas) {
    if (!d.is_rational()) return make_class(GroupLevel::SL2, GaloisTag::DihedralInfinite);
    q.push_back(abs(d.rational_value()));
  }
  GaloisClass uncertified = make_class(GroupLevel::SL2, GaloisTag::DihedralInfinite);
  uncertified.finiteness_certified = false;
  if (q.size() != 3) return uncertified;
  auto half_odd = [](const Rational& x) { return x.get_den() == 2; };
  for (std::size_t k = 0; k < 3; ++k) {
    const Rational& a = q[(k + 1) % 3];
    const Rational& b = q[(k + 2) % 3];
    if (half_odd(a) && half_odd(b) && q[k].get_den() > 1)
      return make_class(GroupLevel::SL2, GaloisTag::DihedralFinite, 4 * den_of(q[k]));
  }
  return uncertified;
}

inline std::optional<KovacicResult> kovacic_case2(const Expansion& e) {
  bool allowed = false;
  for (const auto& p : e.poles) allowed = allowed || p.order == 2 || (p.order > 2 && p.order % 2 == 1);
  if (!allowed) return std::nullopt;

  auto exponents = [](const LocalData& d) -> std::vector<Integer> {
    if (!d.at_infinity && d.order == 1) return {Integer(4)};
    if (!d.at_infinity && d.order > 2) return {Integer(d.order)};
    if (d.at_infinity && d.order > 2) return {Integer(0), Integer(2), Integer(4)};
    if (d.at_infinity && d.order < 2) return {Integer(d.order)};
    AlgNum root = double_pole_root(d);
    return integer_members({AlgNum(2), AlgNum(2) + AlgNum(2) * root, AlgNum(2) - AlgNum(2) * root});
  };
  std::vector<std::vector<Integer>> E;
  for (const auto& p : e.poles) E.push_back(exponents(p));
  E.push_back(exponents(e.inf));

  const QRat& r = e.r;
  std::vector<std::size_t> pick(E.size(), 0);
  while (true) {
    Integer twice_d = E.back()[pick.back()];
    for (std::size_t i = 0; i + 1 < E.size(); ++i) twice_d -= E[i][pick[i]];
    if (twice_d >= 0 && mpz_even_p(twice_d.get_mpz_t())) {
      QRat theta;
      for (std::size_t i = 0; i + 1 < E.size(); ++i)
        theta += QRat(QPoly(Rational(E[i][pick[i]]) / 2), QPoly(std::vector<Rational>{-e.poles[i].c, Rational(1)}));
      const QRat dtheta = theta.derivative();
      const QRat three(Rational(3)), four(Rational(4)), two(Rational(2));
      std::vector<QRat> op{
          dtheta.derivative() + three * theta * dtheta + theta * theta * theta - four * r * theta - two * r.derivative(),
          three * theta * theta + three * dtheta - four * r, three * theta, QRat(Rational(1))};
      auto sols = polynomial_solutions(op, static_cast<int>(Integer(twice_d / 2).get_si()));
      if (!sols.empty()) {
        const QPoly& P = sols.front();
        QRat phi = theta + QRat(P.derivative(), P);
        QRat half(make_rational(1, 2));
        std::vector<QRat> M{half * phi.derivative() + half * phi * phi - r, -phi, QRat(Rational(1))};
        KovacicCertificate cert;
        cert.kovacic_case = 2;
        cert.degree = 2;
        cert.minimal_polynomial = coefficient_strings(M);
        cert.verified = algebraic_certificate_holds(M, r);
        if (!cert.verified) throw std::logic_error("Kovacic case 2 certificate failed verification");
        return KovacicResult{dihedral_class(e), cert};
      }
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == E[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return std::nullopt;
}

inline std::optional<KovacicResult> kovacic_case3(const Expansion& e) {
  for (const auto& p : e.poles)
    if (p.order > 2) return std::nullopt;
  if (e.inf.order < 2) return std::nullopt;

  const QRat& r = e.r;
  QPoly S(Rational(1));
  for (const auto& p : e.poles) S *= QPoly(std::vector<Rational>{-p.c, Rational(1)});
  const QRat S2r = QRat(S * S) * r;
  if (S2r.den().degree() > 0) throw std::logic_error("S^2 r is not a polynomial");
  const QPoly S2rp = S2r.num().scaled(Rational(1) / S2r.den().lc());

  for (int n : {4, 6, 12}) {
    auto exponents = [&](const LocalData& d) -> std::vector<Integer> {
      if (!d.at_infinity && d.order == 1) return {Integer(12)};
      AlgNum root = double_pole_root(d);
      std::vector<AlgNum> xs;
      for (int k = -n / 2; k <= n / 2; ++k) xs.push_back(AlgNum(6) + AlgNum(make_rational(12 * k, n)) * root);
      return integer_members(xs);
    };
    std::vector<std::vector<Integer>> E;
    for (const auto& p : e.poles) E.push_back(exponents(p));
    E.push_back(exponents(e.inf));
    if (std::any_of(E.begin(), E.end(), [](const auto& v) { return v.empty(); })) continue;

    std::vector<std::size_t> pick(E.size(), 0);
    while (true) {
      Integer sum = E.back()[pick.back()];
      for (std::size_t i = 0; i + 1 < E.size(); ++i) sum -= E[i][pick[i]];
      Rational dq = make_rational(n, 12) * Rational(sum);
      if (dq.get_den() == 1 && sgn(dq) >= 0) {
        const int d = static_cast<int>(dq.get_num().get_si());
        // S * theta as a polynomial.
        QPoly Stheta;
        for (std::size_t i = 0; i + 1 < E.size(); ++i) {
          QPoly prod(Rational(1));
          for (std::size_t k = 0; k + 1 < E.size(); ++k)
            if (k != i) prod *= QPoly(std::vector<Rational>{-e.poles[k].c, Rational(1)});
          Stheta += prod.scaled(make_rational(n, 12) * Rational(E[i][pick[i]]));
        }
        auto chain = [&](const QPoly& P) {
          std::vector<QPoly> Pi(static_cast<std::size_t>(n) + 2);
          Pi[static_cast<std::size_t>(n)] = -P;
          for (int i = n; i >= 0; --i) {
            const QPoly& cur = Pi[static_cast<std::size_t>(i)];
            QPoly next = i < n ? Pi[static_cast<std::size_t>(i) + 1] : QPoly();
            QPoly v = -(S * cur.derivative()) + (S.derivative().scaled(Rational(n - i)) - Stheta) * cur -
                      (S2rp * next).scaled(Rational((n - i) * (i + 1)));
            if (i == 0) {
              Pi[static_cast<std::size_t>(n) + 1] = v;  // P_{-1}
            } else {
              Pi[static_cast<std::size_t>(i) - 1] = v;
            }
          }
          return Pi;
        };
        // P_{-1} depends linearly on P: assemble the system column by column.
        std::vector<QPoly> images;
        int rows = 1;
        for (int j = 0; j <= d; ++j) {
          images.push_back(chain(QPoly::monomial(Rational(1), j))[static_cast<std::size_t>(n) + 1]);
          rows = std::max(rows, images.back().degree() + 1);
        }
        Matrix<Rational> A(static_cast<std::size_t>(rows), static_cast<std::size_t>(d));
        std::vector<Rational> rhs(static_cast<std::size_t>(rows), Rational(0));
        for (int i = 0; i < rows; ++i) {
          for (int j = 0; j < d; ++j) A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = images[static_cast<std::size_t>(j)].coeff(i);
          rhs[static_cast<std::size_t>(i)] = -images[static_cast<std::size_t>(d)].coeff(i);
        }
        if (auto x = A.solve(rhs)) {
          std::vector<Rational> pc = *x;
          pc.push_back(Rational(1));
          auto Pi = chain(QPoly(pc));
          std::vector<QRat> M;
          Rational fact = 1;
          std::vector<Rational> inv_fact(static_cast<std::size_t>(n) + 1);
          for (int k = 0; k <= n; ++k) {
            if (k > 0) fact *= k;
            inv_fact[static_cast<std::size_t>(k)] = Rational(1) / fact;
          }
          for (int i = 0; i <= n; ++i)
            M.push_back(QRat(S.pow(static_cast<unsigned>(i)) * Pi[static_cast<std::size_t>(i)].scaled(inv_fact[static_cast<std::size_t>(n - i)])));
          const QRat lead = M.back();
          for (auto& m : M) m = m / lead;
          KovacicCertificate cert;
          cert.kovacic_case = 3;
          cert.degree = n;
          cert.minimal_polynomial = coefficient_strings(M);
          cert.verified = algebraic_certificate_holds(M, r);
          if (!cert.verified) throw std::logic_error("Kovacic case 3 certificate failed verification");
          GaloisTag tag = n == 4 ? GaloisTag::Tetrahedral : n == 6 ? GaloisTag::Octahedral : GaloisTag::Icosahedral;
          return KovacicResult{make_class(GroupLevel::SL2, tag), cert};
        }
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == E[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::string coeff_str(const detail::QRat& f) { return f.str(); }
inline bool coeff_is_zero(const detail::QRat& f) { return f.is_zero(); }

/// Galois group of y'' = r y over Q(z) by Kovacic's three cases, smallest case first.
inline KovacicResult kovacic(const RatExpr& r, const std::string& var = "z") {
  for (const auto& s : r.symbols())
    if (s != var) throw UnsupportedInput("Kovacic needs numeric rational coefficients", {{"symbol", s}});
  detail::Expansion e = detail::expand(to_urat(r, var), 40);
  if (auto c1 = detail::kovacic_case1(e)) return *c1;
  if (auto c2 = detail::kovacic_case2(e)) return *c2;
  if (auto c3 = detail::kovacic_case3(e)) return *c3;
  return {make_class(GroupLevel::SL2, GaloisTag::Full), std::nullopt};
}

}  // namespace parallax
