#pragma once

#include <array>
#include <map>
#include <numeric>
#include <set>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/jets.hpp"
#include "parallax/kovacic.hpp"
#include "parallax/linalg.hpp"
#include "parallax/ode.hpp"
#include "parallax/ratexpr.hpp"

namespace parallax {

/// a''' - 4 r a' - 2 r' a = 0 for y'' = r y.
inline LinearODE symmetric_square(const LinearODE& L) {
  if (L.order() != 2) throw DimensionMismatch("symmetric square needs an order-2 equation", {{"order", std::to_string(L.order())}});
  if (!L.coeffs[1].is_zero()) throw UnsupportedInput("symmetric square needs an equation without y' term", {{"y' coefficient", to_string(L.coeffs[1])}});
  const RatExpr r = -L.coeffs[0];
  return {L.var, {RatExpr(-2) * formal_derivative(r, L.var), RatExpr(-4) * r, RatExpr(0)}};
}

/// Action of M on Sym^2 in the basis (e1^2, e1 e2, e2^2).
template <class T>
Matrix<T> sym2_matrix(const Matrix<T>& M) {
  if (M.rows() != 2 || M.cols() != 2) throw DimensionMismatch("sym2 needs a 2x2 matrix");
  if (is_zero(M.determinant())) throw SingularMatrix("sym2 of a singular matrix");
  const T &a = M(0, 0), &b = M(0, 1), &c = M(1, 0), &d = M(1, 1);
  const T two(2);
  return Matrix<T>{{a * a, a * b, b * b}, {two * a * c, a * d + b * c, two * b * d}, {c * c, c * d, d * d}};
}

/// Image of an SL2 class in PSL2 = SL2 / {Id, -Id}.
inline GaloisClass psl2_projection(const GaloisClass& g) {
  if (g.level != GroupLevel::SL2) throw UnsupportedInput("psl2_projection expects an SL2 class", {{"class", g.str()}});
  GaloisClass out = g;
  out.level = GroupLevel::PSL2;
  switch (g.tag) {
    case GaloisTag::FiniteCyclic:
      if (g.order % 2 == 0) out.order = g.order / 2;
      if (out.order == 1) out = make_class(GroupLevel::PSL2, GaloisTag::Trivial);
      break;
    case GaloisTag::TriangularFinite:
      if (g.order % 2 == 0) out.order = g.order / 2;
      if (out.order == 1) out = make_class(GroupLevel::PSL2, GaloisTag::Unipotent);
      break;
    case GaloisTag::DihedralFinite:
      out.order = g.order / 2;
      break;
    default:
      break;
  }
  out.finiteness_certified = g.finiteness_certified;
  return out;
}

enum class ParamKind { Integer, Rational, Irrational };
using RationalityFlags = std::map<std::string, ParamKind>;

/// Hypergeometric parameters, as (a, b, c) or as exponent differences (l, m, n).
struct HGParams {
  std::optional<std::array<RatExpr, 3>> abc;
  std::optional<std::array<RatExpr, 3>> lmn;

  static HGParams from_abc(RatExpr a, RatExpr b, RatExpr c) {
    HGParams p;
    p.abc = std::array<RatExpr, 3>{std::move(a), std::move(b), std::move(c)};
    return p;
  }
  static HGParams from_lmn(RatExpr l, RatExpr m, RatExpr n) {
    HGParams p;
    p.lmn = std::array<RatExpr, 3>{std::move(l), std::move(m), std::move(n)};
    return p;
  }

  /// l = 1 - c, m = c - a - b, n = a - b.
  std::array<RatExpr, 3> exponent_differences() const {
    if (abc) {
      const auto& [a, b, c] = *abc;
      std::array<RatExpr, 3> out{RatExpr(1) - c, c - a - b, a - b};
      if (lmn && !(out == *lmn))
        throw SchemaError("(a,b,c) and (l,m,n) violate l = 1-c, m = c-a-b, n = a-b");
      return out;
    }
    if (!lmn) throw SchemaError("hypergeometric parameters are empty");
    return *lmn;
  }

  std::array<RatExpr, 3> parameters_abc() const {
    if (abc) return *abc;
    const auto [l, m, n] = exponent_differences();
    const RatExpr half(make_rational(1, 2));
    RatExpr c = RatExpr(1) - l;
    return {half * (RatExpr(1) - l - m + n), half * (RatExpr(1) - l - m - n), c};
  }

  std::set<std::string> symbols() const {
    std::set<std::string> s;
    for (const auto& e : exponent_differences())
      for (const auto& v : e.symbols()) s.insert(v);
    return s;
  }
};

struct HGNormalForm {
  RatExpr nu;                   // y'' + nu y = 0 is the normal form
  std::array<RatExpr, 3> lmn;
  RatExpr exponent_at_0;        // F = z^{-c/2} (1-z)^{(c-a-b-1)/2} y
  RatExpr exponent_at_1;
};

/// nu(l,m,n; z) = (1-l^2)/(4z^2) + (1-m^2)/(4(1-z)^2) + (1-l^2-m^2+n^2)/(4z(1-z)).
inline HGNormalForm hypergeometric_normal_form(const HGParams& p) {
  const auto lmn = p.exponent_differences();
  const auto [a, b, c] = p.parameters_abc();
  const auto& [l, m, n] = lmn;
  const RatExpr z = RatExpr::symbol("z"), one(1), four(4);
  RatExpr nu = (one - l * l) / (four * z * z) + (one - m * m) / (four * (one - z).pow(2)) +
               (one - l * l - m * m + n * n) / (four * z * (one - z));
  return {nu, lmn, -c / RatExpr(2), (c - a - b - one) / RatExpr(2)};
}

namespace detail {

enum class Tri { No, Yes, Unknown };

inline Tri tri_or(Tri a, Tri b) {
  if (a == Tri::Yes || b == Tri::Yes) return Tri::Yes;
  if (a == Tri::No && b == Tri::No) return Tri::No;
  return Tri::Unknown;
}

/// c0 + sum coef[p] * p.
struct LinForm {
  Rational c0;
  std::map<std::string, Rational> coef;

  bool is_constant() const { return coef.empty(); }
  LinForm scaled(const Rational& s) const {
    LinForm r = *this;
    r.c0 *= s;
    for (auto& [k, v] : r.coef) v *= s;
    return r;
  }
};

inline LinForm linear_form(const RatExpr& e) {
  if (!e.is_polynomial()) throw Undecidable("exponent difference is not linear in the parameters", {{"value", to_string(e)}});
  LinForm f;
  const Rational inv = Rational(1) / e.den().constant_value();
  for (const auto& [mono, c] : e.num().terms()) {
    if (mono.is_one()) {
      f.c0 += c * inv;
      continue;
    }
    if (mono.powers().size() != 1 || mono.powers()[0].second != 1)
      throw Undecidable("exponent difference is not linear in the parameters", {{"value", to_string(e)}});
    f.coef[mono.powers()[0].first] += c * inv;
  }
  return f;
}

inline bool is_int(const Rational& q) { return q.get_den() == 1; }

inline ParamKind kind_of(const std::string& p, const RationalityFlags& flags, bool& known) {
  auto it = flags.find(p);
  known = it != flags.end();
  return known ? it->second : ParamKind::Rational;
}

inline Tri tri_rational(const LinForm& f, const RationalityFlags& flags) {
  int irrational = 0;
  bool all_known = true;
  for (const auto& [p, c] : f.coef) {
    bool known = false;
    ParamKind k = kind_of(p, flags, known);
    all_known = all_known && known;
    if (known && k == ParamKind::Irrational) ++irrational;
  }
  if (irrational == 1) return Tri::No;
  if (irrational > 1 || !all_known) return Tri::Unknown;
  return Tri::Yes;
}

inline Tri tri_integer(const LinForm& f, const RationalityFlags& flags) {
  if (f.is_constant()) return is_int(f.c0) ? Tri::Yes : Tri::No;
  if (tri_rational(f, flags) == Tri::No) return Tri::No;
  bool all_integer_params = true, all_integer_coeffs = true;
  for (const auto& [p, c] : f.coef) {
    bool known = false;
    all_integer_params = all_integer_params && kind_of(p, flags, known) == ParamKind::Integer && known;
    all_integer_coeffs = all_integer_coeffs && is_int(c);
  }
  if (all_integer_params && all_integer_coeffs) return is_int(f.c0) ? Tri::Yes : Tri::No;
  return Tri::Unknown;
}

inline Tri tri_odd(const LinForm& f, const RationalityFlags& flags) {
  Tri i = tri_integer(f, flags);
  if (i == Tri::No) return Tri::No;
  Tri h = tri_integer(f.scaled(make_rational(1, 2)), flags);
  if (h == Tri::Yes) return Tri::No;
  if (i == Tri::Yes && h == Tri::No) return Tri::Yes;
  return Tri::Unknown;
}

inline Tri tri_half_odd(const LinForm& f, const RationalityFlags& flags) { return tri_odd(f.scaled(Rational(2)), flags); }

/// Denominator when known: 1 for flagged integers, the reduced denominator for constants.
inline std::optional<long> known_denominator(const LinForm& f, const RationalityFlags& flags) {
  if (tri_integer(f, flags) == Tri::Yes) return 1;
  if (f.is_constant()) return f.c0.get_den().get_si();
  return std::nullopt;
}

[[noreturn]] inline void undecidable(const std::string& what, const std::array<RatExpr, 3>& lmn) {
  throw Undecidable("rationality flags are insufficient to decide " + what,
                    {{"l", to_string(lmn[0])}, {"m", to_string(lmn[1])}, {"n", to_string(lmn[2])}});
}

/// Solutions z^e0 (1-z)^e1 P(z) of the hypergeometric equation with P a polynomial,
/// up to proportionality, for local exponents whose Fuchs degree is a known integer.
inline int count_invariant_lines(const std::array<RatExpr, 3>& abc) {
  const auto& [a, b, c] = abc;
  const RatExpr z = RatExpr::symbol("z"), one(1);
  struct Line {
    std::array<RatExpr, 3> e;
    Poly P;
  };
  std::vector<Line> lines;
  for (const RatExpr& e0 : {RatExpr(0), one - c})
    for (const RatExpr& e1 : {RatExpr(0), c - a - b})
      for (const RatExpr& einf : {a, b}) {
        RatExpr dsum = -(e0 + e1 + einf);
        if (!dsum.is_rational() || !is_int(dsum.rational_value()) || sgn(dsum.rational_value()) < 0) continue;
        const int d = static_cast<int>(dsum.rational_value().get_num().get_si());
        const RatExpr g = e0 / z - e1 / (one - z);
        const RatExpr g2 = g.partial("z") + g * g;
        auto apply = [&](const RatExpr& P) {
          RatExpr P1 = P.partial("z"), P2 = P1.partial("z");
          RatExpr E = z * (one - z) * (P2 + RatExpr(2) * g * P1 + g2 * P) +
                      (c - (a + b + one) * z) * (P1 + g * P) - a * b * P;
          return E * z * (one - z);
        };
        std::vector<std::vector<RatExpr>> cols;
        std::size_t rows = 1;
        for (int j = 0; j <= d; ++j) {
          RatExpr img = apply(z.pow(j));
          if (img.den().contains("z")) throw std::logic_error("invariant line equation is not polynomial in z");
          std::vector<RatExpr> col;
          for (const auto& p : img.num().coefficients_in("z")) col.push_back(RatExpr::fraction(p, img.den()));
          rows = std::max(rows, col.size());
          cols.push_back(std::move(col));
        }
        Matrix<RatExpr> A(rows, static_cast<std::size_t>(d));
        std::vector<RatExpr> rhs(rows);
        for (std::size_t i = 0; i < rows; ++i) {
          for (int j = 0; j < d; ++j) {
            const auto& col = cols[static_cast<std::size_t>(j)];
            A(i, static_cast<std::size_t>(j)) = i < col.size() ? col[i] : RatExpr(0);
          }
          const auto& top = cols[static_cast<std::size_t>(d)];
          rhs[i] = i < top.size() ? -top[i] : RatExpr(0);
        }
        auto x = A.solve(rhs);
        if (!x) continue;
        auto build = [&](const std::vector<RatExpr>& lo) {
          RatExpr P = z.pow(d);
          for (int j = 0; j < d; ++j) P += lo[static_cast<std::size_t>(j)] * z.pow(j);
          return P;
        };
        std::vector<RatExpr> polys{build(*x)};
        for (const auto& nv : A.nullspace()) {
          std::vector<RatExpr> y = *x;
          for (std::size_t i = 0; i < y.size(); ++i) y[i] += nv[i];
          polys.push_back(build(y));
        }
        for (const auto& P : polys) {
          bool same = false;
          for (const auto& L : lines) {
            RatExpr d0 = e0 - L.e[0], d1 = e1 - L.e[1];
            if (!(d0.is_rational() && is_int(d0.rational_value()) && d1.is_rational() && is_int(d1.rational_value())))
              continue;
            const int k0 = static_cast<int>(d0.rational_value().get_num().get_si());
            const int k1 = static_cast<int>(d1.rational_value().get_num().get_si());
            RatExpr ratio = z.pow(k0) * (one - z).pow(k1) * P / RatExpr(L.P);
            same = same || !ratio.contains("z");
          }
          if (!same) lines.push_back({{e0, e1, einf}, P.num().scaled(Rational(1) / P.den().constant_value())});
        }
      }
  return static_cast<int>(lines.size());
}

/// Finite primitive entries of Schwarz's list; the dihedral family is handled separately.
struct SchwarzEntry {
  std::array<Rational, 3> lmn;
  GaloisTag tag;
};

inline const std::vector<SchwarzEntry>& schwarz_table() {
  auto q = [](long a, long b) { return make_rational(a, b); };
  static const std::vector<SchwarzEntry> table{
      {{q(1, 2), q(1, 3), q(1, 3)}, GaloisTag::Tetrahedral}, {{q(2, 3), q(1, 3), q(1, 3)}, GaloisTag::Tetrahedral},
      {{q(1, 2), q(1, 3), q(1, 4)}, GaloisTag::Octahedral},  {{q(2, 3), q(1, 4), q(1, 4)}, GaloisTag::Octahedral},
      {{q(1, 2), q(1, 3), q(1, 5)}, GaloisTag::Icosahedral}, {{q(2, 5), q(1, 3), q(1, 3)}, GaloisTag::Icosahedral},
      {{q(2, 3), q(1, 5), q(1, 5)}, GaloisTag::Icosahedral}, {{q(1, 2), q(2, 5), q(1, 5)}, GaloisTag::Icosahedral},
      {{q(3, 5), q(1, 3), q(1, 5)}, GaloisTag::Icosahedral}, {{q(2, 5), q(2, 5), q(2, 5)}, GaloisTag::Icosahedral},
      {{q(2, 3), q(1, 3), q(1, 5)}, GaloisTag::Icosahedral}, {{q(4, 5), q(1, 5), q(1, 5)}, GaloisTag::Icosahedral},
      {{q(1, 2), q(2, 5), q(1, 3)}, GaloisTag::Icosahedral}, {{q(3, 5), q(2, 5), q(1, 3)}, GaloisTag::Icosahedral},
  };
  return table;
}

/// Matches (l, m, n) against the table up to permutation, sign changes and integer
/// shifts with even total.
inline std::optional<GaloisTag> schwarz_match(const std::array<Rational, 3>& x) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& entry : schwarz_table())
    for (const auto& p : perms)
      for (int signs = 0; signs < 8; ++signs) {
        Rational total = 0;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
          Rational v = (signs >> i) & 1 ? -x[static_cast<std::size_t>(p[i])] : x[static_cast<std::size_t>(p[i])];
          Rational k = entry.lmn[static_cast<std::size_t>(i)] - v;
          ok = is_int(k);
          total += k;
        }
        if (ok && mpz_even_p(total.get_num().get_mpz_t())) return entry.tag;
      }
  return std::nullopt;
}

}  // namespace detail

/// Projective Galois group of the hypergeometric equation from its exponent differences.
inline GaloisClass classify_hypergeometric(const HGParams& p, const RationalityFlags& flags = {}) {
  using detail::Tri;
  const auto lmn = p.exponent_differences();
  std::array<detail::LinForm, 3> f{detail::linear_form(lmn[0]), detail::linear_form(lmn[1]), detail::linear_form(lmn[2])};

  Tri reducible = Tri::No;
  for (const auto& s : std::array<std::array<int, 3>, 4>{{{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}}}) {
    detail::LinForm sum;
    for (int i = 0; i < 3; ++i) {
      detail::LinForm t = f[static_cast<std::size_t>(i)].scaled(Rational(s[static_cast<std::size_t>(i)]));
      sum.c0 += t.c0;
      for (const auto& [k, v] : t.coef) sum.coef[k] += v;
    }
    for (auto it = sum.coef.begin(); it != sum.coef.end();) it = sgn(it->second) == 0 ? sum.coef.erase(it) : std::next(it);
    reducible = detail::tri_or(reducible, detail::tri_odd(sum, flags));
  }
  if (reducible == Tri::Unknown) detail::undecidable("reducibility", lmn);

  if (reducible == Tri::Yes) {
    bool infinite = false;
    long N = 1;
    for (const auto& x : f) {
      Tri r = detail::tri_rational(x, flags);
      if (r == Tri::No) infinite = true;
      if (r == Tri::Unknown) detail::undecidable("the diagonal part", lmn);
    }
    if (!infinite) {
      for (const auto& x : f) {
        auto d = detail::known_denominator(x, flags);
        if (!d) detail::undecidable("the order of the diagonal part", lmn);
        N = std::lcm(N, *d);
      }
    }
    const bool diagonal = detail::count_invariant_lines(p.parameters_abc()) >= 2;
    if (diagonal) {
      if (infinite) return make_class(GroupLevel::PSL2, GaloisTag::DiagonalTorus);
      return N == 1 ? make_class(GroupLevel::PSL2, GaloisTag::Trivial) : make_class(GroupLevel::PSL2, GaloisTag::FiniteCyclic, N);
    }
    if (infinite) return make_class(GroupLevel::PSL2, GaloisTag::Borel);
    return N == 1 ? make_class(GroupLevel::PSL2, GaloisTag::Unipotent) : make_class(GroupLevel::PSL2, GaloisTag::TriangularFinite, N);
  }

  std::array<Tri, 3> half{};
  for (std::size_t i = 0; i < 3; ++i) half[i] = detail::tri_half_odd(f[i], flags);
  for (std::size_t i = 0; i < 3; ++i) {
    const Tri a = half[(i + 1) % 3], b = half[(i + 2) % 3];
    if (a == Tri::Yes && b == Tri::Yes) {
      Tri r = detail::tri_rational(f[i], flags);
      if (r == Tri::No) return make_class(GroupLevel::PSL2, GaloisTag::DihedralInfinite);
      auto d = detail::known_denominator(f[i], flags);
      if (r == Tri::Unknown || !d) detail::undecidable("the dihedral order", lmn);
      return make_class(GroupLevel::PSL2, GaloisTag::DihedralFinite, 2 * *d);
    }
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (half[(i + 1) % 3] != Tri::No && half[(i + 2) % 3] != Tri::No) detail::undecidable("the dihedral case", lmn);

  std::array<Rational, 3> values;
  for (std::size_t i = 0; i < 3; ++i) {
    Tri r = detail::tri_rational(f[i], flags);
    if (r == Tri::No) return make_class(GroupLevel::PSL2, GaloisTag::Full);
    if (!f[i].is_constant()) detail::undecidable("membership in the finite list", lmn);
    values[i] = f[i].c0;
  }
  if (auto tag = detail::schwarz_match(values)) return make_class(GroupLevel::PSL2, *tag);
  return make_class(GroupLevel::PSL2, GaloisTag::Full);
}

/// Galois classification of the reciprocal connection of the sl2 parallelism with potential nu.
struct ReciprocalGalois {
  RatExpr nu;
  RatExpr base_r;  // y'' = base_r y, whose symmetric square is the symmetry equation
  LinearODE symmetry_ode;
  std::optional<GaloisClass> sl2;
  GaloisClass psl2;
  std::optional<KovacicCertificate> certificate;
  std::string method;
  std::optional<bool> cross_check;
};

inline const char* base_equation_note() {
  return "the symmetry equation a''' + 2 nu a' + nu' a = 0 is the symmetric square of y'' = -(nu/2) y; "
         "the symmetric square of y'' = nu y would be a''' - 4 nu a' - 2 nu' a = 0";
}

namespace detail {

/// Potentials with free parameters reuse the equation derived for a generic nu, with nu
/// and nu_1 specialized to nu(z) and nu'(z).
inline LinearODE checked_symmetry_ode(const RatExpr& nu) {
  LinearODE derived;
  if (nu_parameters(nu).empty() || is_symbolic_nu(nu)) {
    derived = derive_symmetry_ode(nu);
  } else {
    LinearODE generic = derive_symmetry_ode(RatExpr::symbol("nu"));
    const std::map<std::string, RatExpr> s{{"nu", nu}, {"nu_1", nu.partial("z")}};
    derived.var = generic.var;
    for (const auto& c : generic.coeffs) derived.coeffs.push_back(c.substitute(s));
  }
  if (!(derived == lin_equation(nu)))
    throw EliminationFailure("derived symmetry equation differs from a''' + 2 nu a' + nu' a = 0",
                             {{"derived", to_string(derived, "a")}});
  const RatExpr r = -nu / RatExpr(2);
  if (!(symmetric_square(second_order(r)) == derived))
    throw EliminationFailure("symmetry equation is not the symmetric square of y'' = -(nu/2) y");
  return derived;
}

}  // namespace detail

/// Numeric potential nu in Q(z): Kovacic on y'' = -(nu/2) y, projected to PSL2.
inline ReciprocalGalois classify_reciprocal_sl2(const RatExpr& nu) {
  ReciprocalGalois out;
  out.nu = nu;
  out.symmetry_ode = detail::checked_symmetry_ode(nu);
  out.base_r = -nu / RatExpr(2);
  KovacicResult k = kovacic(out.base_r);
  out.sl2 = k.sl2;
  out.psl2 = psl2_projection(k.sl2);
  out.certificate = k.certificate;
  out.method = "kovacic";
  return out;
}

/// Hypergeometric potential: nu = 2 nu(l,m,n; z), so the base equation is the normal
/// form y'' = -nu(l,m,n; z) y. Classified by exponent differences and, for numeric
/// parameters, cross-checked against Kovacic.
inline ReciprocalGalois classify_reciprocal_sl2(const HGParams& p, const RationalityFlags& flags = {}) {
  ReciprocalGalois out;
  out.psl2 = classify_hypergeometric(p, flags);
  HGNormalForm nf = hypergeometric_normal_form(p);
  out.nu = RatExpr(2) * nf.nu;
  out.base_r = -nf.nu;
  out.symmetry_ode = detail::checked_symmetry_ode(out.nu);
  out.method = "exponent-differences";
  if (p.symbols().empty()) {
    KovacicResult k = kovacic(out.base_r);
    out.sl2 = k.sl2;
    out.certificate = k.certificate;
    GaloisClass projected = psl2_projection(k.sl2);
    out.cross_check = projected.tag == out.psl2.tag && projected.order == out.psl2.order;
  }
  return out;
}

}  // namespace parallax
