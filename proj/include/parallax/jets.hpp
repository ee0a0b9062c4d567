#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parallax/chart.hpp"
#include "parallax/errors.hpp"
#include "parallax/geometry.hpp"
#include "parallax/ode.hpp"
#include "parallax/parallelism.hpp"

namespace parallax {

// Jet coordinates are z0, z1, ..., zk. A potential nu is an expression in the
// variable "z"; the reserved symbol "nu" stands for an arbitrary function nu(z),
// with derivatives nu_1, nu_2, nu_3.

inline std::string jet_var(int i) { return "z" + std::to_string(i); }

inline const std::vector<std::string>& nu_symbols() {
  static const std::vector<std::string> names{"nu", "nu_1", "nu_2", "nu_3"};
  return names;
}

inline bool is_nu_symbol(const std::string& s) {
  for (const auto& n : nu_symbols())
    if (n == s) return true;
  return false;
}

/// Parameters of a potential: every symbol other than z and the nu family.
inline std::vector<std::string> nu_parameters(const RatExpr& nu) {
  std::vector<std::string> out;
  for (const auto& s : nu.symbols())
    if (s != "z" && !is_nu_symbol(s)) out.push_back(s);
  return out;
}

inline bool is_symbolic_nu(const RatExpr& nu) {
  for (const auto& s : nu.symbols())
    if (is_nu_symbol(s)) return true;
  return false;
}

/// Chart z0..zk, carrying the nu tower (over z0) when nu is symbolic.
inline ChartPtr jet_chart(int k, const RatExpr& nu = RatExpr()) {
  std::vector<std::string> vars;
  for (int i = 0; i <= k; ++i) vars.push_back(jet_var(i));
  ChartPtr chart = Chart::make(vars, nu_parameters(nu));
  if (!is_symbolic_nu(nu)) return chart;
  const auto& names = nu_symbols();
  for (std::size_t q = names.size(); q-- > 0;) {
    std::map<std::string, RatExpr> table;
    for (int i = 1; i <= k; ++i) table.emplace(jet_var(i), RatExpr(0));
    if (q + 1 < names.size()) table.emplace(jet_var(0), RatExpr::symbol(names[q + 1]));
    chart = extend_tower(chart, names[q], table);
  }
  return chart;
}

/// nu(z0).
inline RatExpr nu_at_z0(const RatExpr& nu) { return nu.substitute({{"z", RatExpr::symbol(jet_var(0))}}); }

/// Truncation to d/dz0..d/dzk of E_m = sum_i i!/(i-m-1)! z_{i-m} d/dz_i. For m = -1
/// the chart has order k+1 so that E_{-1} can reach z_{k+1}.
inline VectorField witt_prolong(int m, int k, const RatExpr& nu = RatExpr()) {
  if (m < -1) throw OrderTooSmall("E_m is defined for m >= -1", {{"m", std::to_string(m)}});
  if (k < m + 1)
    throw OrderTooSmall("jet order too small for E_" + std::to_string(m),
                        {{"m", std::to_string(m)}, {"k", std::to_string(k)}});
  ChartPtr chart = jet_chart(m == -1 ? k + 1 : k, nu);
  ExprVector coeffs(chart->dim());
  for (int i = 0; i <= k; ++i) {
    if (i - m - 1 < 0) continue;
    Integer num = 1;
    for (int q = i - m; q <= i; ++q) num *= q;  // i!/(i-m-1)! = (i-m)(i-m+1)...i
    coeffs[static_cast<std::size_t>(i)] = RatExpr(Rational(num)) * RatExpr::symbol(jet_var(i - m));
  }
  return VectorField(chart, coeffs);
}

/// E_{-1} g for g on the order-k jet chart; the result lives on order k+1.
inline RatExpr total_derivative(const RatExpr& g, int k, const RatExpr& nu = RatExpr()) {
  return witt_prolong(-1, k, nu).apply(g);
}

/// z3/z1 - 3/2 (z2/z1)^2 + nu(z0) z1^2.
inline RatExpr schwarzian_f(const RatExpr& nu) {
  RatExpr z1 = RatExpr::symbol("z1"), z2 = RatExpr::symbol("z2"), z3 = RatExpr::symbol("z3");
  return z3 / z1 - RatExpr(make_rational(3, 2)) * (z2 / z1).pow(2) + nu_at_z0(nu) * z1.pow(2);
}

/// The value of z3 on {f = 0}, obtained by solving the linear equation f = 0.
inline RatExpr solve_schwarzian_for_z3(const RatExpr& nu) {
  RatExpr f = schwarzian_f(nu);
  RatExpr A = f.partial("z3");
  RatExpr B = f.substitute({{"z3", RatExpr(0)}});
  return -B / A;
}

/// Restriction of E_{-1}, E_0, E_1 to the threefold f = 0 with coordinates z0, z1, z2.
inline Frame sl2_frame(const RatExpr& nu) {
  ChartPtr chart = jet_chart(2, nu);
  RatExpr z1 = RatExpr::symbol("z1"), z2 = RatExpr::symbol("z2");
  RatExpr top = solve_schwarzian_for_z3(nu);
  RatExpr displayed = -nu_at_z0(nu) * z1.pow(3) + RatExpr(make_rational(3, 2)) * z2.pow(2) / z1;
  if (!(top == displayed)) throw EliminationFailure("solving f = 0 for z3 disagrees with the closed form");
  std::vector<ExprVector> rows;
  rows.push_back({z1, z2, top});
  for (int m : {0, 1}) {
    VectorField E = witt_prolong(m, 2, nu);
    rows.push_back(E.coeffs());
  }
  return Frame::from_rows(chart, rows);
}

/// Collects the coefficients of a polynomial with respect to the monomials in `vars`.
inline std::vector<Poly> coefficients_wrt(const Poly& p, const std::vector<std::string>& vars) {
  std::map<std::vector<int>, Poly> groups;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> key;
    Monomial rest = m;
    for (const auto& v : vars) {
      key.push_back(m.degree_in(v));
      rest = rest.without(v);
    }
    groups[key].add_term(rest, c);
  }
  std::vector<Poly> out;
  for (auto& [k, v] : groups) out.push_back(std::move(v));
  return out;
}

/// Symmetry equation of the sl2 frame: a prolonged field L(a) = a d/dz0 + a' z1 d/dz1 +
/// (a'' z1^2 + a' z2) d/dz2 commutes with every frame field iff a solves the
/// returned monic order-3 equation in z.
inline LinearODE derive_symmetry_ode(const RatExpr& nu) {
  Frame F = sl2_frame(nu);
  ChartPtr chart = F.chart();
  const std::vector<std::string> a{"a0", "a1", "a2", "a3"};
  for (std::size_t q = a.size(); q-- > 0;) {
    std::map<std::string, RatExpr> table{{"z1", RatExpr(0)}, {"z2", RatExpr(0)}};
    if (q + 1 < a.size()) table.emplace("z0", RatExpr::symbol(a[q + 1]));
    chart = extend_tower(chart, a[q], table);
  }
  RatExpr z1 = RatExpr::symbol("z1"), z2 = RatExpr::symbol("z2");
  RatExpr a0 = RatExpr::symbol("a0"), a1 = RatExpr::symbol("a1"), a2 = RatExpr::symbol("a2");
  VectorField LX(chart, {a0, a1 * z1, a2 * z1.pow(2) + a1 * z2});

  std::vector<Poly> equations;
  for (const auto& E : F.fields()) {
    VectorField b = lie_bracket(E, LX);
    for (const auto& comp : b.coeffs())
      for (auto& eq : coefficients_wrt(comp.num(), {"z1", "z2"}))
        if (!eq.is_zero()) equations.push_back(std::move(eq));
  }
  if (equations.empty()) throw EliminationFailure("commutation conditions are empty");

  std::vector<RatExpr> normalized;
  for (const auto& eq : equations) {
    auto by_a3 = eq.coefficients_in("a3");
    if (by_a3.size() != 2 || by_a3[1].is_zero())
      throw EliminationFailure("a commutation condition does not involve a'''", {{"equation", to_string(eq)}});
    normalized.push_back(RatExpr::fraction(eq, by_a3[1]));
  }
  for (const auto& e : normalized)
    if (!(e == normalized.front()))
      throw EliminationFailure("commutation conditions are inconsistent",
                               {{"first", to_string(normalized.front())}, {"other", to_string(e)}});

  const RatExpr& eq = normalized.front();
  LinearODE out;
  out.var = "z";
  const std::map<std::string, RatExpr> back{{"z0", RatExpr::symbol("z")}};
  std::map<std::string, RatExpr> zero_a;
  for (const auto& n : a) zero_a.emplace(n, RatExpr(0));
  for (std::size_t i = 0; i < 3; ++i) {
    RatExpr c = eq.partial(a[i]);
    for (const auto& n : a)
      if (c.contains(n)) throw EliminationFailure("commutation condition is not linear in a");
    out.coeffs.push_back(c.substitute(back));
  }
  RatExpr rest = eq.substitute(zero_a);
  if (!rest.is_zero()) throw EliminationFailure("commutation condition is not homogeneous", {{"rest", to_string(rest)}});
  return out;
}

/// The expected form a''' + 2 nu a' + nu' a = 0, with nu' computed in z (or nu_1 when symbolic).
inline LinearODE lin_equation(const RatExpr& nu) {
  return {"z", {formal_derivative(nu, "z", {"nu"}), RatExpr(2) * nu, RatExpr(0)}};
}

}  // namespace parallax
