#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parallax/connection.hpp"
#include "parallax/galois.hpp"
#include "parallax/jets.hpp"
#include "parallax/parallelism.hpp"
#include "parallax/parser.hpp"

namespace parallax {

/// One verified statement of an example suite.
struct Check {
  std::string name;
  bool ok = false;
  std::string expected;
  std::string computed;
};

/// A published value that the computation does not reproduce.
struct Discrepancy {
  std::string claim;
  std::string published;
  std::string computed;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  std::vector<Discrepancy> discrepancies;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

struct ExampleInfo {
  std::string name;
  std::string kind;
  std::string title;
};

/// 1-based "[A1,A2] = alpha*A2" lines for the nonzero brackets i < j.
inline std::vector<std::string> bracket_lines(const StructureConstants& L, const std::string& basis = "A") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < L.dim(); ++k) {
        const RatExpr& c = L(i, j, k);
        if (c.is_zero()) continue;
        std::string cs = to_string(c);
        std::string term = basis + std::to_string(k + 1);
        bool neg = false;
        if (cs == "1") {
          cs.clear();
        } else if (cs == "-1") {
          cs.clear();
          neg = true;
        } else if (cs.find_first_of("+-", 1) != std::string::npos) {
          cs = "(" + cs + ")*";
        } else {
          if (cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
          }
          cs += "*";
        }
        rhs += rhs.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        rhs += cs + term;
      }
      if (rhs.empty()) continue;
      out.push_back("[" + basis + std::to_string(i + 1) + "," + basis + std::to_string(j + 1) + "] = " + rhs);
    }
  return out;
}

/// 1-based "Gamma_ij^k = value" lines for the nonzero entries of a rank-3 tensor.
inline std::vector<std::string> christoffel_lines(const Tensor& g) {
  std::vector<std::string> out;
  for (const auto& [idx, v] : g.nonzero_entries())
    out.push_back("Gamma_" + std::to_string(idx[0] + 1) + std::to_string(idx[1] + 1) + "^" +
                  std::to_string(idx[2] + 1) + " = " + to_string(v));
  return out;
}

inline std::string join_lines(const std::vector<std::string>& v, const std::string& sep = "; ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s.empty() ? "(none)" : s;
}

inline std::string matrix_string(const ExprMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

namespace detail {

inline Check check_equal(std::string name, const std::string& expected, const std::string& computed) {
  return {std::move(name), expected == computed, expected, computed};
}

inline Check check_true(std::string name, bool ok, std::string expected, std::string computed) {
  return {std::move(name), ok, std::move(expected), std::move(computed)};
}

inline ExprVector parse_row(const std::vector<std::string>& row, const Chart& chart) {
  ExprVector v;
  for (const auto& s : row) v.push_back(parse_expr(s, chart));
  return v;
}

/// A parallelism example with horizontal tower fields and an initial point.
struct FrameExample {
  ChartPtr chart;
  Frame frame;
  std::vector<VectorField> horizontal;
  std::map<std::string, RatExpr> point;
  std::map<std::string, RatExpr> tower_values;
};

inline FrameExample make_frame_example(const std::vector<std::string>& vars, const std::vector<std::string>& params,
                                       const std::vector<std::pair<std::string, std::map<std::string, std::string>>>& tower,
                                       const std::vector<std::vector<std::string>>& rows,
                                       const std::vector<std::vector<std::string>>& ys,
                                       const std::map<std::string, std::string>& point,
                                       const std::map<std::string, std::string>& values) {
  ChartPtr chart = Chart::make(vars, params);
  for (const auto& [name, table] : tower) {
    std::map<std::string, RatExpr> d;
    for (const auto& [v, e] : table) d.emplace(v, parse_tower_expr(e, *chart, name));
    chart = extend_tower(chart, name, d);
  }
  std::vector<ExprVector> frows;
  for (const auto& r : rows) frows.push_back(parse_row(r, *chart));
  FrameExample ex{chart, Frame::from_rows(chart, frows), {}, {}, {}};
  for (const auto& y : ys) ex.horizontal.emplace_back(chart, parse_row(y, *chart));
  for (const auto& [k, v] : point) ex.point.emplace(k, parse_expr(v, *chart));
  for (const auto& [k, v] : values) ex.tower_values.emplace(k, parse_expr(v, *chart));
  return ex;
}

/// The shared parallelism suite: structure constants, coframe, Maurer-Cartan,
/// reciprocal Christoffels, horizontal fields, brackets, adjoint conjugation.
inline void run_frame_suite(SuiteReport& rep, const FrameExample& ex, const std::vector<std::string>& lambda,
                            const std::string& coframe_rows, const std::vector<std::string>& christoffels,
                            const std::vector<std::string>& y_brackets) {
  StructureConstants L = infer_structure_constants(ex.frame);
  rep.checks.push_back(check_equal("structure-constants", join_lines(lambda), join_lines(bracket_lines(L))));

  Coframe w = coframe(ex.frame, L);
  rep.checks.push_back(check_equal("coframe", coframe_rows, matrix_string(w.coeffs())));

  GValuedForm2 mc = maurer_cartan_residual(w);
  rep.checks.push_back(check_true("maurer-cartan", mc.is_zero(), "d(omega) + 1/2 [omega, omega] = 0",
                                  mc.is_zero() ? "0" : "nonzero residual"));

  FrameConnection rec = reciprocal(associated_connection(ex.frame));
  FrameConnection rec_coord = change_frame(rec, Frame::coordinate(ex.chart));
  rep.checks.push_back(
      check_equal("reciprocal-christoffels", join_lines(christoffels), join_lines(christoffel_lines(rec_coord.gamma()))));

  for (std::size_t i = 0; i < ex.horizontal.size(); ++i) {
    HorizontalCheck h = verify_horizontal(rec, ex.horizontal[i]);
    rep.checks.push_back(check_true("horizontal-Y" + std::to_string(i + 1), h.ok, "nabla^rec Y" + std::to_string(i + 1) + " = 0",
                                    h.ok ? "0" : "nonzero residual"));
  }

  BracketCheck b = opposite_initial_brackets(ex.frame, ex.horizontal, ex.point, ex.tower_values);
  rep.checks.push_back(check_true("opposite-brackets", b.ok, "Y_i(p) = X_i(p) and [Y_i,Y_j] = -sum_k lambda_ij^k Y_k",
                                  b.ok ? "holds" : "fails"));

  StructureConstants YL(ex.horizontal.size(), ex.chart->params());
  for (std::size_t i = 0; i < ex.horizontal.size(); ++i)
    for (std::size_t j = i + 1; j < ex.horizontal.size(); ++j) {
      ExprVector comps = Frame(ex.chart, ex.horizontal).components(lie_bracket(ex.horizontal[i], ex.horizontal[j]));
      YL.set_bracket(i, j, comps);
    }
  rep.checks.push_back(check_equal("horizontal-brackets", join_lines(y_brackets), join_lines(bracket_lines(YL, "Y"))));

  AdjointConnection ad = adjoint_connection(L);
  bool same = rec.gamma().nonzero_entries() == ad.gamma.nonzero_entries();
  rep.checks.push_back(check_true("adjoint-conjugation", same, join_lines(christoffel_lines(ad.gamma)),
                                  join_lines(christoffel_lines(rec.gamma()))));

  LieConnectionReport lc = lie_connection_report(associated_connection(ex.frame));
  rep.checks.push_back(check_true("lie-connection", lc.is_lie_connection() && lc.equivalence_holds,
                                  "flat, parallel torsion, flat reciprocal",
                                  std::string(lc.flat ? "flat" : "curved") + ", " +
                                      (lc.constant_torsion ? "parallel torsion" : "non-parallel torsion") + ", " +
                                      (lc.reciprocal_flat ? "flat reciprocal" : "curved reciprocal")));
}

inline SuiteReport suite_ex_b() {
  SuiteReport rep{"ex-B", {}, {}};
  FrameExample ex = make_frame_example({"x", "y"}, {}, {{"t", {{"x", "0"}, {"y", "t"}}}}, {{"1", "0"}, {"x", "1"}},
                                       {{"t", "0"}, {"0", "1"}}, {{"x", "0"}, {"y", "0"}}, {{"t", "1"}});
  run_frame_suite(rep, ex, {"[A1,A2] = A1"}, "[[1, -x], [0, 1]]", {"Gamma_21^1 = -1"}, {"[Y1,Y2] = -Y1"});
  return rep;
}

inline SuiteReport suite_ex_md() {
  SuiteReport rep{"ex-MD", {}, {}};
  FrameExample ex = make_frame_example(
      {"x", "y", "z"}, {"alpha", "beta"},
      {{"u", {{"x", "alpha*u"}, {"y", "0"}, {"z", "0"}}}, {"v", {{"x", "beta*v"}, {"y", "0"}, {"z", "0"}}}},
      {{"1", "alpha*y", "beta*z"}, {"0", "1", "0"}, {"0", "0", "1"}}, {{"1", "0", "0"}, {"0", "u", "0"}, {"0", "0", "v"}},
      {{"x", "0"}, {"y", "0"}, {"z", "0"}}, {{"u", "1"}, {"v", "1"}});
  run_frame_suite(rep, ex, {"[A1,A2] = -alpha*A2", "[A1,A3] = -beta*A3"},
                  "[[1, 0, 0], [-alpha*y, 1, 0], [-beta*z, 0, 1]]", {"Gamma_12^2 = -alpha", "Gamma_13^3 = -beta"},
                  {"[Y1,Y2] = alpha*Y2", "[Y1,Y3] = beta*Y3"});
  rep.discrepancies.push_back({"structure constants", "[A1,A2] = alpha*A2; [A1,A3] = beta*A3",
                               "[A1,A2] = -alpha*A2; [A1,A3] = -beta*A3"});
  rep.discrepancies.push_back({"reciprocal Christoffels in the coordinate frame",
                               "Gamma_11^2 = -alpha; Gamma_11^3 = -beta", "Gamma_12^2 = -alpha; Gamma_13^3 = -beta"});
  rep.discrepancies.push_back({"brackets of the horizontal fields", "[Y1,Y2] = -alpha*Y2; [Y1,Y3] = -beta*Y3",
                               "[Y1,Y2] = alpha*Y2; [Y1,Y3] = beta*Y3"});
  return rep;
}

inline SuiteReport suite_ex_md_log() {
  SuiteReport rep{"ex-MD-log", {}, {}};
  FrameExample ex = make_frame_example(
      {"x", "y", "z"}, {"alpha", "beta"},
      {{"p", {{"x", "alpha*p/x"}, {"y", "0"}, {"z", "0"}}}, {"q", {{"x", "beta*q/x"}, {"y", "0"}, {"z", "0"}}}},
      {{"x", "alpha*y", "beta*z"}, {"0", "1", "0"}, {"0", "0", "1"}}, {{"x", "0", "0"}, {"0", "p", "0"}, {"0", "0", "q"}},
      {{"x", "1"}, {"y", "0"}, {"z", "0"}}, {{"p", "1"}, {"q", "1"}});
  run_frame_suite(rep, ex, {"[A1,A2] = -alpha*A2", "[A1,A3] = -beta*A3"},
                  "[[1/x, 0, 0], [-alpha*y/x, 1, 0], [-beta*z/x, 0, 1]]",
                  {"Gamma_11^1 = -1/x", "Gamma_12^2 = -alpha/x", "Gamma_13^3 = -beta/x"},
                  {"[Y1,Y2] = alpha*Y2", "[Y1,Y3] = beta*Y3"});
  rep.discrepancies.push_back({"structure constants", "[A1,A2] = alpha*A2; [A1,A3] = beta*A3",
                               "[A1,A2] = -alpha*A2; [A1,A3] = -beta*A3"});
  return rep;
}

inline SuiteReport suite_sl2_nu() {
  SuiteReport rep{"sl2-nu", {}, {}};
  const RatExpr nu = RatExpr::symbol("nu");
  const RatExpr f = schwarzian_f(nu);

  RatExpr e0f = witt_prolong(0, 3, nu).apply(f);
  rep.checks.push_back(check_equal("E0-f", to_string(RatExpr(2) * f), to_string(e0f)));
  RatExpr e1f = witt_prolong(1, 3, nu).apply(f);
  rep.checks.push_back(check_equal("E1-f", "0", to_string(e1f)));

  Frame F = sl2_frame(nu);
  StructureConstants L = infer_structure_constants(F);
  StructureConstants L0 = infer_structure_constants(sl2_frame(RatExpr()));
  StructureConstants Lz = infer_structure_constants(sl2_frame(RatExpr::symbol("z")));
  rep.checks.push_back(check_equal("sl2-constants", join_lines(bracket_lines(L0)), join_lines(bracket_lines(L))));
  rep.checks.push_back(check_equal("sl2-constants-numeric-nu", join_lines(bracket_lines(L)), join_lines(bracket_lines(Lz))));
  DerivedAlgebra D = derived_subalgebra(L);
  rep.checks.push_back(check_true("sl2-perfect", D.basis.size() == 3 && check_lie_algebra(L).ok,
                                  "Jacobi holds and [g,g] = g", "derived dimension " + std::to_string(D.basis.size())));

  RatExpr det = F.determinant();
  rep.checks.push_back(check_true("frame-determinant", !det.is_zero(), "nonzero", to_string(det)));

  LinearODE derived = derive_symmetry_ode(nu);
  rep.checks.push_back(check_equal("symmetry-ode", to_string(lin_equation(nu), "a"), to_string(derived, "a")));

  LinearODE sq = symmetric_square(second_order(-nu / RatExpr(2)));
  rep.checks.push_back(check_equal("symmetric-square", to_string(derived, "a"), to_string(sq, "a")));

  ReciprocalGalois g = classify_reciprocal_sl2(RatExpr());
  rep.checks.push_back(check_equal("galois-nu-zero", "Trivial", g.psl2.str()));

  rep.discrepancies.push_back({"symmetry equation as a symmetric square", "second symmetric power of y'' = nu*y",
                               "second symmetric power of y'' = -(nu/2)*y"});
  return rep;
}

struct HGExample {
  std::string name;
  std::string title;
  bool use_lmn;
  std::array<std::string, 3> values;
  RationalityFlags flags;
  std::string expected;
};

inline const std::vector<HGExample>& hg_examples() {
  static const std::vector<HGExample> v{
      {"hg-legendre", "Legendre-type family (a,b,c) = (1/2,1/2,1)", false, {"1/2", "1/2", "1"}, {}, "Full"},
      {"hg-borel", "(a,b) = (-1,0) with c irrational", false, {"-1", "0", "c"}, {{"c", ParamKind::Irrational}}, "Borel"},
      {"hg-unipotent", "(a,b) = (-1,0) with c an integer", false, {"-1", "0", "c"}, {{"c", ParamKind::Integer}},
       "Unipotent"},
      {"hg-dihedral", "c = 1/2, a + b = 0 with a irrational", false, {"a", "-a", "1/2"},
       {{"a", ParamKind::Irrational}}, "DihedralInfinite"},
      {"hg-tetrahedral", "(l,m,n) = (1/3,1/2,1/3)", true, {"1/3", "1/2", "1/3"}, {}, "Tetrahedral"},
      {"hg-octahedral", "(l,m,n) = (1/2,1/3,1/4)", true, {"1/2", "1/3", "1/4"}, {}, "Octahedral"},
      {"hg-icosahedral", "(l,m,n) = (1/2,1/3,1/5)", true, {"1/2", "1/3", "1/5"}, {}, "Icosahedral"},
  };
  return v;
}

inline HGParams hg_params(const HGExample& e) {
  std::vector<std::string> names{"a", "b", "c"};
  std::array<RatExpr, 3> x;
  for (std::size_t i = 0; i < 3; ++i) x[i] = parse_expr(e.values[i], names);
  return e.use_lmn ? HGParams::from_lmn(x[0], x[1], x[2]) : HGParams::from_abc(x[0], x[1], x[2]);
}

inline SuiteReport suite_hg(const HGExample& e) {
  SuiteReport rep{e.name, {}, {}};
  HGParams p = hg_params(e);
  ReciprocalGalois g = classify_reciprocal_sl2(p, e.flags);
  rep.checks.push_back(check_equal("psl2-class", e.expected, g.psl2.str()));
  rep.checks.push_back(check_equal("symmetry-ode", to_string(lin_equation(g.nu), "w"), to_string(g.symmetry_ode, "w")));
  if (g.cross_check)
    rep.checks.push_back(check_true("kovacic-cross-check", *g.cross_check, e.expected,
                                    g.sl2 ? psl2_projection(*g.sl2).str() : "unavailable"));
  if (g.certificate)
    rep.checks.push_back(check_true("kovacic-certificate", g.certificate->verified, "verified",
                                    g.certificate->verified ? "verified" : "failed"));
  return rep;
}

}  // namespace detail

inline std::vector<ExampleInfo> list_examples() {
  std::vector<ExampleInfo> out{
      {"ex-B", "parallelism", "affine group frame {d/dx, x d/dx + d/dy} with reciprocal connection"},
      {"ex-MD", "parallelism", "frame d/dx + alpha y d/dy + beta z d/dz, d/dy, d/dz with exponential horizontal fields"},
      {"ex-MD-log", "parallelism", "frame x d/dx + alpha y d/dy + beta z d/dz, d/dy, d/dz with power horizontal fields"},
      {"sl2-nu", "sl2", "sl2 parallelism on the Schwarzian threefold and its symmetry equation"},
  };
  for (const auto& e : detail::hg_examples()) out.push_back({e.name, "galois", e.title});
  return out;
}

/// Runs the named built-in example; unknown names raise SchemaError.
inline SuiteReport run_example(const std::string& name) {
  if (name == "ex-B") return detail::suite_ex_b();
  if (name == "ex-MD") return detail::suite_ex_md();
  if (name == "ex-MD-log") return detail::suite_ex_md_log();
  if (name == "sl2-nu") return detail::suite_sl2_nu();
  for (const auto& e : detail::hg_examples())
    if (e.name == name) return detail::suite_hg(e);
  throw SchemaError("unknown example '" + name + "'", {{"pointer", "/example"}, {"name", name}});
}

}  // namespace parallax
