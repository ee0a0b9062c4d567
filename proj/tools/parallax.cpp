#include <algorithm>
#include <cctype>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manifest.hpp"

namespace parallax::cli {
namespace {

struct Options {
  bool json = false;
  std::string frame = "parallelism";
  std::string tower_file;
};

struct Outcome {
  json report;
  int code = 0;
};

std::string s(const RatExpr& e) { return to_string(e); }

/// "y'' = r*y", parenthesizing compound r.
std::string base_equation(const RatExpr& r) {
  std::string t = s(r);
  if (t.find_first_of("+-/", 1) != std::string::npos) t = "(" + t + ")";
  return "y'' = " + t + "*y";
}

json rows_json(const ExprMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(s(m(i, j)));
    out.push_back(row);
  }
  return out;
}

json witness_json(const Error::Witness& w) {
  json out = json::object();
  for (const auto& [k, v] : w) out[k] = v;
  return out;
}

json tensor_witness(const std::optional<TensorWitness>& w) {
  if (!w) return nullptr;
  json index = json::array();
  for (auto i : w->index) index.push_back(i + 1);
  return {{"index", index}, {"value", s(w->value)}};
}

json christoffels_json(const Tensor& g) {
  json out = json::array();
  for (const auto& [ix, v] : g.nonzero_entries())
    out.push_back({{"i", ix[0] + 1}, {"j", ix[1] + 1}, {"k", ix[2] + 1}, {"value", s(v)}});
  return out;
}

json algebra_json(const StructureConstants& L) {
  json constants = json::array();
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j)
      for (std::size_t k = 0; k < L.dim(); ++k)
        if (!L(i, j, k).is_zero()) constants.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", s(L(i, j, k))}});
  return {{"dim", L.dim()}, {"brackets", bracket_lines(L)}, {"constants", constants}};
}

json form2_entries(const GValuedForm2& w) {
  json out = json::array();
  const std::size_t n = w.chart()->dim();
  for (std::size_t i = 0; i < w.comps().size(); ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (!w(i, a, b).is_zero())
          out.push_back({{"component", i + 1}, {"a", a + 1}, {"b", b + 1}, {"value", s(w(i, a, b))}});
  return out;
}

json form1_entries(const GValuedForm1& w) {
  json out = json::array();
  for (std::size_t i = 0; i < w.coeffs().rows(); ++i)
    for (std::size_t a = 0; a < w.coeffs().cols(); ++a)
      if (!w(i, a).is_zero()) out.push_back({{"component", i + 1}, {"a", a + 1}, {"value", s(w(i, a))}});
  return out;
}

json ode_json(const LinearODE& L, const std::string& fn) { return to_string(L, fn); }

Manifest load(const std::string& path, const Options& o) {
  std::optional<json> tower;
  if (!o.tower_file.empty()) tower = read_json_file(o.tower_file);
  return Manifest(read_json_file(path), std::move(tower));
}

// check-parallelism

Outcome check_parallelism(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  Frame F = m.frame();
  RatExpr det = F.determinant();
  json rep = {{"command", "check-parallelism"}, {"determinant", s(det)}};
  if (det.is_zero()) throw SingularFrame("frame fields are linearly dependent", {{"determinant", "0"}});
  StructureConstants L = infer_structure_constants(F);
  rep["algebra"] = algebra_json(L);
  LieAlgebraReport lie = check_lie_algebra(L);
  rep["lie_algebra"] = lie.ok;
  rep["coframe"] = rows_json(coframe(F, L).coeffs());
  int code = lie.ok ? 0 : 1;
  if (m.has("algebra")) {
    StructureConstants given = m.algebra(*F.chart());
    if (given.dim() != L.dim()) schema_fail("/algebra/dim", "algebra dimension differs from the frame size");
    json mismatch = nullptr;
    for (std::size_t i = 0; i < L.dim() && mismatch.is_null(); ++i)
      for (std::size_t j = 0; j < L.dim() && mismatch.is_null(); ++j)
        for (std::size_t k = 0; k < L.dim() && mismatch.is_null(); ++k)
          if (!(given(i, j, k) == L(i, j, k)))
            mismatch = {{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"given", s(given(i, j, k))}, {"inferred", s(L(i, j, k))}};
    rep["matches_algebra"] = mismatch.is_null();
    if (!mismatch.is_null()) {
      rep["witness"] = mismatch;
      code = 1;
    }
  }
  rep["status"] = code == 0 ? "verified" : "failed";
  return {rep, code};
}

// maurer-cartan

Outcome maurer_cartan(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  ChartPtr chart = m.chart();
  StructureConstants L;
  std::optional<Frame> F;
  if (m.has("frame")) F = m.frame();
  if (m.has("algebra"))
    L = m.algebra(*chart);
  else if (F)
    L = infer_structure_constants(*F);
  else
    schema_fail("/algebra", "missing required key 'algebra'");
  Coframe w = m.has("coframe") ? m.coframe(L) : (F ? coframe(*F, L) : m.coframe(L));
  GValuedForm2 res = maurer_cartan_residual(w);
  json entries = form2_entries(res);
  json rep = {{"command", "maurer-cartan"}, {"algebra", algebra_json(L)}, {"coframe", rows_json(w.coeffs())},
              {"residual", entries}};
  bool ok = entries.empty();
  rep["status"] = ok ? "verified" : "failed";
  if (!ok) rep["witness"] = entries.front();
  return {rep, ok ? 0 : 1};
}

FrameConnection in_frame(const FrameConnection& C, const Options& o) {
  return o.frame == "coordinate" ? change_frame(C, Frame::coordinate(C.frame().chart())) : C;
}

// reciprocal

Outcome reciprocal_cmd(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  FrameConnection C = m.connection();
  FrameConnection R = in_frame(reciprocal(C), o);
  json rep = {{"command", "reciprocal"},
              {"frame", o.frame},
              {"frame_fields", rows_json(R.frame().matrix())},
              {"christoffels", christoffels_json(R.gamma())},
              {"lines", christoffel_lines(R.gamma())},
              {"status", "computed"}};
  return {rep, 0};
}

// lie-connection

Outcome lie_connection(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  FrameConnection C = m.connection();
  LieConnectionReport r = lie_connection_report(C);
  json rep = {{"command", "lie-connection"},
              {"flat", r.flat},
              {"parallel_torsion", r.constant_torsion},
              {"reciprocal_flat", r.reciprocal_flat},
              {"equivalence_holds", r.equivalence_holds},
              {"lie_connection", r.is_lie_connection()},
              {"torsion", christoffels_json(torsion(in_frame(C, o)))}};
  json w = json::object();
  if (r.curvature_witness) w["curvature"] = tensor_witness(r.curvature_witness);
  if (r.nabla_torsion_witness) w["nabla_torsion"] = tensor_witness(r.nabla_torsion_witness);
  if (r.reciprocal_curvature_witness) w["reciprocal_curvature"] = tensor_witness(r.reciprocal_curvature_witness);
  bool ok = r.is_lie_connection() && r.equivalence_holds;
  rep["status"] = ok ? "verified" : "failed";
  if (!w.empty()) rep["witness"] = w;
  return {rep, ok ? 0 : 1};
}

// horizontal

Outcome horizontal(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  std::string use = "reciprocal";
  if (m.has("use")) {
    const json& u = m.doc()["use"];
    if (!u.is_string() || (u != "reciprocal" && u != "associated")) schema_fail("/use", "expected 'reciprocal' or 'associated'");
    use = u.get<std::string>();
  }
  FrameConnection C = m.connection();
  if (use == "reciprocal") C = reciprocal(C);
  std::vector<VectorField> Ys = m.fields("candidates");
  json results = json::array();
  bool ok = true;
  json witness = nullptr;
  for (std::size_t n = 0; n < Ys.size(); ++n) {
    HorizontalCheck h = verify_horizontal(C, Ys[n]);
    json res = json::array();
    for (std::size_t i = 0; i < h.residual.size(); ++i)
      for (std::size_t k = 0; k < h.residual[i].size(); ++k)
        if (!h.residual[i][k].is_zero()) res.push_back({{"i", i + 1}, {"k", k + 1}, {"value", s(h.residual[i][k])}});
    results.push_back({{"candidate", n + 1}, {"horizontal", h.ok}, {"residual", res}});
    if (!h.ok && witness.is_null()) witness = {{"candidate", n + 1}, {"residual", res.front()}};
    ok = ok && h.ok;
  }
  json rep = {{"command", "horizontal"}, {"connection", use}, {"candidates", results}};
  if (m.has("point") && m.has("frame")) {
    Frame F = m.frame();
    BracketCheck b = opposite_initial_brackets(F, Ys, m.point(), m.tower_values());
    json fails = json::array();
    for (auto [i, j] : b.failures) fails.push_back({i + 1, j + 1});
    rep["opposite_brackets"] = {{"holds", b.ok}, {"failures", fails}};
    if (!b.ok && witness.is_null()) witness = {{"bracket", fails.front()}};
    ok = ok && b.ok;
  }
  rep["status"] = ok ? "verified" : "failed";
  if (!witness.is_null()) rep["witness"] = witness;
  return {rep, ok ? 0 : 1};
}

// isogeny

Outcome isogeny(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  ChartPtr source = chart_from_json(m.get("source"), "/source");
  ChartPtr target = chart_from_json(m.get("target"), "/target");
  ExprVector comps = expr_row(m.get("map"), "/map", *source, target->dim());
  RationalMap F(source, target, comps);
  StructureConstants L = m.algebra(*target);
  auto theta_rows = expr_rows(m.get("theta"), "/theta", *target, target->dim());
  auto omega_rows = expr_rows(m.get("omega"), "/omega", *source, source->dim());
  if (theta_rows.size() != L.dim()) schema_fail("/theta", "a coframe needs one row per algebra generator");
  if (omega_rows.size() != L.dim()) schema_fail("/omega", "a coframe needs one row per algebra generator");
  Coframe theta(target, L, to_matrix(theta_rows, target->dim()));
  Coframe omega(source, L, to_matrix(omega_rows, source->dim()));
  IsogenyCheck c = verify_isogeny_pullback(F, theta, omega);
  json entries = form1_entries(c.residual);
  json rep = {{"command", "isogeny"}, {"pullback_matches", c.ok}, {"residual", entries}};
  rep["status"] = c.ok ? "verified" : "failed";
  if (!c.ok) rep["witness"] = entries.front();
  return {rep, c.ok ? 0 : 1};
}

// conjugating-map

Outcome conjugating(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  ChartPtr chart = m.chart();
  StructureConstants L;
  if (m.has("algebra"))
    L = m.algebra(*chart);
  else
    L = infer_structure_constants(m.frame());
  Coframe w = m.has("coframe") ? m.coframe(L, "coframe") : coframe(m.frame("frame"), L);
  Coframe wp = m.has("coframe2") ? m.coframe(L, "coframe2") : coframe(m.frame("frame2"), L);
  ConjugatingMap c = conjugating_map(w, wp);
  json rep = {{"command", "conjugating-map"}, {"matrix", rows_json(c.matrix)}, {"automorphism", c.automorphism}};
  rep["status"] = c.automorphism ? "verified" : "failed";
  if (c.witness) rep["witness"] = {{"i", c.witness->first + 1}, {"j", c.witness->second + 1}};
  return {rep, c.automorphism ? 0 : 1};
}

// sl2

RatExpr parse_nu(const std::string& src, const std::vector<std::string>& params, const std::string& ptr) {
  std::vector<std::string> known{"z"};
  for (const auto& n : nu_symbols()) known.push_back(n);
  known.insert(known.end(), params.begin(), params.end());
  return at_pointer(ptr, [&] { return parse_expr(src, known); });
}

struct NuInput {
  std::string nu;
  std::vector<std::string> params;
};

NuInput nu_input(const std::optional<std::string>& nu, const std::vector<std::string>& params,
                 const std::string& manifest, const Options& o) {
  if (nu) return {*nu, params};
  if (manifest.empty()) schema_fail("/nu", "give --nu or a manifest");
  Manifest m = load(manifest, o);
  NuInput in{text(m.get("nu"), "/nu"), params};
  if (m.has("params")) {
    auto p = names(m.doc()["params"], "/params");
    in.params.insert(in.params.end(), p.begin(), p.end());
  }
  return in;
}

Outcome sl2_build(const NuInput& in) {
  RatExpr nu = parse_nu(in.nu, in.params, "/nu");
  Frame F = sl2_frame(nu);
  StructureConstants L = infer_structure_constants(F);
  RatExpr f = schwarzian_f(nu);
  bool e0 = witt_prolong(0, 3, nu).apply(f) == RatExpr(2) * f;
  bool e1 = witt_prolong(1, 3, nu).apply(f).is_zero();
  RatExpr det = F.determinant();
  json fields = json::array();
  const char* labels[] = {"E-1", "E0", "E1"};
  for (std::size_t i = 0; i < F.size(); ++i) {
    json c = json::array();
    for (const auto& e : F[i].coeffs()) c.push_back(s(e));
    fields.push_back({{"field", labels[i]}, {"coeffs", c}});
  }
  json rep = {{"command", "sl2 build"},
              {"nu", s(nu)},
              {"coordinates", {"z0", "z1", "z2"}},
              {"frame", fields},
              {"determinant", s(det)},
              {"algebra", algebra_json(L)},
              {"E0_f_equals_2f", e0},
              {"E1_f_equals_0", e1}};
  bool ok = e0 && e1 && !det.is_zero();
  rep["status"] = ok ? "verified" : "failed";
  return {rep, ok ? 0 : 1};
}

Outcome sl2_symmetry(const NuInput& in) {
  RatExpr nu = parse_nu(in.nu, in.params, "/nu");
  LinearODE derived = derive_symmetry_ode(nu);
  LinearODE expected = lin_equation(nu);
  LinearODE sq = symmetric_square(second_order(-nu / RatExpr(2)));
  bool ok = derived == expected && sq == derived;
  json rep = {{"command", "sl2 symmetry-ode"},
              {"nu", s(nu)},
              {"derived", ode_json(derived, "a")},
              {"expected", ode_json(expected, "a")},
              {"matches", derived == expected},
              {"symmetric_square_of", base_equation(-nu / RatExpr(2))},
              {"symmetric_square_matches", sq == derived},
              {"note", base_equation_note()}};
  rep["status"] = ok ? "verified" : "failed";
  if (!ok) rep["witness"] = {{"derived", ode_json(derived, "a")}, {"expected", ode_json(expected, "a")}};
  return {rep, ok ? 0 : 1};
}

// galois

std::vector<std::string> identifiers(const std::string& src) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < src.size();) {
    if (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back(src.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

json galois_json(const ReciprocalGalois& g) {
  json rep = {{"command", "galois"},
              {"nu", s(g.nu)},
              {"base_equation", base_equation(g.base_r)},
              {"symmetry_ode", ode_json(g.symmetry_ode, "w")},
              {"sl2_class", g.sl2 ? json(g.sl2->str()) : json(nullptr)},
              {"psl2_class", g.psl2.str()},
              {"finiteness_certified", g.psl2.finiteness_certified},
              {"method", g.method},
              {"cross_check", g.cross_check ? json(*g.cross_check) : json(nullptr)}};
  if (g.certificate) {
    const auto& c = *g.certificate;
    rep["certificate"] = {{"kovacic_case", c.kovacic_case},
                          {"degree", c.degree},
                          {"riccati", c.riccati},
                          {"minimal_polynomial", c.minimal_polynomial},
                          {"verified", c.verified}};
  } else {
    rep["certificate"] = nullptr;
  }
  rep["note"] = base_equation_note();
  return rep;
}

struct GaloisInput {
  std::optional<std::string> nu;
  std::map<std::string, std::string> hypergeometric;
  std::map<std::string, std::string> flags;
};

Outcome galois(const GaloisInput& in) {
  if (in.nu && !in.hypergeometric.empty()) schema_fail("", "give either a potential or hypergeometric parameters");
  if (in.nu) {
    RatExpr nu = at_pointer("/nu", [&] { return parse_expr(*in.nu, std::vector<std::string>{"z"}); });
    json rep = galois_json(classify_reciprocal_sl2(nu));
    rep["status"] = "classified";
    return {rep, 0};
  }
  if (in.hypergeometric.empty()) schema_fail("/hypergeometric", "give --nu or --hypergeometric");
  std::set<std::string> keys;
  for (const auto& [k, v] : in.hypergeometric) keys.insert(k);
  const bool abc = keys == std::set<std::string>{"a", "b", "c"};
  const bool lmn = keys == std::set<std::string>{"l", "m", "n"};
  if (!abc && !lmn)
    schema_fail("/hypergeometric", "expected exactly a, b, c or exactly l, m, n", {{"keys", std::to_string(keys.size())}});
  std::vector<std::string> params;
  for (const auto& [k, v] : in.hypergeometric)
    for (const auto& id : identifiers(v))
      if (std::find(params.begin(), params.end(), id) == params.end()) params.push_back(id);
  std::map<std::string, RatExpr> x;
  for (const auto& [k, v] : in.hypergeometric)
    x.emplace(k, at_pointer(child("/hypergeometric", k), [&] { return parse_expr(v, params); }));
  RationalityFlags flags;
  for (const auto& [p, kind] : in.flags) {
    if (std::find(params.begin(), params.end(), p) == params.end())
      schema_fail(child("/flags", p), "flag names a symbol that does not occur in the parameters", {{"name", p}});
    ParamKind pk = kind == "integer" ? ParamKind::Integer : kind == "rational" ? ParamKind::Rational : ParamKind::Irrational;
    if (kind != "integer" && kind != "rational" && kind != "irrational")
      schema_fail(child("/flags", p), "expected 'integer', 'rational' or 'irrational'");
    flags[p] = pk;
  }
  HGParams hp = abc ? HGParams::from_abc(x["a"], x["b"], x["c"]) : HGParams::from_lmn(x["l"], x["m"], x["n"]);
  json rep = galois_json(classify_reciprocal_sl2(hp, flags));
  json input = json::object();
  for (const auto& [k, v] : x) input[k] = s(v);
  rep["parameters"] = input;
  auto d = hp.exponent_differences();
  rep["exponent_differences"] = {{"l", s(d[0])}, {"m", s(d[1])}, {"n", s(d[2])}};
  rep["status"] = "classified";
  return {rep, 0};
}

GaloisInput galois_manifest(const std::string& path, const Options& o) {
  Manifest m = load(path, o);
  GaloisInput in;
  if (m.has("nu")) in.nu = text(m.doc()["nu"], "/nu");
  if (m.has("hypergeometric")) {
    const json& h = m.doc()["hypergeometric"];
    if (!h.is_object()) schema_fail("/hypergeometric", "expected an object");
    for (const auto& [k, v] : h.items()) in.hypergeometric[k] = text(v, child("/hypergeometric", k));
  }
  if (m.has("flags")) {
    const json& f = m.doc()["flags"];
    if (!f.is_object()) schema_fail("/flags", "expected an object");
    for (const auto& [k, v] : f.items()) {
      if (!v.is_string()) schema_fail(child("/flags", k), "expected 'integer', 'rational' or 'irrational'");
      in.flags[k] = v.get<std::string>();
    }
  }
  return in;
}

// examples

Outcome example(const std::string& name, const std::string& check) {
  SuiteReport r = run_example(name);
  json checks = json::array();
  bool ok = true, found = false;
  json witness = nullptr;
  for (const auto& c : r.checks) {
    if (check != "all" && c.name != check) continue;
    found = true;
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"expected", c.expected}, {"computed", c.computed}});
    if (!c.ok && witness.is_null()) witness = checks.back();
    ok = ok && c.ok;
  }
  if (!found) schema_fail("/check", "example '" + name + "' has no check named '" + check + "'", {{"check", check}});
  json disc = json::array();
  for (const auto& d : r.discrepancies)
    disc.push_back({{"claim", d.claim}, {"published", d.published}, {"computed", d.computed}});
  json rep = {{"command", "example"}, {"name", name}, {"checks", checks}, {"discrepancies", disc}};
  rep["status"] = ok ? "verified" : "failed";
  if (!witness.is_null()) rep["witness"] = witness;
  return {rep, ok ? 0 : 1};
}

Outcome catalogue() {
  json list = json::array();
  for (const auto& e : list_examples()) list.push_back({{"name", e.name}, {"kind", e.kind}, {"title", e.title}});
  return {{{"command", "list-examples"}, {"examples", list}}, 0};
}

// output

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(const json& j, std::ostream& os, const std::string& pad) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (scalar(v)) {
        os << pad << k << ": " << scalar_text(v) << "\n";
      } else if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
        os << pad << k << ": " << v.dump() << "\n";
      } else if (v.empty()) {
        os << pad << k << ": (none)\n";
      } else {
        os << pad << k << ":\n";
        render(v, os, pad + "  ");
      }
    }
    return;
  }
  for (const auto& v : j) {
    if (scalar(v)) {
      os << pad << "- " << scalar_text(v) << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
      std::string line;
      for (const auto& x : v) line += (line.empty() ? "" : ", ") + scalar_text(x);
      os << pad << "- [" << line << "]\n";
    } else {
      std::ostringstream inner;
      render(v, inner, pad + "  ");
      std::string t = inner.str();
      os << pad << "- " << t.substr(pad.size() + 2);
    }
  }
}

void emit(const json& report, const Options& o, std::ostream& os) {
  if (o.json)
    os << report.dump(2) << "\n";
  else
    render(report, os, "");
}

int error_exit(const Error& e) {
  static const std::set<std::string> failures{"NonConstantCoefficients", "SingularFrame",    "SingularMatrix",
                                              "NotADerivation",          "NonCommutingAction", "NonCommutingParallelisms",
                                              "InitialConditionMismatch", "NotClosed",        "EliminationFailure"};
  return failures.count(e.code()) ? 1 : 2;
}

std::map<std::string, std::string> key_values(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0)
      schema_fail("/hypergeometric", "expected key=value", {{"item", it}});
    std::string k = it.substr(0, eq);
    if (!out.emplace(k, it.substr(eq + 1)).second) schema_fail(child("/hypergeometric", k), "parameter given twice");
  }
  return out;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"parallax: parallelisms, Lie connections and Galois groups of the reciprocal connection"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "emit JSON");
  app.add_option("--frame", o.frame, "frame for reported Christoffel symbols")
      ->check(CLI::IsMember({"coordinate", "parallelism"}));
  app.add_option("--tower", o.tower_file, "JSON file with extra tower elements and values");

  std::string manifest;
  std::function<Outcome()> action;
  auto manifest_command = [&](const std::string& name, const std::string& help, Outcome (*f)(const std::string&, const Options&)) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("manifest", manifest, "problem manifest (JSON)")->required();
    c->callback([&, f] { action = [&, f] { return f(manifest, o); }; });
  };
  manifest_command("check-parallelism", "infer structure constants of a frame", check_parallelism);
  manifest_command("maurer-cartan", "evaluate d(omega) + 1/2 [omega, omega]", maurer_cartan);
  manifest_command("reciprocal", "Christoffel symbols of the reciprocal connection", reciprocal_cmd);
  manifest_command("lie-connection", "flatness, parallel torsion and flat reciprocal", lie_connection);
  manifest_command("horizontal", "check horizontal candidate fields", horizontal);
  manifest_command("isogeny", "check a pullback of Maurer-Cartan forms", isogeny);
  manifest_command("conjugating-map", "matrix relating two commuting parallelisms", conjugating);

  std::optional<std::string> nu;
  std::vector<std::string> params;
  CLI::App* sl2 = app.add_subcommand("sl2", "the sl2 parallelism of a potential nu");
  sl2->require_subcommand(1);
  for (const char* name : {"build", "symmetry-ode"}) {
    CLI::App* c = sl2->add_subcommand(name, name == std::string("build") ? "frame, constants, Schwarzian identities"
                                                                         : "derive the symmetry equation");
    c->add_option("--nu", nu, "potential in z; 'nu' stands for an arbitrary function");
    c->add_option("--param", params, "parameter symbol")->take_all();
    c->add_option("manifest", manifest, "manifest with a 'nu' key");
    std::string which = name;
    c->callback([&, which] {
      action = [&, which] {
        NuInput in = nu_input(nu, params, manifest, o);
        return which == "build" ? sl2_build(in) : sl2_symmetry(in);
      };
    });
  }

  std::vector<std::string> hg, irr, integ, rat;
  CLI::App* gal = app.add_subcommand("galois", "Galois group of the reciprocal connection");
  gal->add_option("--nu", nu, "potential in z");
  gal->add_option("--hypergeometric", hg, "a=.. b=.. c=.. or l=.. m=.. n=..")->expected(3);
  gal->add_option("--irrational", irr, "parameter known to be irrational")->take_all();
  gal->add_option("--integer", integ, "parameter known to be an integer")->take_all();
  gal->add_option("--rational", rat, "parameter known to be rational")->take_all();
  gal->add_option("manifest", manifest, "manifest with 'nu' or 'hypergeometric'");
  gal->callback([&] {
    action = [&] {
      GaloisInput in;
      if (!manifest.empty()) in = galois_manifest(manifest, o);
      if (nu) in.nu = nu;
      if (!hg.empty()) in.hypergeometric = key_values(hg);
      for (const auto& p : irr) in.flags[p] = "irrational";
      for (const auto& p : integ) in.flags[p] = "integer";
      for (const auto& p : rat) in.flags[p] = "rational";
      return galois(in);
    };
  });

  std::string example_name, check = "all";
  CLI::App* ex = app.add_subcommand("example", "run a built-in example suite");
  ex->add_option("name", example_name, "example name")->required();
  ex->add_option("--check", check, "'all' or the name of one check");
  ex->callback([&] { action = [&] { return example(example_name, check); }; });

  CLI::App* le = app.add_subcommand("list-examples", "list the built-in examples");
  le->callback([&] { action = [] { return catalogue(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Outcome out = action();
    emit(out.report, o, std::cout);
    return out.code;
  } catch (const Error& e) {
    int code = error_exit(e);
    json rep = {{"status", code == 1 ? "failed" : "error"},
                {"error", e.code()},
                {"message", e.what()},
                {"witness", witness_json(e.witness())}};
    emit(rep, o, o.json ? std::cout : std::cerr);
    return code;
  }
}

}  // namespace parallax::cli

int main(int argc, char** argv) { return parallax::cli::run(argc, argv); }
