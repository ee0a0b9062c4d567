#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parallax/parallax.hpp"

namespace parallax::cli {

using json = nlohmann::ordered_json;

/// Appends a key to a JSON pointer, escaping '~' and '/'.
inline std::string child(const std::string& ptr, const std::string& key) {
  std::string k;
  for (char c : key) k += c == '~' ? "~0" : c == '/' ? "~1" : std::string(1, c);
  return ptr + "/" + k;
}
inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

[[noreturn]] inline void schema_fail(const std::string& ptr, const std::string& message, Error::Witness extra = {}) {
  extra["pointer"] = ptr;
  throw SchemaError(message + (ptr.empty() ? "" : " at " + ptr), std::move(extra));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema_fail("", "cannot open '" + path + "'", {{"file", path}});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    schema_fail("", "malformed JSON in '" + path + "'", {{"file", path}, {"cause", e.what()}});
  }
}

inline const json& require(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) schema_fail(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(child(ptr, key), "missing required key '" + key + "'");
  return *it;
}

inline const json& require_array(const json& j, const std::string& ptr) {
  if (!j.is_array()) schema_fail(ptr, "expected an array");
  return j;
}

inline std::string text(const json& j, const std::string& ptr) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  schema_fail(ptr, "expected an expression string");
}

inline std::size_t index1(const json& j, const std::string& ptr, std::size_t dim) {
  if (!j.is_number_integer()) schema_fail(ptr, "expected a 1-based index");
  long long v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim)
    schema_fail(ptr, "index out of range", {{"index", std::to_string(v)}, {"dim", std::to_string(dim)}});
  return static_cast<std::size_t>(v - 1);
}

inline std::vector<std::string> names(const json& j, const std::string& ptr) {
  std::vector<std::string> out;
  const json& a = require_array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_string()) schema_fail(child(ptr, i), "expected a name");
    out.push_back(a[i].get<std::string>());
  }
  return out;
}

/// Runs a parse and reports its failure as a SchemaError at `ptr`.
template <class F>
auto at_pointer(const std::string& ptr, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    Error::Witness w = e.witness();
    w["cause"] = e.code();
    schema_fail(ptr, e.what(), w);
  }
}

inline RatExpr expr(const json& j, const std::string& ptr, const Chart& chart) {
  std::string s = text(j, ptr);
  return at_pointer(ptr, [&] { return parse_expr(s, chart); });
}

inline ExprVector expr_row(const json& j, const std::string& ptr, const Chart& chart, std::size_t len) {
  const json& a = require_array(j, ptr);
  if (a.size() != len)
    schema_fail(ptr, "row has wrong length", {{"expected", std::to_string(len)}, {"found", std::to_string(a.size())}});
  ExprVector v;
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(expr(a[i], child(ptr, i), chart));
  return v;
}

inline std::vector<ExprVector> expr_rows(const json& j, const std::string& ptr, const Chart& chart, std::size_t len) {
  std::vector<ExprVector> rows;
  const json& a = require_array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) rows.push_back(expr_row(a[i], child(ptr, i), chart, len));
  return rows;
}

inline ExprMatrix to_matrix(const std::vector<ExprVector>& rows, std::size_t cols) {
  ExprMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

/// Extends `chart` by [{"name": t, "derivatives": {var: expr}}, ...].
inline ChartPtr add_tower(ChartPtr chart, const json& j, const std::string& ptr) {
  const json& a = require_array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = child(ptr, i);
    const json& nm = require(a[i], "name", p);
    if (!nm.is_string()) schema_fail(child(p, "name"), "expected a name");
    std::string name = nm.get<std::string>();
    const json& d = require(a[i], "derivatives", p);
    if (!d.is_object()) schema_fail(child(p, "derivatives"), "expected an object");
    std::map<std::string, RatExpr> table;
    for (const auto& [v, e] : d.items()) {
      std::string q = child(child(p, "derivatives"), v);
      std::string s = text(e, q);
      table.emplace(v, at_pointer(q, [&] { return parse_tower_expr(s, *chart, name); }));
    }
    chart = at_pointer(p, [&] { return extend_tower(chart, name, table); });
  }
  return chart;
}

/// {"vars": [...], "params": [...], "tower": [...]}.
inline ChartPtr chart_from_json(const json& j, const std::string& ptr) {
  std::vector<std::string> vars = names(require(j, "vars", ptr), child(ptr, "vars"));
  if (vars.empty()) schema_fail(child(ptr, "vars"), "a chart needs at least one variable");
  std::vector<std::string> params;
  if (j.contains("params")) params = names(j["params"], child(ptr, "params"));
  ChartPtr chart = at_pointer(ptr, [&] { return Chart::make(vars, params); });
  if (j.contains("tower")) chart = add_tower(chart, j["tower"], child(ptr, "tower"));
  return chart;
}

inline const std::set<std::string>& manifest_kinds() {
  static const std::set<std::string> k{"parallelism", "coparallelism", "connection", "sl2", "galois", "isogeny"};
  return k;
}

/// A problem manifest with an optional tower file appended to its main chart.
class Manifest {
 public:
  Manifest(json doc, std::optional<json> tower) : doc_(std::move(doc)), tower_(std::move(tower)) {
    if (!doc_.is_object()) schema_fail("", "manifest must be a JSON object");
    if (doc_.contains("kind")) {
      const json& k = doc_["kind"];
      if (!k.is_string() || !manifest_kinds().count(k.get<std::string>())) schema_fail("/kind", "unknown manifest kind");
    }
  }

  const json& doc() const { return doc_; }
  bool has(const std::string& key) const { return doc_.contains(key); }
  const json& get(const std::string& key) const { return require(doc_, key, ""); }

  /// The main chart: /chart, then /tower, then the tower file.
  ChartPtr chart() {
    if (chart_) return chart_;
    ChartPtr c = chart_from_json(get("chart"), "/chart");
    if (has("tower")) c = add_tower(c, doc_["tower"], "/tower");
    if (tower_) {
      const json& t = tower_->is_object() ? require(*tower_, "tower", "") : *tower_;
      c = add_tower(c, t, tower_->is_object() ? "/tower" : "");
    }
    return chart_ = c;
  }

  /// Tower values at the initial point, from /values and the tower file.
  std::map<std::string, RatExpr> tower_values() {
    std::map<std::string, RatExpr> out;
    auto read = [&](const json& obj, const std::string& ptr) {
      if (!obj.is_object()) schema_fail(ptr, "expected an object");
      for (const auto& [k, v] : obj.items()) out.insert_or_assign(k, expr(v, child(ptr, k), *chart()));
    };
    if (has("values")) read(doc_["values"], "/values");
    if (tower_ && tower_->is_object() && tower_->contains("values")) read((*tower_)["values"], "/values");
    return out;
  }

  std::map<std::string, RatExpr> point() {
    std::map<std::string, RatExpr> out;
    const json& p = get("point");
    if (!p.is_object()) schema_fail("/point", "expected an object");
    for (const auto& [k, v] : p.items()) out.emplace(k, expr(v, child("/point", k), *chart()));
    return out;
  }

  Frame frame(const std::string& key = "frame") {
    ChartPtr c = chart();
    auto rows = expr_rows(get(key), "/" + key, *c, c->dim());
    if (rows.size() != c->dim())
      schema_fail("/" + key, "a frame needs one field per chart variable",
                  {{"expected", std::to_string(c->dim())}, {"found", std::to_string(rows.size())}});
    return Frame::from_rows(c, rows);
  }

  /// {"dim": r, "brackets": [{"i": 1, "j": 2, "coeffs": [...]}]} with parameters of `chart`.
  StructureConstants algebra(const Chart& chart, const std::string& key = "algebra") {
    std::string ptr = "/" + key;
    const json& a = get(key);
    const json& d = require(a, "dim", ptr);
    if (!d.is_number_integer() || d.get<long long>() < 1) schema_fail(child(ptr, "dim"), "expected a positive dimension");
    const auto r = static_cast<std::size_t>(d.get<long long>());
    StructureConstants L(r, chart.params());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    if (a.contains("brackets")) {
      const json& b = require_array(a["brackets"], child(ptr, "brackets"));
      for (std::size_t n = 0; n < b.size(); ++n) {
        std::string p = child(child(ptr, "brackets"), n);
        std::size_t i = index1(require(b[n], "i", p), child(p, "i"), r);
        std::size_t j = index1(require(b[n], "j", p), child(p, "j"), r);
        if (i == j) schema_fail(child(p, "j"), "a bracket needs two distinct generators");
        if (!seen.insert({std::min(i, j), std::max(i, j)}).second) schema_fail(p, "bracket given twice");
        L.set_bracket(i, j, expr_row(require(b[n], "coeffs", p), child(p, "coeffs"), chart, r));
      }
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k)
          if (!chart.is_constant(L(i, j, k)))
            schema_fail(ptr, "structure constants must not depend on the chart",
                        {{"i", std::to_string(i + 1)}, {"j", std::to_string(j + 1)}, {"k", std::to_string(k + 1)}});
    return L;
  }

  Coframe coframe(const StructureConstants& L, const std::string& key = "coframe") {
    ChartPtr c = chart();
    auto rows = expr_rows(get(key), "/" + key, *c, c->dim());
    if (rows.size() != L.dim())
      schema_fail("/" + key, "a coframe needs one row per algebra generator",
                  {{"expected", std::to_string(L.dim())}, {"found", std::to_string(rows.size())}});
    return Coframe(c, L, to_matrix(rows, c->dim()));
  }

  /// /connection = {"frame": "coordinate" | rows, "christoffels": [{"i","j","k","value"}]};
  /// otherwise the connection associated with /frame.
  FrameConnection connection() {
    if (!has("connection")) return associated_connection(frame());
    ChartPtr c = chart();
    const json& cn = doc_["connection"];
    Frame F = Frame::coordinate(c);
    if (cn.contains("frame") && !(cn["frame"].is_string() && cn["frame"] == "coordinate")) {
      auto rows = expr_rows(cn["frame"], "/connection/frame", *c, c->dim());
      if (rows.size() != c->dim()) schema_fail("/connection/frame", "a frame needs one field per chart variable");
      F = Frame::from_rows(c, rows);
    }
    const std::size_t r = c->dim();
    Tensor g(r, 3);
    if (cn.contains("christoffels")) {
      const json& e = require_array(cn["christoffels"], "/connection/christoffels");
      for (std::size_t n = 0; n < e.size(); ++n) {
        std::string p = child("/connection/christoffels", n);
        std::size_t i = index1(require(e[n], "i", p), child(p, "i"), r);
        std::size_t j = index1(require(e[n], "j", p), child(p, "j"), r);
        std::size_t k = index1(require(e[n], "k", p), child(p, "k"), r);
        g(i, j, k) = expr(require(e[n], "value", p), child(p, "value"), *c);
      }
    }
    if (F.determinant().is_zero()) throw SingularFrame("connection frame is singular");
    return {F, g};
  }

  std::vector<VectorField> fields(const std::string& key) {
    ChartPtr c = chart();
    std::vector<VectorField> out;
    for (auto& row : expr_rows(get(key), "/" + key, *c, c->dim())) out.emplace_back(c, row);
    return out;
  }

 private:
  json doc_;
  std::optional<json> tower_;
  ChartPtr chart_;
};

}  // namespace parallax::cli
