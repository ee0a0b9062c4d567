#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/ratexpr.hpp"

namespace parallax {

/// Free transcendental constants over Q (alpha, beta, a, b, c, ...). They are
/// ordinary symbols of RatExpr with zero derivative in every direction.
struct ConstField {
  std::vector<std::string> parameters;

  bool has(std::string_view name) const {
    return std::find(parameters.begin(), parameters.end(), name) != parameters.end();
  }
};

struct TowerElement {
  std::string name;
  /// d(name)/d(var) for chart variables; a missing variable is unknown, not zero.
  std::map<std::string, RatExpr> derivatives;
};

/// Differential field tower over a chart: named transcendentals with prescribed
/// partial derivatives. Tables may mention chart variables, parameters, earlier
/// elements and the element itself.
class DiffTower {
 public:
  DiffTower() = default;

  const std::vector<TowerElement>& elements() const { return elements_; }
  bool empty() const { return elements_.empty(); }

  const TowerElement* find(std::string_view name) const {
    for (const auto& e : elements_)
      if (e.name == name) return &e;
    return nullptr;
  }
  bool has(std::string_view name) const { return find(name) != nullptr; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& e : elements_) out.push_back(e.name);
    return out;
  }

  /// Total partial derivative d f / d v through the tower tables.
  RatExpr derive(const RatExpr& f, const std::string& v) const {
    RatExpr out = f.partial(v);
    for (const auto& e : elements_) {
      if (!f.contains(e.name)) continue;
      auto it = e.derivatives.find(v);
      if (it == e.derivatives.end())
        throw TowerInsufficient("derivative of tower element '" + e.name + "' with respect to '" + v + "' is not defined",
                                {{"element", e.name}, {"variable", v}});
      if (it->second.is_zero()) continue;
      out += f.partial(e.name) * it->second;
    }
    return out;
  }

  /// Appends an element without any checks; use extend_tower for validated input.
  DiffTower appended(TowerElement e) const {
    DiffTower t = *this;
    t.elements_.push_back(std::move(e));
    return t;
  }

 private:
  std::vector<TowerElement> elements_;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Coordinate chart: variable names, constant field and optional tower.
class Chart {
 public:
  Chart(std::vector<std::string> vars, ConstField field = {}, DiffTower tower = {})
      : vars_(std::move(vars)), field_(std::move(field)), tower_(std::move(tower)) {
    std::vector<std::string> all = vars_;
    all.insert(all.end(), field_.parameters.begin(), field_.parameters.end());
    for (const auto& e : tower_.elements()) all.push_back(e.name);
    std::vector<std::string> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw NameClash("name '" + *dup + "' is declared twice", {{"name", *dup}});
  }

  static ChartPtr make(std::vector<std::string> vars, std::vector<std::string> params = {}, DiffTower tower = {}) {
    return std::make_shared<const Chart>(std::move(vars), ConstField{std::move(params)}, std::move(tower));
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::string>& params() const { return field_.parameters; }
  const ConstField& field() const { return field_; }
  const DiffTower& tower() const { return tower_; }
  std::size_t dim() const { return vars_.size(); }

  bool is_var(std::string_view n) const { return std::find(vars_.begin(), vars_.end(), n) != vars_.end(); }
  bool is_param(std::string_view n) const { return field_.has(n); }
  bool is_tower(std::string_view n) const { return tower_.has(n); }
  bool knows(std::string_view n) const { return is_var(n) || is_param(n) || is_tower(n); }

  int index_of(std::string_view n) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == n) return static_cast<int>(i);
    return -1;
  }

  RatExpr var(std::size_t i) const { return RatExpr::symbol(vars_.at(i)); }

  RatExpr derive(const RatExpr& f, const std::string& v) const {
    if (!is_var(v)) throw UnknownSymbol("'" + v + "' is not a chart variable", {{"name", v}});
    return tower_.derive(f, v);
  }
  RatExpr derive(const RatExpr& f, std::size_t i) const { return tower_.derive(f, vars_.at(i)); }

  /// Element of the constant field: free of chart variables and tower elements.
  bool is_constant(const RatExpr& f) const {
    for (const auto& s : f.symbols())
      if (is_var(s) || is_tower(s)) return false;
    return true;
  }

  /// Charts are compatible when variables and parameters agree and one tower
  /// extends the other.
  bool compatible(const Chart& o) const {
    if (vars_ != o.vars_ || field_.parameters != o.field_.parameters) return false;
    auto a = tower_.names();
    auto b = o.tower_.names();
    if (a.size() > b.size()) std::swap(a, b);
    return std::equal(a.begin(), a.end(), b.begin());
  }

 private:
  std::vector<std::string> vars_;
  ConstField field_;
  DiffTower tower_;
};

/// The larger of two compatible charts; ChartMismatch otherwise.
inline ChartPtr common_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return a;
  if (!a->compatible(*b)) throw ChartMismatch("objects live on different charts");
  return a->tower().elements().size() >= b->tower().elements().size() ? a : b;
}

/// Adds a tower element to the chart, checking freshness, references and the
/// commutation of mixed partials.
inline ChartPtr extend_tower(const ChartPtr& chart, const std::string& name,
                             const std::map<std::string, RatExpr>& table) {
  if (chart->knows(name)) throw NameClash("name '" + name + "' is already in use", {{"name", name}});
  for (const auto& [v, expr] : table) {
    if (!chart->is_var(v)) throw UnknownSymbol("'" + v + "' is not a chart variable", {{"name", v}});
    for (const auto& s : expr.symbols())
      if (s != name && !chart->knows(s))
        throw UnknownSymbol("derivative of '" + name + "' mentions unknown symbol '" + s + "'", {{"name", s}});
  }
  DiffTower tower = chart->tower().appended(TowerElement{name, table});
  auto next = std::make_shared<const Chart>(chart->vars(), chart->field(), tower);
  for (auto u = table.begin(); u != table.end(); ++u) {
    for (auto v = std::next(u); v != table.end(); ++v) {
      RatExpr uv = tower.derive(v->second, u->first);
      RatExpr vu = tower.derive(u->second, v->first);
      if (!(uv == vu))
        throw NonIntegrable("mixed partials of '" + name + "' do not commute",
                            {{"element", name}, {"u", u->first}, {"v", v->first},
                             {"d_u d_v", to_string(uv)}, {"d_v d_u", to_string(vu)}});
    }
  }
  return next;
}

}  // namespace parallax
