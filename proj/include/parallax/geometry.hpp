#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parallax/chart.hpp"
#include "parallax/errors.hpp"
#include "parallax/liealg.hpp"
#include "parallax/linalg.hpp"

namespace parallax {

/// Sum of coefficients times coordinate derivations on a chart.
class VectorField {
 public:
  VectorField() = default;
  VectorField(ChartPtr chart, ExprVector coeffs) : chart_(std::move(chart)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != chart_->dim()) throw DimensionMismatch("vector field needs one coefficient per chart variable");
  }

  static VectorField zero(ChartPtr chart) {
    auto n = chart->dim();
    return VectorField(std::move(chart), ExprVector(n));
  }
  static VectorField coordinate(ChartPtr chart, std::size_t a) {
    ExprVector c(chart->dim());
    c.at(a) = RatExpr(1);
    return VectorField(std::move(chart), std::move(c));
  }

  const ChartPtr& chart() const { return chart_; }
  const ExprVector& coeffs() const { return coeffs_; }
  const RatExpr& operator[](std::size_t a) const { return coeffs_[a]; }
  std::size_t dim() const { return coeffs_.size(); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// X(f), the derivative of f along X.
  RatExpr apply(const RatExpr& f) const {
    RatExpr out;
    for (std::size_t a = 0; a < coeffs_.size(); ++a)
      if (!coeffs_[a].is_zero()) out += coeffs_[a] * chart_->derive(f, a);
    return out;
  }

  VectorField scaled(const RatExpr& c) const {
    VectorField r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r(common_chart(a.chart_, b.chart_), a.coeffs_);
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) { return a + b.scaled(RatExpr(-1)); }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.coeffs_ == b.coeffs_; }

 private:
  ChartPtr chart_;
  ExprVector coeffs_;
};

inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  ChartPtr chart = common_chart(X.chart(), Y.chart());
  VectorField Xc(chart, X.coeffs()), Yc(chart, Y.coeffs());
  ExprVector out(chart->dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Xc.apply(Y[i]) - Yc.apply(X[i]);
  return VectorField(chart, std::move(out));
}

/// g-valued 1-form: coeffs(i, a) is the A_i component against dx_a.
class GValuedForm1 {
 public:
  GValuedForm1() = default;
  GValuedForm1(ChartPtr chart, StructureConstants algebra, ExprMatrix coeffs)
      : chart_(std::move(chart)), algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != algebra_.dim() || coeffs_.cols() != chart_->dim())
      throw DimensionMismatch("1-form table must be (algebra dim) x (chart dim)");
  }

  const ChartPtr& chart() const { return chart_; }
  const StructureConstants& algebra() const { return algebra_; }
  const ExprMatrix& coeffs() const { return coeffs_; }
  const RatExpr& operator()(std::size_t i, std::size_t a) const { return coeffs_(i, a); }

  bool is_zero() const { return coeffs_.is_zero(); }
  GValuedForm1 scaled(const RatExpr& c) const { return {chart_, algebra_, coeffs_.scaled(c)}; }
  friend GValuedForm1 operator-(const GValuedForm1& a, const GValuedForm1& b) {
    return {common_chart(a.chart_, b.chart_), a.algebra_, a.coeffs_ - b.coeffs_};
  }
  friend bool operator==(const GValuedForm1& a, const GValuedForm1& b) { return a.coeffs_ == b.coeffs_; }

 private:
  ChartPtr chart_;
  StructureConstants algebra_;
  ExprMatrix coeffs_;
};

/// g-valued 2-form: comps[i](a, b) is the A_i component on dx_a ^ dx_b (antisymmetric).
class GValuedForm2 {
 public:
  GValuedForm2() = default;
  GValuedForm2(ChartPtr chart, StructureConstants algebra, std::vector<ExprMatrix> comps)
      : chart_(std::move(chart)), algebra_(std::move(algebra)), comps_(std::move(comps)) {
    if (comps_.size() != algebra_.dim()) throw DimensionMismatch("2-form needs one table per algebra component");
  }

  const ChartPtr& chart() const { return chart_; }
  const StructureConstants& algebra() const { return algebra_; }
  const std::vector<ExprMatrix>& comps() const { return comps_; }
  const RatExpr& operator()(std::size_t i, std::size_t a, std::size_t b) const { return comps_[i](a, b); }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  GValuedForm2 scaled(const RatExpr& c) const {
    GValuedForm2 r = *this;
    for (auto& m : r.comps_) m = m.scaled(c);
    return r;
  }
  friend GValuedForm2 operator+(const GValuedForm2& x, const GValuedForm2& y) {
    GValuedForm2 r = x;
    for (std::size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] = r.comps_[i] + y.comps_[i];
    return r;
  }
  friend bool operator==(const GValuedForm2& a, const GValuedForm2& b) { return a.comps_ == b.comps_; }

 private:
  ChartPtr chart_;
  StructureConstants algebra_;
  std::vector<ExprMatrix> comps_;
};

inline GValuedForm2 exterior_derivative(const GValuedForm1& w) {
  const auto& chart = w.chart();
  const std::size_t r = w.algebra().dim(), n = chart->dim();
  std::vector<ExprMatrix> comps(r, ExprMatrix(n, n));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        RatExpr v = chart->derive(w(i, b), a) - chart->derive(w(i, a), b);
        comps[i](a, b) = v;
        comps[i](b, a) = -v;
      }
  return {chart, w.algebra(), std::move(comps)};
}

/// The raw [w, w]; the Maurer-Cartan equation uses half of it.
inline GValuedForm2 bracket_wedge(const GValuedForm1& w) {
  const auto& L = w.algebra();
  const std::size_t r = L.dim(), n = w.chart()->dim();
  std::vector<ExprMatrix> comps(r, ExprMatrix(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
          RatExpr wedge = w(j, a) * w(k, b) - w(j, b) * w(k, a);
          if (wedge.is_zero()) continue;
          for (std::size_t i = 0; i < r; ++i)
            if (!L(j, k, i).is_zero()) comps[i](a, b) += L(j, k, i) * wedge;
        }
  for (auto& m : comps)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) m(b, a) = -m(a, b);
  return {w.chart(), L, std::move(comps)};
}

/// F: source --> target, given by one expression (on the source chart) per target variable.
class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(ChartPtr source, ChartPtr target, ExprVector components)
      : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (components_.size() != target_->dim()) throw DimensionMismatch("map needs one component per target variable");
  }

  static RationalMap identity(const ChartPtr& chart) {
    ExprVector c;
    for (std::size_t a = 0; a < chart->dim(); ++a) c.push_back(chart->var(a));
    return {chart, chart, std::move(c)};
  }

  const ChartPtr& source() const { return source_; }
  const ChartPtr& target() const { return target_; }
  const ExprVector& components() const { return components_; }

  std::map<std::string, RatExpr> substitution() const {
    std::map<std::string, RatExpr> s;
    for (std::size_t b = 0; b < components_.size(); ++b) s.emplace(target_->vars()[b], components_[b]);
    return s;
  }

  /// f o F for f on the target chart.
  RatExpr pull(const RatExpr& f) const {
    try {
      return f.substitute(substitution());
    } catch (const DivisionByZeroPolynomial&) {
      throw IndeterminatePullback("a denominator vanishes identically along the map", {{"expression", to_string(f)}});
    }
  }

 private:
  ChartPtr source_;
  ChartPtr target_;
  ExprVector components_;
};

/// G o F.
inline RationalMap compose(const RationalMap& G, const RationalMap& F) {
  if (!G.source()->compatible(*F.target())) throw ChartMismatch("maps are not composable");
  ExprVector c;
  for (const auto& g : G.components()) c.push_back(F.pull(g));
  return {F.source(), G.target(), std::move(c)};
}

inline GValuedForm1 pullback(const RationalMap& F, const GValuedForm1& w) {
  if (!F.target()->compatible(*w.chart())) throw ChartMismatch("form does not live on the target of the map");
  const auto& src = F.source();
  const std::size_t r = w.algebra().dim(), n = src->dim(), m = F.target()->dim();
  ExprMatrix jac(m, n);
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t a = 0; a < n; ++a) jac(b, a) = src->derive(F.components()[b], a);
  ExprMatrix pulled(r, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t b = 0; b < m; ++b) pulled(i, b) = F.pull(w(i, b));
  return {src, w.algebra(), pulled * jac};
}

}  // namespace parallax
