#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/geometry.hpp"
#include "parallax/liealg.hpp"

namespace parallax {

/// r vector fields on an r-dimensional chart.
class Frame {
 public:
  Frame() = default;
  Frame(ChartPtr chart, std::vector<VectorField> fields) : chart_(std::move(chart)), fields_(std::move(fields)) {
    if (fields_.size() != chart_->dim()) throw DimensionMismatch("a frame needs as many fields as chart variables");
    for (auto& X : fields_) {
      if (!X.chart()->compatible(*chart_)) throw ChartMismatch("frame field lives on another chart");
      X = VectorField(chart_, X.coeffs());
    }
  }

  static Frame from_rows(ChartPtr chart, const std::vector<ExprVector>& rows) {
    std::vector<VectorField> f;
    for (const auto& r : rows) f.emplace_back(chart, r);
    return {std::move(chart), std::move(f)};
  }

  static Frame coordinate(const ChartPtr& chart) {
    std::vector<VectorField> f;
    for (std::size_t a = 0; a < chart->dim(); ++a) f.push_back(VectorField::coordinate(chart, a));
    return {chart, std::move(f)};
  }

  static Frame from_matrix(const ChartPtr& chart, const ExprMatrix& m) {
    std::vector<ExprVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return from_rows(chart, rows);
  }

  const ChartPtr& chart() const { return chart_; }
  const std::vector<VectorField>& fields() const { return fields_; }
  const VectorField& operator[](std::size_t i) const { return fields_[i]; }
  std::size_t size() const { return fields_.size(); }

  /// Row i holds the coefficients of X_i.
  ExprMatrix matrix() const {
    const std::size_t n = fields_.size();
    ExprMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < n; ++a) m(i, a) = fields_[i][a];
    return m;
  }

  RatExpr determinant() const { return matrix().determinant(); }

  ExprMatrix inverse_matrix() const {
    try {
      return matrix().inverse();
    } catch (const SingularMatrix&) {
      throw SingularFrame("frame fields are linearly dependent");
    }
  }

  /// Coefficients f with Y = sum_i f_i X_i.
  ExprVector components(const VectorField& Y) const {
    ExprMatrix inv = inverse_matrix();
    ExprVector out(size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t a = 0; a < size(); ++a)
        if (!Y[a].is_zero()) out[i] += Y[a] * inv(a, i);
    return out;
  }

 private:
  ChartPtr chart_;
  std::vector<VectorField> fields_;
};

/// Structure functions c(i,j,k) with [X_i, X_j] = sum_k c(i,j,k) X_k; entries may
/// be arbitrary rational functions.
inline StructureConstants structure_functions(const Frame& F) {
  const std::size_t r = F.size();
  ExprMatrix inv = F.inverse_matrix();
  StructureConstants c(r, F.chart()->params());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      VectorField b = lie_bracket(F[i], F[j]);
      ExprVector coeffs(r);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t a = 0; a < r; ++a)
          if (!b[a].is_zero()) coeffs[k] += b[a] * inv(a, k);
      c.set_bracket(i, j, coeffs);
    }
  return c;
}

inline StructureConstants infer_structure_constants(const Frame& F) {
  StructureConstants c = structure_functions(F);
  const std::size_t r = F.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        if (!F.chart()->is_constant(c(i, j, k)))
          throw NonConstantCoefficients("bracket coefficient is not constant",
                                        {{"i", std::to_string(i + 1)},
                                         {"j", std::to_string(j + 1)},
                                         {"k", std::to_string(k + 1)},
                                         {"value", to_string(c(i, j, k))}});
  return c;
}

using Coframe = GValuedForm1;

/// The dual form: Omega = (X^T)^{-1}, so that omega(X_j) = A_j.
inline Coframe coframe(const Frame& F, const StructureConstants& L) {
  return {F.chart(), L, F.inverse_matrix().transpose()};
}

inline Frame frame_of(const Coframe& w) {
  ExprMatrix inv;
  try {
    inv = w.coeffs().inverse();
  } catch (const SingularMatrix&) {
    throw SingularFrame("coframe matrix is singular");
  }
  return Frame::from_matrix(w.chart(), inv.transpose());
}

/// d(omega) + 1/2 [omega, omega].
inline GValuedForm2 maurer_cartan_residual(const Coframe& w) {
  return exterior_derivative(w) + bracket_wedge(w).scaled(make_rational(1, 2));
}

struct IsogenyCheck {
  bool ok = false;
  GValuedForm1 residual;
};

/// Whether F*(theta) = omega; the residual is F*(theta) - omega.
inline IsogenyCheck verify_isogeny_pullback(const RationalMap& F, const Coframe& theta, const Coframe& omega) {
  if (!F.source()->compatible(*omega.chart())) throw ChartMismatch("omega does not live on the source of the map");
  GValuedForm1 res = pullback(F, theta) - omega;
  return {res.is_zero(), res};
}

struct ConjugatingMap {
  ExprMatrix matrix;
  bool automorphism = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// f = -Omega * Omega'^{-1} for a pair of commuting parallelisms.
inline ConjugatingMap conjugating_map(const Coframe& w, const Coframe& wp) {
  if (!w.chart()->compatible(*wp.chart())) throw ChartMismatch("coframes live on different charts");
  if (!(w.algebra() == wp.algebra())) throw DimensionMismatch("coframes have different structure constants");
  Frame X = frame_of(w), Xp = frame_of(wp);
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < Xp.size(); ++j)
      if (!lie_bracket(X[i], Xp[j]).is_zero())
        throw NonCommutingParallelisms("parallelisms do not commute",
                                       {{"i", std::to_string(i + 1)}, {"j", std::to_string(j + 1)}});
  ConjugatingMap out;
  ExprMatrix inv;
  try {
    inv = wp.coeffs().inverse();
  } catch (const SingularMatrix&) {
    throw SingularFrame("second coframe is singular");
  }
  out.matrix = -(w.coeffs() * inv);
  auto a = is_automorphism(w.algebra(), out.matrix);
  out.automorphism = a.ok;
  out.witness = a.witness;
  return out;
}

}  // namespace parallax
