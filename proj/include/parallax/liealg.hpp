#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/linalg.hpp"
#include "parallax/ratexpr.hpp"

namespace parallax {

using ExprVector = std::vector<RatExpr>;

/// Structure constants lambda(i,j,k) of [A_i, A_j] = sum_k lambda(i,j,k) A_k.
/// Indices are 0-based.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim, std::vector<std::string> params = {})
      : dim_(dim), lambda_(dim * dim * dim), params_(std::move(params)) {}

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& params() const { return params_; }

  const RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k) const { return lambda_[idx(i, j, k)]; }

  /// Raw entry; no antisymmetric completion.
  void set(std::size_t i, std::size_t j, std::size_t k, RatExpr v) { lambda_[idx(i, j, k)] = std::move(v); }

  /// Sets [A_i, A_j] and [A_j, A_i] together.
  void set_bracket(std::size_t i, std::size_t j, const ExprVector& coeffs) {
    if (coeffs.size() != dim_) throw DimensionMismatch("bracket coefficient vector has wrong length");
    for (std::size_t k = 0; k < dim_; ++k) {
      lambda_[idx(i, j, k)] = coeffs[k];
      lambda_[idx(j, i, k)] = -coeffs[k];
    }
  }
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const RatExpr& v) {
    lambda_[idx(i, j, k)] = v;
    lambda_[idx(j, i, k)] = -v;
  }

  ExprVector bracket_of_basis(std::size_t i, std::size_t j) const {
    return {lambda_.begin() + static_cast<std::ptrdiff_t>(idx(i, j, 0)),
            lambda_.begin() + static_cast<std::ptrdiff_t>(idx(i, j, 0) + dim_)};
  }

  /// Bracket of two coefficient vectors.
  ExprVector bracket(const ExprVector& u, const ExprVector& v) const {
    ExprVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (v[j].is_zero()) continue;
        RatExpr uv = u[i] * v[j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (!(*this)(i, j, k).is_zero()) out[k] += uv * (*this)(i, j, k);
      }
    }
    return out;
  }

  bool is_abelian() const {
    for (const auto& x : lambda_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.dim_ == b.dim_ && a.lambda_ == b.lambda_;
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw DimensionMismatch("structure constant index out of range");
    return (i * dim_ + j) * dim_ + k;
  }

  std::size_t dim_ = 0;
  std::vector<RatExpr> lambda_;
  std::vector<std::string> params_;
};

struct LieViolation {
  std::string kind;  // "antisymmetry" or "jacobi"
  std::vector<std::size_t> indices;
  RatExpr value;
};

struct LieAlgebraReport {
  bool ok = true;
  std::vector<LieViolation> violations;
};

inline LieAlgebraReport check_lie_algebra(const StructureConstants& L) {
  LieAlgebraReport rep;
  const std::size_t r = L.dim();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        RatExpr s = L(i, j, k) + L(j, i, k);
        if (!s.is_zero()) rep.violations.push_back({"antisymmetry", {i, j, k}, s});
      }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) {
          RatExpr s;
          for (std::size_t m = 0; m < r; ++m)
            s += L(j, k, m) * L(i, m, l) + L(k, i, m) * L(j, m, l) + L(i, j, m) * L(k, m, l);
          if (!s.is_zero()) rep.violations.push_back({"jacobi", {i, j, k, l}, s});
        }
  rep.ok = rep.violations.empty();
  return rep;
}

/// Basis of the center as coefficient vectors.
inline std::vector<ExprVector> center(const StructureConstants& L) {
  const std::size_t r = L.dim();
  ExprMatrix m(r * r, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < r; ++i) m(j * r + k, i) = L(i, j, k);
  return m.nullspace();
}

struct DerivedAlgebra {
  std::vector<ExprVector> basis;
  std::size_t abelianization_dim = 0;
};

inline DerivedAlgebra derived_subalgebra(const StructureConstants& L) {
  const std::size_t r = L.dim();
  ExprMatrix m(r * r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) m(i * r + j, k) = L(i, j, k);
  auto [red, pivots] = m.rref();
  DerivedAlgebra d;
  for (std::size_t p = 0; p < pivots.size(); ++p) d.basis.push_back(red.row(p));
  d.abelianization_dim = r - pivots.size();
  return d;
}

/// ad(A_i) with (ad A_i)(k, j) = lambda(i, j, k).
inline std::vector<ExprMatrix> adjoint_rep(const StructureConstants& L) {
  const std::size_t r = L.dim();
  std::vector<ExprMatrix> out;
  for (std::size_t i = 0; i < r; ++i) {
    ExprMatrix a(r, r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) a(k, j) = L(i, j, k);
    out.push_back(std::move(a));
  }
  return out;
}

struct AutomorphismResult {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// M acts on coefficient vectors; column i of M is the image of A_i.
inline AutomorphismResult is_automorphism(const StructureConstants& L, const ExprMatrix& M) {
  const std::size_t r = L.dim();
  if (M.rows() != r || M.cols() != r) throw DimensionMismatch("automorphism candidate has wrong size");
  if (M.determinant().is_zero()) throw SingularMatrix("automorphism candidate is singular");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      ExprVector lhs = M.apply(L.bracket_of_basis(i, j));
      ExprVector rhs = L.bracket(M.col(i), M.col(j));
      if (lhs != rhs) return {false, std::make_pair(i, j)};
    }
  return {};
}

/// t (abelian, dimension t_dim) acting on h by commuting derivations. Basis of
/// the result: T_1..T_t followed by H_1..H_s; [T_a, H_j] = sum_k action[a](k, j) H_k.
inline StructureConstants semidirect_sum(std::size_t t_dim, const StructureConstants& h,
                                         const std::vector<ExprMatrix>& action) {
  const std::size_t s = h.dim();
  if (action.size() != t_dim) throw DimensionMismatch("need one action matrix per generator of t");
  for (const auto& D : action)
    if (D.rows() != s || D.cols() != s) throw DimensionMismatch("action matrix has wrong size");
  for (std::size_t a = 0; a < t_dim; ++a) {
    const auto& D = action[a];
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) {
        ExprVector lhs = D.apply(h.bracket_of_basis(i, j));
        ExprVector rhs1 = h.bracket(D.col(i), ExprMatrix::identity(s).col(j));
        ExprVector rhs2 = h.bracket(ExprMatrix::identity(s).col(i), D.col(j));
        bool ok = true;
        for (std::size_t k = 0; k < s; ++k)
          if (!(lhs[k] == rhs1[k] + rhs2[k])) ok = false;
        if (!ok)
          throw NotADerivation("action matrix " + std::to_string(a + 1) + " is not a derivation",
                               {{"action", std::to_string(a + 1)},
                                {"i", std::to_string(i + 1)},
                                {"j", std::to_string(j + 1)}});
      }
  }
  for (std::size_t a = 0; a < t_dim; ++a)
    for (std::size_t b = a + 1; b < t_dim; ++b)
      if (!(action[a] * action[b] == action[b] * action[a]))
        throw NonCommutingAction("action matrices do not commute",
                                 {{"a", std::to_string(a + 1)}, {"b", std::to_string(b + 1)}});
  std::vector<std::string> params = h.params();
  StructureConstants out(t_dim + s, params);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) out.set(t_dim + i, t_dim + j, t_dim + k, h(i, j, k));
  for (std::size_t a = 0; a < t_dim; ++a)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) out.set_bracket(a, t_dim + j, t_dim + k, action[a](k, j));
  return out;
}

}  // namespace parallax
