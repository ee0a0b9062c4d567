#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/geometry.hpp"
#include "parallax/liealg.hpp"
#include "parallax/parallelism.hpp"

namespace parallax {

/// Dense r^k array of expressions, indexed (i, j, ...) with 0-based indices.
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::size_t dim, std::size_t rank) : dim_(dim), rank_(rank), data_(ipow(dim, rank)) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }

  RatExpr& at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
  const RatExpr& at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }
  RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k) { return at({i, j, k}); }
  const RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k) const { return at({i, j, k}); }
  RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return at({i, j, k, l}); }
  const RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return at({i, j, k, l});
  }

  bool is_zero() const { return !first_nonzero(); }

  /// Multi-index and value of the first nonzero entry in lexicographic order.
  std::optional<std::pair<std::vector<std::size_t>, RatExpr>> first_nonzero() const {
    for (std::size_t p = 0; p < data_.size(); ++p)
      if (!data_[p].is_zero()) return std::make_pair(unflatten(p), data_[p]);
    return std::nullopt;
  }

  std::vector<std::pair<std::vector<std::size_t>, RatExpr>> nonzero_entries() const {
    std::vector<std::pair<std::vector<std::size_t>, RatExpr>> out;
    for (std::size_t p = 0; p < data_.size(); ++p)
      if (!data_[p].is_zero()) out.emplace_back(unflatten(p), data_[p]);
    return out;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.dim_ == b.dim_ && a.data_ == b.data_; }
  friend Tensor operator-(Tensor a, const Tensor& b) {
    for (std::size_t p = 0; p < a.data_.size(); ++p) a.data_[p] -= b.data_[p];
    return a;
  }
  Tensor operator-() const {
    Tensor t = *this;
    for (auto& x : t.data_) x = -x;
    return t;
  }

 private:
  static std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
  }
  std::size_t offset(std::initializer_list<std::size_t> idx) const {
    if (idx.size() != rank_) throw DimensionMismatch("tensor index has wrong rank");
    std::size_t p = 0;
    for (auto i : idx) {
      if (i >= dim_) throw DimensionMismatch("tensor index out of range");
      p = p * dim_ + i;
    }
    return p;
  }
  std::vector<std::size_t> unflatten(std::size_t p) const {
    std::vector<std::size_t> idx(rank_);
    for (std::size_t q = rank_; q-- > 0;) {
      idx[q] = p % dim_;
      p /= dim_;
    }
    return idx;
  }

  std::size_t dim_ = 0;
  std::size_t rank_ = 0;
  std::vector<RatExpr> data_;
};

inline Tensor to_tensor(const StructureConstants& c) {
  Tensor t(c.dim(), 3);
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j)
      for (std::size_t k = 0; k < c.dim(); ++k) t(i, j, k) = c(i, j, k);
  return t;
}

/// Linear connection given by nabla_{X_i} X_j = sum_k gamma(i,j,k) X_k in a frame.
class FrameConnection {
 public:
  FrameConnection() = default;
  FrameConnection(Frame frame, Tensor gamma) : frame_(std::move(frame)), gamma_(std::move(gamma)) {
    if (gamma_.dim() != frame_.size() || gamma_.rank() != 3) throw DimensionMismatch("Christoffel table has wrong size");
  }
  explicit FrameConnection(Frame frame) : frame_(std::move(frame)), gamma_(frame_.size(), 3) {}

  const Frame& frame() const { return frame_; }
  const Tensor& gamma() const { return gamma_; }
  const RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k) const { return gamma_(i, j, k); }
  std::size_t dim() const { return frame_.size(); }

  /// nabla_X Y for arbitrary vector fields, returned in coordinates.
  VectorField covariant_derivative(const VectorField& X, const VectorField& Y) const {
    ChartPtr chart = common_chart(common_chart(frame_.chart(), X.chart()), Y.chart());
    Frame F(chart, frame_.fields());
    ExprVector a = F.components(X);
    ExprVector f = F.components(Y);
    VectorField Xc(chart, X.coeffs());
    const std::size_t r = dim();
    ExprVector out(r);
    for (std::size_t k = 0; k < r; ++k) {
      RatExpr v = Xc.apply(f[k]);
      for (std::size_t i = 0; i < r; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < r; ++j)
          if (!f[j].is_zero() && !gamma_(i, j, k).is_zero()) v += a[i] * f[j] * gamma_(i, j, k);
      }
      out[k] = v;
    }
    VectorField result = VectorField::zero(chart);
    for (std::size_t k = 0; k < r; ++k)
      if (!out[k].is_zero()) result = result + F[k].scaled(out[k]);
    return result;
  }

  friend bool operator==(const FrameConnection& a, const FrameConnection& b) {
    return a.frame_.matrix() == b.frame_.matrix() && a.gamma_ == b.gamma_;
  }

 private:
  Frame frame_;
  Tensor gamma_;
};

/// The connection for which every frame field is parallel.
inline FrameConnection associated_connection(const Frame& F) {
  if (F.determinant().is_zero()) throw SingularFrame("frame fields are linearly dependent");
  return FrameConnection(F);
}

/// nabla^rec_X Y = nabla_Y X + [X, Y].
inline FrameConnection reciprocal(const FrameConnection& C) {
  StructureConstants c = structure_functions(C.frame());
  const std::size_t r = C.dim();
  Tensor g(r, 3);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) g(i, j, k) = C(j, i, k) + c(i, j, k);
  return {C.frame(), g};
}

/// Re-expresses C in the frame G.
inline FrameConnection change_frame(const FrameConnection& C, const Frame& G) {
  ChartPtr chart = common_chart(C.frame().chart(), G.chart());
  Frame Gc(chart, G.fields());
  if (Gc.determinant().is_zero()) throw SingularFrame("new frame fields are linearly dependent");
  const std::size_t r = C.dim();
  ExprMatrix P = Gc.matrix() * C.frame().inverse_matrix();  // G_a = sum_i P(a,i) X_i
  ExprMatrix Q = P.inverse();
  Tensor out(r, 3);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      ExprVector coef(r);
      for (std::size_t k = 0; k < r; ++k) {
        RatExpr v = Gc[a].apply(P(b, k));
        for (std::size_t i = 0; i < r; ++i) {
          if (P(a, i).is_zero()) continue;
          for (std::size_t j = 0; j < r; ++j)
            if (!P(b, j).is_zero() && !C(i, j, k).is_zero()) v += P(a, i) * P(b, j) * C(i, j, k);
        }
        coef[k] = v;
      }
      for (std::size_t c = 0; c < r; ++c) {
        RatExpr v;
        for (std::size_t k = 0; k < r; ++k)
          if (!coef[k].is_zero()) v += coef[k] * Q(k, c);
        out(a, b, c) = v;
      }
    }
  return {Gc, out};
}

/// T(i,j,k) = gamma(i,j,k) - gamma(j,i,k) - c(i,j,k).
inline Tensor torsion(const FrameConnection& C) {
  StructureConstants c = structure_functions(C.frame());
  const std::size_t r = C.dim();
  Tensor t(r, 3);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) t(i, j, k) = C(i, j, k) - C(j, i, k) - c(i, j, k);
  return t;
}

/// R(i,j,k,l): component on X_l of R(X_i, X_j) X_k.
inline Tensor curvature(const FrameConnection& C) {
  StructureConstants c = structure_functions(C.frame());
  const std::size_t r = C.dim();
  const auto& X = C.frame();
  Tensor R(r, 4);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) {
          RatExpr v = X[i].apply(C(j, k, l)) - X[j].apply(C(i, k, l));
          for (std::size_t m = 0; m < r; ++m) {
            v += C(j, k, m) * C(i, m, l) - C(i, k, m) * C(j, m, l);
            if (!c(i, j, m).is_zero()) v -= c(i, j, m) * C(m, k, l);
          }
          R(i, j, k, l) = v;
          R(j, i, k, l) = -v;
        }
  return R;
}

/// (nabla T)(i,j,k,l): component on X_l of (nabla_{X_i} T)(X_j, X_k).
inline Tensor nabla_torsion(const FrameConnection& C) {
  Tensor T = torsion(C);
  const std::size_t r = C.dim();
  const auto& X = C.frame();
  Tensor N(r, 4);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) {
          RatExpr v = X[i].apply(T(j, k, l));
          for (std::size_t m = 0; m < r; ++m)
            v += T(j, k, m) * C(i, m, l) - C(i, j, m) * T(m, k, l) - C(i, k, m) * T(j, m, l);
          N(i, j, k, l) = v;
        }
  return N;
}

struct TensorWitness {
  std::vector<std::size_t> index;
  RatExpr value;
};

inline std::optional<TensorWitness> witness_of(const Tensor& t) {
  auto w = t.first_nonzero();
  if (!w) return std::nullopt;
  return TensorWitness{w->first, w->second};
}

/// Flatness, covariantly constant torsion and flatness of the reciprocal, with
/// the two characterizations of a Lie connection built from them.
struct LieConnectionReport {
  bool flat = false;
  bool constant_torsion = false;
  bool reciprocal_flat = false;
  bool flat_and_constant_torsion = false;
  bool both_flat = false;
  bool equivalence_holds = false;
  std::optional<TensorWitness> curvature_witness;
  std::optional<TensorWitness> nabla_torsion_witness;
  std::optional<TensorWitness> reciprocal_curvature_witness;

  bool is_lie_connection() const { return flat_and_constant_torsion && both_flat; }
};

inline LieConnectionReport lie_connection_report(const FrameConnection& C) {
  LieConnectionReport rep;
  rep.curvature_witness = witness_of(curvature(C));
  rep.nabla_torsion_witness = witness_of(nabla_torsion(C));
  rep.reciprocal_curvature_witness = witness_of(curvature(reciprocal(C)));
  rep.flat = !rep.curvature_witness;
  rep.constant_torsion = !rep.nabla_torsion_witness;
  rep.reciprocal_flat = !rep.reciprocal_curvature_witness;
  rep.flat_and_constant_torsion = rep.flat && rep.constant_torsion;
  rep.both_flat = rep.flat && rep.reciprocal_flat;
  rep.equivalence_holds = rep.flat_and_constant_torsion == rep.both_flat;
  return rep;
}

/// Connection on the trivial bundle M x g with nabla_{X_i} A_j = [A_i, A_j].
struct AdjointConnection {
  StructureConstants algebra;
  Tensor gamma;

  /// nabla_{X_i} of the constant section v.
  ExprVector derivative_of_constant(std::size_t i, const ExprVector& v) const {
    const std::size_t r = algebra.dim();
    ExprVector out(r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        if (!v[j].is_zero()) out[k] += v[j] * gamma(i, j, k);
    return out;
  }
};

inline AdjointConnection adjoint_connection(const StructureConstants& L) { return {L, to_tensor(L)}; }

struct HorizontalCheck {
  bool ok = false;
  /// residual[i] = frame components of nabla_{X_i} Y.
  std::vector<ExprVector> residual;
};

inline HorizontalCheck verify_horizontal(const FrameConnection& C, const VectorField& Y) {
  ChartPtr chart = common_chart(C.frame().chart(), Y.chart());
  Frame F(chart, C.frame().fields());
  ExprVector f = F.components(Y);
  const std::size_t r = C.dim();
  HorizontalCheck out;
  out.ok = true;
  for (std::size_t i = 0; i < r; ++i) {
    ExprVector res(r);
    for (std::size_t k = 0; k < r; ++k) {
      RatExpr v = F[i].apply(f[k]);
      for (std::size_t j = 0; j < r; ++j)
        if (!f[j].is_zero() && !C(i, j, k).is_zero()) v += f[j] * C(i, j, k);
      res[k] = v;
      if (!v.is_zero()) out.ok = false;
    }
    out.residual.push_back(std::move(res));
  }
  return out;
}

struct BracketCheck {
  bool ok = true;
  /// Pairs (i, j) where [Y_i, Y_j] differs from -sum_k lambda(i,j,k) Y_k.
  std::vector<std::pair<std::size_t, std::size_t>> failures;
};

/// Checks Y_i(p) = X_i(p), then [Y_i, Y_j] = -sum_k lambda(i,j,k) Y_k identically.
/// `point` gives chart-variable values, `tower_values` the values of tower elements at p.
inline BracketCheck opposite_initial_brackets(const Frame& F, const std::vector<VectorField>& Ys,
                                              const std::map<std::string, RatExpr>& point,
                                              const std::map<std::string, RatExpr>& tower_values) {
  const std::size_t r = F.size();
  if (Ys.size() != r) throw DimensionMismatch("need one field per frame direction");
  StructureConstants L = infer_structure_constants(F);
  std::map<std::string, RatExpr> at = point;
  at.insert(tower_values.begin(), tower_values.end());
  for (const auto& v : F.chart()->vars())
    if (!at.count(v)) throw InitialConditionMismatch("point is missing coordinate '" + v + "'", {{"variable", v}});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t a = 0; a < F.chart()->dim(); ++a) {
      RatExpr y = Ys[i][a].substitute(at);
      RatExpr x = F[i][a].substitute(at);
      for (const auto& s : y.symbols())
        if (Ys[i].chart()->is_tower(s))
          throw InitialConditionMismatch("no value supplied for tower element '" + s + "'", {{"element", s}});
      if (!(y == x))
        throw InitialConditionMismatch("field " + std::to_string(i + 1) + " differs from the frame at the point",
                                       {{"i", std::to_string(i + 1)},
                                        {"component", std::to_string(a + 1)},
                                        {"Y", to_string(y)},
                                        {"X", to_string(x)}});
    }
  BracketCheck out;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      VectorField lhs = lie_bracket(Ys[i], Ys[j]);
      VectorField rhs = VectorField::zero(lhs.chart());
      for (std::size_t k = 0; k < r; ++k)
        if (!L(i, j, k).is_zero()) rhs = rhs - Ys[k].scaled(L(i, j, k));
      if (!(lhs == rhs)) {
        out.ok = false;
        out.failures.emplace_back(i, j);
      }
    }
  return out;
}

}  // namespace parallax
