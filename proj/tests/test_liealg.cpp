#include <gtest/gtest.h>

#include "support.hpp"

using namespace parallax;
using parallax::testing::Gen;
using parallax::testing::num;
using parallax::testing::sym;

namespace {

StructureConstants affine() {
  StructureConstants L(2);
  L.set_bracket(0, 1, 0, num(1));
  return L;
}

/// [E, F] = H, [H, E] = 2E, [H, F] = -2F in the basis (E, H, F).
StructureConstants sl2() {
  StructureConstants L(3);
  L.set_bracket(0, 2, 1, num(1));
  L.set_bracket(1, 0, 0, num(2));
  L.set_bracket(1, 2, 2, num(-2));
  return L;
}

StructureConstants heisenberg() {
  StructureConstants L(3);
  L.set_bracket(0, 1, 2, num(1));
  return L;
}

/// Structure constants in the basis B_i = sum_a M(a, i) A_a.
StructureConstants change_basis(const StructureConstants& L, const ExprMatrix& M) {
  const std::size_t r = L.dim();
  ExprMatrix inv = M.inverse();
  StructureConstants out(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      ExprVector b = L.bracket(M.col(i), M.col(j));
      out.set_bracket(i, j, inv.apply(b));
    }
  return out;
}

ExprMatrix random_invertible(Gen& g, std::size_t r) {
  for (;;) {
    ExprMatrix M(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) M(i, j) = RatExpr(g.rational(3, 2));
    if (!M.determinant().is_zero()) return M;
  }
}

/// Brute-force center: coefficient vectors v with [v, A_j] = 0, tested on a candidate.
bool is_central(const StructureConstants& L, const ExprVector& v) {
  for (std::size_t j = 0; j < L.dim(); ++j) {
    ExprVector e(L.dim());
    e[j] = RatExpr(1);
    for (const auto& c : L.bracket(v, e))
      if (!c.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(LieAlgebra, KnownAlgebrasSatisfyJacobi) {
  EXPECT_TRUE(check_lie_algebra(affine()).ok);
  EXPECT_TRUE(check_lie_algebra(sl2()).ok);
  EXPECT_TRUE(check_lie_algebra(heisenberg()).ok);
}

TEST(LieAlgebra, DetectsBrokenJacobiAndAntisymmetry) {
  StructureConstants L(3);
  L.set_bracket(0, 1, 0, num(1));
  L.set_bracket(1, 2, 1, num(1));
  L.set_bracket(0, 2, 0, num(1));
  LieAlgebraReport rep = check_lie_algebra(L);
  EXPECT_FALSE(rep.ok);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_EQ(rep.violations.front().kind, "jacobi");

  StructureConstants bad(2);
  bad.set(0, 1, 0, num(1));
  rep = check_lie_algebra(bad);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.violations.front().kind, "antisymmetry");
}

TEST(LieAlgebra, JacobiInvariantUnderBasisChangeProperty) {
  Gen g(21);
  for (int n = 0; n < 120; ++n) {
    const StructureConstants base = n % 3 == 0 ? sl2() : n % 3 == 1 ? heisenberg() : affine();
    StructureConstants L = change_basis(base, random_invertible(g, base.dim()));
    ASSERT_TRUE(check_lie_algebra(L).ok);
    ASSERT_EQ(derived_subalgebra(L).basis.size(), derived_subalgebra(base).basis.size());
    ASSERT_EQ(center(L).size(), center(base).size());
  }
}

TEST(LieAlgebra, CenterProperty) {
  Gen g(22);
  EXPECT_TRUE(center(sl2()).empty());
  auto z = center(heisenberg());
  ASSERT_EQ(z.size(), 1u);
  EXPECT_TRUE(z[0][0].is_zero());
  EXPECT_TRUE(z[0][1].is_zero());
  for (int n = 0; n < 120; ++n) {
    StructureConstants L = change_basis(heisenberg(), random_invertible(g, 3));
    for (const auto& v : center(L)) ASSERT_TRUE(is_central(L, v));
    ExprVector random{RatExpr(g.rational()), RatExpr(g.rational()), RatExpr(g.rational())};
    if (is_central(L, random)) {
      ExprMatrix M(3, 2);
      for (std::size_t a = 0; a < 3; ++a) {
        M(a, 0) = center(L)[0][a];
        M(a, 1) = random[a];
      }
      ASSERT_EQ(M.rref().second.size(), 1u);
    }
  }
}

TEST(LieAlgebra, DerivedSubalgebra) {
  EXPECT_EQ(derived_subalgebra(sl2()).basis.size(), 3u);
  EXPECT_EQ(derived_subalgebra(heisenberg()).basis.size(), 1u);
  EXPECT_EQ(derived_subalgebra(heisenberg()).abelianization_dim, 2u);
  EXPECT_EQ(derived_subalgebra(affine()).basis.size(), 1u);
}

TEST(LieAlgebra, AdjointRepresentationIsAHomomorphism) {
  StructureConstants L = sl2();
  auto ad = adjoint_rep(L);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      ExprMatrix lhs = ad[i] * ad[j] - ad[j] * ad[i];
      ExprMatrix rhs(3, 3);
      for (std::size_t k = 0; k < 3; ++k)
        if (!L(i, j, k).is_zero()) rhs = rhs + ad[k].scaled(L(i, j, k));
      EXPECT_EQ(lhs, rhs);
    }
}

TEST(LieAlgebra, AutomorphismsOfTheAffineAlgebraProperty) {
  Gen g(23);
  for (int n = 0; n < 100; ++n) {
    Rational a = g.nonzero_rational(), b = g.rational();
    ExprMatrix M{{RatExpr(a), RatExpr(b)}, {RatExpr(0), RatExpr(1)}};
    ASSERT_TRUE(is_automorphism(affine(), M).ok);
    Rational c = g.nonzero_rational();
    if (c == 1) continue;
    ExprMatrix N{{RatExpr(1), RatExpr(0)}, {RatExpr(0), RatExpr(c)}};
    AutomorphismResult r = is_automorphism(affine(), N);
    ASSERT_FALSE(r.ok);
    ASSERT_TRUE(r.witness.has_value());
  }
  EXPECT_THROW(is_automorphism(affine(), ExprMatrix(2, 2)), SingularMatrix);
  EXPECT_THROW(is_automorphism(affine(), ExprMatrix(3, 3)), DimensionMismatch);
}

TEST(LieAlgebra, SemidirectSumProperty) {
  Gen g(24);
  StructureConstants h(3);
  for (int n = 0; n < 120; ++n) {
    std::size_t t = static_cast<std::size_t>(g.integer(1, 2));
    std::vector<ExprMatrix> action;
    for (std::size_t a = 0; a < t; ++a) {
      ExprMatrix D(3, 3);
      for (std::size_t i = 0; i < 3; ++i) D(i, i) = RatExpr(g.rational());
      action.push_back(D);
    }
    StructureConstants L = semidirect_sum(t, h, action);
    ASSERT_EQ(L.dim(), t + 3);
    ASSERT_TRUE(check_lie_algebra(L).ok);
    for (std::size_t a = 0; a < t; ++a)
      for (std::size_t j = 0; j < 3; ++j) ASSERT_EQ(L(a, t + j, t + j), action[a](j, j));
  }
}

TEST(LieAlgebra, SemidirectSumOfHeisenbergByItsGrading) {
  ExprMatrix D{{num(1), num(0), num(0)}, {num(0), num(2), num(0)}, {num(0), num(0), num(3)}};
  StructureConstants L = semidirect_sum(1, heisenberg(), {D});
  EXPECT_TRUE(check_lie_algebra(L).ok);
  EXPECT_TRUE(center(L).empty());
}

TEST(LieAlgebra, SemidirectSumErrors) {
  EXPECT_THROW(semidirect_sum(1, heisenberg(), {ExprMatrix::identity(3)}), NotADerivation);
  ExprMatrix upper{{num(0), num(1)}, {num(0), num(0)}};
  EXPECT_NO_THROW(semidirect_sum(1, affine(), {upper}));
  ExprMatrix lower{{num(0), num(0)}, {num(1), num(0)}};
  try {
    semidirect_sum(1, affine(), {lower});
    FAIL() << "expected NotADerivation";
  } catch (const NotADerivation& e) {
    EXPECT_EQ(e.witness().at("i"), "1");
    EXPECT_EQ(e.witness().at("j"), "2");
  }
  ExprMatrix d1{{num(1), num(0)}, {num(0), num(2)}};
  ExprMatrix d2{{num(0), num(1)}, {num(0), num(0)}};
  EXPECT_THROW(semidirect_sum(2, StructureConstants(2), {d1, d2}), NonCommutingAction);
  EXPECT_THROW(semidirect_sum(2, StructureConstants(2), {d1}), DimensionMismatch);
}

TEST(LieAlgebra, SymbolicParameters) {
  StructureConstants L(3, {"alpha", "beta"});
  L.set_bracket(0, 1, 1, sym("alpha"));
  L.set_bracket(0, 2, 2, sym("beta"));
  EXPECT_TRUE(check_lie_algebra(L).ok);
  EXPECT_EQ(derived_subalgebra(L).basis.size(), 2u);
}
