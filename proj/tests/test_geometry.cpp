#include <gtest/gtest.h>

#include "support.hpp"

using namespace parallax;
using parallax::testing::Gen;
using parallax::testing::num;
using parallax::testing::sym;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};

VectorField random_field(Gen& g, const ChartPtr& c, int deg = 2) {
  ExprVector v;
  for (std::size_t a = 0; a < c->dim(); ++a) v.push_back(g.poly_expr(c->vars(), deg));
  return {c, v};
}

StructureConstants affine() {
  StructureConstants L(2);
  L.set_bracket(0, 1, 0, num(1));
  return L;
}

Frame affine_frame(const ChartPtr& c) {
  return Frame::from_rows(c, {{num(1), num(0)}, {sym(c->vars()[0]), num(1)}});
}

}  // namespace

TEST(VectorFields, BracketMatchesComponentFormulaProperty) {
  Gen g(31);
  ChartPtr c = Chart::make(kXYZ);
  for (int n = 0; n < 100; ++n) {
    VectorField X = random_field(g, c), Y = random_field(g, c);
    VectorField B = lie_bracket(X, Y);
    for (std::size_t a = 0; a < 3; ++a) {
      RatExpr expected;
      for (std::size_t b = 0; b < 3; ++b) expected += X[b] * Y[a].partial(c->vars()[b]) - Y[b] * X[a].partial(c->vars()[b]);
      ASSERT_EQ(B[a], expected);
    }
  }
}

TEST(VectorFields, JacobiAndAntisymmetryProperty) {
  Gen g(32);
  ChartPtr c = Chart::make(kXY);
  for (int n = 0; n < 100; ++n) {
    VectorField X = random_field(g, c), Y = random_field(g, c), Z = random_field(g, c);
    ASSERT_TRUE((lie_bracket(X, Y) + lie_bracket(Y, X)).is_zero());
    VectorField j = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y));
    ASSERT_TRUE(j.is_zero());
  }
}

TEST(VectorFields, TowerFieldsAndChartMismatch) {
  ChartPtr c = Chart::make(kXY);
  ChartPtr t = extend_tower(c, "t", {{"x", RatExpr(0)}, {"y", sym("t")}});
  VectorField Y1(t, {sym("t"), num(0)}), Y2(t, {num(0), num(1)});
  EXPECT_EQ(lie_bracket(Y1, Y2), VectorField(t, {-sym("t"), num(0)}));
  ChartPtr other = Chart::make({"u", "v"});
  EXPECT_THROW(lie_bracket(Y1, VectorField::coordinate(other, 0)), ChartMismatch);
}

TEST(Forms, DoubleExteriorDerivativeVanishesProperty) {
  Gen g(33);
  ChartPtr c = Chart::make(kXYZ);
  for (int n = 0; n < 120; ++n) {
    RatExpr f = g.expr(kXYZ, 3), h = g.expr(kXYZ, 2);
    ExprMatrix df(2, 3);
    for (std::size_t a = 0; a < 3; ++a) {
      df(0, a) = f.partial(kXYZ[a]);
      df(1, a) = h.partial(kXYZ[a]);
    }
    GValuedForm1 w(c, StructureConstants(2), df);
    ASSERT_TRUE(exterior_derivative(w).is_zero());
  }
}

TEST(Forms, DoubleExteriorDerivativeVanishesThroughTower) {
  ChartPtr c = Chart::make(kXY);
  c = extend_tower(c, "E", {{"x", sym("E")}, {"y", num(0)}});
  RatExpr f = parse_expr("E*y^2 + x*E^2", *c);
  ExprMatrix df(1, 2);
  df(0, 0) = c->derive(f, "x");
  df(0, 1) = c->derive(f, "y");
  EXPECT_TRUE(exterior_derivative(GValuedForm1(c, StructureConstants(1), df)).is_zero());
}

TEST(Forms, ExteriorDerivativeComponents) {
  ChartPtr c = Chart::make(kXY);
  ExprMatrix w(1, 2);
  w(0, 0) = sym("y").pow(2);
  w(0, 1) = sym("x");
  GValuedForm2 d = exterior_derivative(GValuedForm1(c, StructureConstants(1), w));
  EXPECT_EQ(d(0, 0, 1), num(1) - num(2) * sym("y"));
  EXPECT_EQ(d(0, 1, 0), num(2) * sym("y") - num(1));
}

TEST(Forms, PullbackFunctorialityProperty) {
  Gen g(34);
  ChartPtr S = Chart::make({"u", "v"}), M = Chart::make({"x", "y"}), T = Chart::make({"p", "q"});
  for (int n = 0; n < 120; ++n) {
    RationalMap F(S, M, {g.poly_expr({"u", "v"}, 2), g.poly_expr({"u", "v"}, 2)});
    RationalMap G(M, T, {g.poly_expr({"x", "y"}, 2), g.poly_expr({"x", "y"}, 2)});
    ExprMatrix wc(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t b = 0; b < 2; ++b) wc(i, b) = g.poly_expr({"p", "q"}, 2);
    GValuedForm1 w(T, affine(), wc);
    ASSERT_EQ(pullback(compose(G, F), w), pullback(F, pullback(G, w)));
    ASSERT_EQ(pullback(RationalMap::identity(T), w), w);
  }
}

TEST(Forms, PullbackMatchesChainRule) {
  ChartPtr S = Chart::make({"u", "v"}), T = Chart::make({"x", "y"});
  RationalMap F(S, T, {sym("u") * sym("v"), sym("u") + sym("v").pow(2)});
  ExprMatrix wc(1, 2);
  wc(0, 0) = sym("y");
  wc(0, 1) = num(1);
  GValuedForm1 p = pullback(F, GValuedForm1(T, StructureConstants(1), wc));
  // y dx + dy with x = uv, y = u + v^2.
  RatExpr y = sym("u") + sym("v").pow(2);
  EXPECT_EQ(p(0, 0), y * sym("v") + num(1));
  EXPECT_EQ(p(0, 1), y * sym("u") + num(2) * sym("v"));
}

TEST(Forms, PullbackErrors) {
  ChartPtr S = Chart::make({"u", "v"}), T = Chart::make({"x", "y"});
  ExprMatrix wc(1, 2);
  wc(0, 0) = num(1) / sym("x");
  GValuedForm1 w(T, StructureConstants(1), wc);
  RationalMap constant(S, T, {num(0), sym("v")});
  EXPECT_THROW(pullback(constant, w), IndeterminatePullback);
  EXPECT_THROW(pullback(RationalMap::identity(S), w), ChartMismatch);
}

TEST(Parallelism, AffineFrame) {
  ChartPtr c = Chart::make(kXY);
  Frame F = affine_frame(c);
  StructureConstants L = infer_structure_constants(F);
  EXPECT_EQ(L(0, 1, 0), num(1));
  EXPECT_TRUE(L(0, 1, 1).is_zero());
  Coframe w = coframe(F, L);
  EXPECT_EQ(w.coeffs(), (ExprMatrix{{num(1), -sym("x")}, {num(0), num(1)}}));
  EXPECT_TRUE(maurer_cartan_residual(w).is_zero());
  EXPECT_EQ(frame_of(w).matrix(), F.matrix());
}

TEST(Parallelism, CoframeIsDualProperty) {
  Gen g(35);
  ChartPtr c = Chart::make(kXYZ);
  for (int n = 0; n < 100; ++n) {
    ExprMatrix X(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) X(i, j) = i == j ? num(1) : (j > i ? g.poly_expr(kXYZ, 2) : num(0));
    Frame F = Frame::from_matrix(c, X);
    Coframe w = coframe(F, StructureConstants(3));
    ASSERT_EQ(w.coeffs() * X.transpose(), ExprMatrix::identity(3));
  }
}

TEST(Parallelism, MaurerCartanHoldsForLieParallelismsProperty) {
  Gen g(36);
  ChartPtr c = Chart::make(kXYZ);
  for (int n = 0; n < 100; ++n) {
    RatExpr a = RatExpr(g.rational()), b = RatExpr(g.rational());
    Frame base = Frame::from_rows(c, {{num(1), a * sym("y"), b * sym("z")}, {num(0), num(1), num(0)}, {num(0), num(0), num(1)}});
    ExprMatrix P(3, 3);
    do {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) P(i, j) = RatExpr(g.rational(2, 1));
    } while (P.determinant().is_zero());
    Frame F = Frame::from_matrix(c, P * base.matrix());
    StructureConstants L = infer_structure_constants(F);
    ASSERT_TRUE(check_lie_algebra(L).ok);
    ASSERT_TRUE(maurer_cartan_residual(coframe(F, L)).is_zero());
  }
}

TEST(Parallelism, WrongConstantsLeaveAResidual) {
  ChartPtr c = Chart::make(kXY);
  StructureConstants wrong(2);
  wrong.set_bracket(0, 1, 0, num(-1));
  GValuedForm2 r = maurer_cartan_residual(coframe(affine_frame(c), wrong));
  EXPECT_FALSE(r.is_zero());
}

TEST(Parallelism, NonConstantStructureFunctions) {
  ChartPtr c = Chart::make(kXY);
  Frame F = Frame::from_rows(c, {{num(1), num(0)}, {sym("x").pow(2), num(1)}});
  try {
    infer_structure_constants(F);
    FAIL() << "expected NonConstantCoefficients";
  } catch (const NonConstantCoefficients& e) {
    EXPECT_EQ(e.witness().at("i"), "1");
    EXPECT_EQ(e.witness().at("j"), "2");
    EXPECT_EQ(e.witness().at("k"), "1");
    EXPECT_EQ(e.witness().at("value"), "2*x");
  }
  EXPECT_EQ(structure_functions(F)(0, 1, 0), num(2) * sym("x"));
}

TEST(Parallelism, SingularCoframe) {
  ChartPtr c = Chart::make(kXY);
  GValuedForm1 w(c, affine(), ExprMatrix{{num(1), sym("x")}, {num(2), num(2) * sym("x")}});
  EXPECT_THROW(frame_of(w), SingularFrame);
}

TEST(Parallelism, IsogenyPullback) {
  ChartPtr S = Chart::make({"u", "v"}), T = Chart::make(kXY);
  Coframe theta = coframe(affine_frame(T), affine());
  Coframe omega = coframe(affine_frame(S), affine());
  EXPECT_TRUE(verify_isogeny_pullback(RationalMap::identity(T), theta, theta).ok);
  RationalMap shift(S, T, {sym("u"), sym("v") + num(3)});
  EXPECT_TRUE(verify_isogeny_pullback(shift, theta, omega).ok);
  RationalMap stretch(S, T, {num(2) * sym("u"), sym("v")});
  IsogenyCheck bad = verify_isogeny_pullback(stretch, theta, omega);
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.residual.is_zero());
  EXPECT_THROW(verify_isogeny_pullback(shift, theta, theta), ChartMismatch);
}

TEST(Parallelism, ConjugatingMapOfCommutingParallelisms) {
  ChartPtr c = Chart::make(kXY);
  c = extend_tower(c, "t", {{"x", num(0)}, {"y", sym("t")}});
  Frame X = affine_frame(c);
  Frame Y = Frame::from_rows(c, {{-sym("t"), num(0)}, {num(0), num(-1)}});
  StructureConstants L = infer_structure_constants(X);
  ASSERT_EQ(infer_structure_constants(Y)(0, 1, 0), L(0, 1, 0));
  ConjugatingMap m = conjugating_map(coframe(X, L), coframe(Y, L));
  EXPECT_TRUE(m.automorphism);
  EXPECT_EQ(m.matrix, (ExprMatrix{{sym("t"), -sym("x")}, {num(0), num(1)}}));
  EXPECT_THROW(conjugating_map(coframe(X, L), coframe(X, L)), NonCommutingParallelisms);
}
