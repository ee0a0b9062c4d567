#include <gtest/gtest.h>

#include "support.hpp"

using namespace parallax;
using parallax::testing::eval_poly;
using parallax::testing::Gen;
using parallax::testing::num;
using parallax::testing::sym;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

ChartPtr xyz_chart() { return Chart::make({"x", "y", "z"}, {"alpha"}); }

std::map<std::string, Rational> random_point(Gen& g) {
  return {{"x", g.rational()}, {"y", g.rational()}, {"z", g.rational()}};
}

}  // namespace

TEST(Parser, PrecedenceAndAssociativity) {
  ChartPtr c = xyz_chart();
  EXPECT_EQ(parse_expr("2 + 3*x^2", *c), num(2) + num(3) * sym("x").pow(2));
  EXPECT_EQ(parse_expr("-x^2", *c), -(sym("x").pow(2)));
  EXPECT_EQ(parse_expr("x/y/z", *c), sym("x") / (sym("y") * sym("z")));
  EXPECT_EQ(parse_expr("x - y - z", *c), sym("x") - sym("y") - sym("z"));
  EXPECT_EQ(parse_expr("(x + 1)^2", *c), sym("x").pow(2) + num(2) * sym("x") + num(1));
  EXPECT_EQ(parse_expr("x^-2", *c), num(1) / sym("x").pow(2));
  EXPECT_EQ(parse_expr("3/6", *c), num(1, 2));
  EXPECT_EQ(parse_expr("alpha*x", *c), sym("alpha") * sym("x"));
}

TEST(Parser, Errors) {
  ChartPtr c = xyz_chart();
  EXPECT_THROW(parse_expr("1//2", *c), SyntaxError);
  EXPECT_THROW(parse_expr("x +", *c), SyntaxError);
  EXPECT_THROW(parse_expr("(x", *c), SyntaxError);
  EXPECT_THROW(parse_expr("w + 1", *c), UnknownSymbol);
  EXPECT_THROW(parse_expr("1/(x - x)", *c), DivisionByZeroPolynomial);
  try {
    parse_expr("q*x", *c);
    FAIL() << "expected UnknownSymbol";
  } catch (const UnknownSymbol& e) {
    EXPECT_EQ(e.code(), "UnknownSymbol");
    EXPECT_EQ(e.witness().at("name"), "q");
  }
}

TEST(Parser, EvaluationMatchesDirectArithmetic) {
  Gen g(11);
  ChartPtr c = xyz_chart();
  RatExpr e = parse_expr("(x^2*y - 3/2*z)/(1 + x^2) - y^3", *c);
  for (int n = 0; n < 100; ++n) {
    Rational x = g.rational(), y = g.rational(), z = g.rational();
    Rational expected = (x * x * y - Rational(3, 2) * z) / (1 + x * x) - y * y * y;
    RatExpr v = e.substitute({{"x", RatExpr(x)}, {"y", RatExpr(y)}, {"z", RatExpr(z)}});
    ASSERT_TRUE(v.is_rational());
    EXPECT_EQ(v.rational_value(), expected);
  }
}

TEST(Parser, RoundTripProperty) {
  Gen g(12);
  std::vector<std::string> names{"x", "y", "z"};
  for (int n = 0; n < 200; ++n) {
    RatExpr e = g.expr(kXYZ, 3);
    RatExpr back = parse_expr(to_string(e), names);
    ASSERT_EQ(back, e) << to_string(e);
  }
}

TEST(Ring, AxiomsProperty) {
  Gen g(13);
  for (int n = 0; n < 150; ++n) {
    RatExpr a = g.expr(kXYZ), b = g.expr(kXYZ), c = g.expr(kXYZ);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    ASSERT_EQ(a + RatExpr(0), a);
    ASSERT_EQ(a * RatExpr(1), a);
    if (!a.is_zero()) {
      ASSERT_EQ(a / a, RatExpr(1));
    }
  }
}

TEST(Ring, EvaluationIsAHomomorphismProperty) {
  Gen g(14);
  int checked = 0;
  for (int n = 0; n < 150; ++n) {
    Poly p = g.poly(kXYZ, 3), q = g.poly(kXYZ, 3);
    auto at = random_point(g);
    ASSERT_EQ(eval_poly(p * q, at), eval_poly(p, at) * eval_poly(q, at));
    ASSERT_EQ(eval_poly(p + q, at), eval_poly(p, at) + eval_poly(q, at));
    Rational dq = eval_poly(q, at);
    if (q.is_zero() || sgn(dq) == 0) continue;
    RatExpr f = RatExpr::fraction(p, q);
    std::map<std::string, RatExpr> s;
    for (const auto& [k, v] : at) s.emplace(k, RatExpr(v));
    RatExpr v = f.substitute(s);
    ASSERT_EQ(v.rational_value(), eval_poly(p, at) / dq);
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(Ring, FractionsAreReduced) {
  Gen g(15);
  for (int n = 0; n < 100; ++n) {
    Poly a = g.nonzero_poly(kXYZ, 2), b = g.nonzero_poly(kXYZ, 2), h = g.nonzero_poly(kXYZ, 2);
    ASSERT_EQ(RatExpr::fraction(a * h, b * h), RatExpr::fraction(a, b));
    Poly d = gcd(a * h, b * h);
    ASSERT_TRUE((a * h).exact_divide(d).has_value());
    ASSERT_TRUE(d.exact_divide(h.monic()).has_value() || h.is_constant());
  }
}

TEST(Ring, GcdAcrossDifferentVariableSetsProperty) {
  Gen g(20);
  for (int n = 0; n < 100; ++n) {
    Poly h = g.nonzero_poly({"x"}, 2), a = g.nonzero_poly({"x", "y"}, 2), b = g.nonzero_poly({"x", "z"}, 2);
    Poly d = gcd(a * h, b * h);
    ASSERT_TRUE(d.exact_divide(h.monic()).has_value() || h.is_constant());
    ASSERT_TRUE((a * h).exact_divide(d).has_value());
    ASSERT_TRUE((b * h).exact_divide(d).has_value());
    ASSERT_EQ(gcd(a * h, b * h), gcd(b * h, a * h));
  }
  EXPECT_EQ(gcd(Poly::variable("x") * Poly::variable("y") + Poly::variable("y"), Poly::variable("x") + Poly(1)),
            Poly::variable("x") + Poly(1));
}

TEST(Derivation, LeibnizAndQuotientProperty) {
  Gen g(16);
  for (int n = 0; n < 150; ++n) {
    RatExpr a = g.expr(kXYZ), b = g.nonzero_expr(kXYZ);
    for (const auto& v : kXYZ) {
      ASSERT_EQ((a * b).partial(v), a.partial(v) * b + a * b.partial(v));
      ASSERT_EQ((a / b).partial(v), (a.partial(v) * b - a * b.partial(v)) / (b * b));
      ASSERT_EQ((a + b).partial(v), a.partial(v) + b.partial(v));
    }
    ASSERT_EQ(a.partial("x").partial("y"), a.partial("y").partial("x"));
  }
}

TEST(Derivation, PolynomialDerivativeMatchesTermwiseFormula) {
  Gen g(17);
  for (int n = 0; n < 100; ++n) {
    Poly p = g.poly(kXYZ, 4);
    Poly expected;
    for (const auto& [m, c] : p.terms()) {
      int e = m.degree_in("x");
      if (e == 0) continue;
      expected += Poly::monomial(m.without("x"), c * e) * Poly::variable("x", e - 1);
    }
    ASSERT_EQ(p.derivative("x"), expected);
  }
}

TEST(Tower, DerivationThroughTowerElements) {
  ChartPtr c = Chart::make({"x", "y"}, {"alpha"});
  c = extend_tower(c, "E", {{"x", sym("alpha") * sym("E")}, {"y", RatExpr(0)}});
  c = extend_tower(c, "L", {{"x", num(1) / sym("x")}, {"y", RatExpr(0)}});
  RatExpr f = parse_expr("E*L + x^2*E", *c);
  RatExpr expected = parse_expr("alpha*E*L + E/x + 2*x*E + alpha*x^2*E", *c);
  EXPECT_EQ(c->derive(f, "x"), expected);
  EXPECT_TRUE(c->derive(f, "y").is_zero());
  EXPECT_TRUE(c->is_constant(sym("alpha")));
  EXPECT_FALSE(c->is_constant(sym("E")));
}

TEST(Tower, DerivationLeibnizProperty) {
  Gen g(18);
  ChartPtr c = Chart::make({"x", "y"});
  c = extend_tower(c, "t", {{"x", RatExpr(0)}, {"y", sym("t")}});
  std::vector<std::string> names{"x", "y", "t"};
  for (int n = 0; n < 100; ++n) {
    RatExpr a = g.expr(names), b = g.expr(names);
    for (const char* v : {"x", "y"}) ASSERT_EQ(c->derive(a * b, v), c->derive(a, v) * b + a * c->derive(b, v));
  }
}

TEST(Tower, Errors) {
  ChartPtr c = Chart::make({"x", "y"});
  EXPECT_THROW(extend_tower(c, "x", {{"x", RatExpr(0)}}), NameClash);
  EXPECT_THROW(extend_tower(c, "t", {{"w", RatExpr(0)}}), UnknownSymbol);
  EXPECT_THROW(extend_tower(c, "t", {{"x", sym("q")}}), UnknownSymbol);
  EXPECT_THROW(extend_tower(c, "t", {{"x", sym("y")}, {"y", RatExpr(0)}}), NonIntegrable);
  ChartPtr partial = extend_tower(c, "t", {{"x", sym("t")}});
  EXPECT_THROW(partial->derive(sym("t"), "y"), TowerInsufficient);
  EXPECT_THROW(RatExpr(1) / RatExpr(0), DivisionByZeroPolynomial);
}

TEST(Rational, HelpersAgainstGmp) {
  EXPECT_EQ(make_rational(6, 4), Rational(3, 2));
  EXPECT_EQ(rational_pow(make_rational(2, 3), -2), Rational(9, 4));
  EXPECT_EQ(*exact_sqrt(Rational(9, 16)), Rational(3, 4));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  EXPECT_EQ(lcm(Integer(4), Integer(6)), Integer(12));
}

TEST(AlgNum, FieldOperationsProperty) {
  Gen g(19);
  for (int n = 0; n < 100; ++n) {
    AlgNum a = AlgNum(g.rational()) + AlgNum(g.rational()) * AlgNum::sqrt(2) + AlgNum(g.rational()) * AlgNum::sqrt(-3);
    AlgNum b = AlgNum(g.nonzero_rational()) + AlgNum(g.rational()) * AlgNum::sqrt(5);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a / b) * b, a);
    if (!a.is_zero()) {
      ASSERT_EQ(a * a.inverse(), AlgNum(1));
    }
  }
  EXPECT_EQ(AlgNum::sqrt(8) * AlgNum::sqrt(2), AlgNum(4));
  EXPECT_EQ(AlgNum::sqrt(-1) * AlgNum::sqrt(-1), AlgNum(-1));
  EXPECT_EQ(AlgNum::sqrt(make_rational(1, 2)).str(), "1/2*sqrt(2)");
}
