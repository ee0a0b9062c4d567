#include <gtest/gtest.h>

#include "support.hpp"

using namespace parallax;
using parallax::testing::Gen;
using parallax::testing::num;
using parallax::testing::sym;

namespace {

const std::vector<std::string> kZ{"z"};

RatExpr Z(const std::string& s) { return parse_expr(s, kZ); }

/// u' + u^2 = r for a rational Riccati solution.
bool riccati_holds(const std::string& u, const RatExpr& r) {
  RatExpr U = Z(u);
  return U.partial("z") + U * U == r;
}

/// M(z, w) monic in w with D(M) = 0 modulo M, where D z = 1 and D w = r - w^2.
bool minimal_polynomial_holds(const std::vector<std::string>& coeffs, const RatExpr& r) {
  std::vector<RatExpr> c;
  for (const auto& s : coeffs) c.push_back(Z(s));
  const std::size_t n = c.size() - 1;
  if (!(c[n] == RatExpr(1))) return false;
  std::vector<RatExpr> d(n + 2);
  for (std::size_t i = 0; i <= n; ++i) {
    d[i] += c[i].partial("z");
    if (i > 0) {
      d[i - 1] += RatExpr(static_cast<long>(i)) * c[i] * r;
      d[i + 1] -= RatExpr(static_cast<long>(i)) * c[i];
    }
  }
  for (std::size_t k = n + 1; k >= n; --k) {
    const RatExpr t = d[k];
    for (std::size_t j = 0; j <= n; ++j) d[j + k - n] -= t * c[j];
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!d[j].is_zero()) return false;
  return true;
}

/// Checks every certificate string that is free of algebraic numbers; returns the count checked.
int verify_certificate(const KovacicCertificate& cert, const RatExpr& r) {
  int checked = 0;
  for (const auto& u : cert.riccati) {
    if (u.find("sqrt") != std::string::npos) continue;
    EXPECT_TRUE(riccati_holds(u, r)) << u;
    ++checked;
  }
  if (!cert.minimal_polynomial.empty()) {
    EXPECT_TRUE(minimal_polynomial_holds(cert.minimal_polynomial, r));
    ++checked;
  }
  return checked;
}

GaloisClass sl2(GaloisTag t, long order = 0) { return make_class(GroupLevel::SL2, t, order); }
GaloisClass psl2(GaloisTag t, long order = 0) { return make_class(GroupLevel::PSL2, t, order); }

HGParams lmn(const std::string& l, const std::string& m, const std::string& n) {
  return HGParams::from_lmn(Z(l), Z(m), Z(n));
}

}  // namespace

TEST(Kovacic, ReducibleCases) {
  struct Case {
    std::string r;
    GaloisClass expected;
  };
  const std::vector<Case> cases{
      {"0", sl2(GaloisTag::Trivial)},
      {"2/z^2", sl2(GaloisTag::Trivial)},
      {"-3/(16*z^2)", sl2(GaloisTag::FiniteCyclic, 4)},
      {"1", sl2(GaloisTag::DiagonalTorus)},
      {"1 + 2/z^2", sl2(GaloisTag::DiagonalTorus)},
      {"3/(16*z^2)", sl2(GaloisTag::DiagonalTorus)},
      {"z^2 + 1", sl2(GaloisTag::Borel)},
  };
  for (const auto& c : cases) {
    KovacicResult k = kovacic(Z(c.r));
    EXPECT_EQ(k.sl2, c.expected) << c.r << " gave " << k.sl2.str();
    ASSERT_TRUE(k.certificate.has_value()) << c.r;
    EXPECT_EQ(k.certificate->kovacic_case, 1);
    EXPECT_TRUE(k.certificate->verified);
    EXPECT_FALSE(k.certificate->riccati.empty());
  }
}

TEST(Kovacic, RiccatiCertificatesAreIndependentlyValid) {
  int checked = 0;
  for (const char* s : {"0", "2/z^2", "-3/(16*z^2)", "1", "1 + 2/z^2", "z^2 + 1"}) {
    KovacicResult k = kovacic(Z(s));
    checked += verify_certificate(*k.certificate, Z(s));
  }
  EXPECT_GE(checked, 10);
  EXPECT_FALSE(riccati_holds("z", Z("z^2 + 1")) && riccati_holds("z", Z("z^2")));
}

TEST(Kovacic, DihedralCase) {
  RatExpr r = Z("-3/(16*z^2) + 1/z");
  KovacicResult k = kovacic(r);
  EXPECT_EQ(k.sl2.tag, GaloisTag::DihedralInfinite);
  ASSERT_TRUE(k.certificate.has_value());
  EXPECT_EQ(k.certificate->kovacic_case, 2);
  EXPECT_EQ(k.certificate->degree, 2);
  EXPECT_EQ(verify_certificate(*k.certificate, r), 1);
  EXPECT_FALSE(minimal_polynomial_holds(k.certificate->minimal_polynomial, r + RatExpr(1)));
}

TEST(Kovacic, NonLiouvillian) {
  for (const char* s : {"z", "z^3 - 1"}) {
    KovacicResult k = kovacic(Z(s));
    EXPECT_EQ(k.sl2.tag, GaloisTag::Full) << s;
    EXPECT_FALSE(k.certificate.has_value());
  }
  EXPECT_THROW(kovacic(Z("z") * sym("q")), UnsupportedInput);
}

TEST(Kovacic, PrimitiveFiniteCasesFromNormalForms) {
  const std::vector<std::pair<HGParams, GaloisTag>> cases{
      {lmn("1/2", "1/3", "1/3"), GaloisTag::Tetrahedral},
      {lmn("1/2", "1/3", "1/4"), GaloisTag::Octahedral},
      {lmn("1/2", "1/3", "1/5"), GaloisTag::Icosahedral},
  };
  for (const auto& [p, tag] : cases) {
    RatExpr r = -hypergeometric_normal_form(p).nu;
    KovacicResult k = kovacic(r);
    EXPECT_EQ(k.sl2.tag, tag);
    ASSERT_TRUE(k.certificate.has_value());
    EXPECT_EQ(k.certificate->kovacic_case, 3);
    EXPECT_EQ(verify_certificate(*k.certificate, r), 1);
  }
}

TEST(SymmetricSquare, FormalDerivationOracle) {
  // D y_i = p_i, D p_i = r y_i, D r = r_1, D r_k = r_{k+1}.
  std::map<std::string, RatExpr> image{{"y1", sym("p1")}, {"p1", sym("r") * sym("y1")},
                                       {"y2", sym("p2")}, {"p2", sym("r") * sym("y2")},
                                       {"r", sym("r_1")}, {"r_1", sym("r_2")},
                                       {"r_2", sym("r_3")}};
  auto D = [&](const RatExpr& e) {
    RatExpr out;
    for (const auto& [s, v] : image) out += e.partial(s) * v;
    return out;
  };
  LinearODE S = symmetric_square(second_order(sym("r")));
  for (const RatExpr& a : {sym("y1") * sym("y1"), sym("y1") * sym("y2"), sym("y2") * sym("y2")}) {
    RatExpr a1 = D(a), a2 = D(a1), a3 = D(a2);
    EXPECT_TRUE((a3 + S.coeffs[2] * a2 + S.coeffs[1] * a1 + S.coeffs[0] * a).is_zero());
  }
  EXPECT_EQ(S.coeffs[1], num(-4) * sym("r"));
  EXPECT_EQ(S.coeffs[0], num(-2) * sym("r_1"));
  EXPECT_THROW(symmetric_square(LinearODE{"z", {sym("r"), num(1)}}), UnsupportedInput);
  EXPECT_THROW(symmetric_square(lin_equation(sym("nu"))), DimensionMismatch);
}

TEST(SymmetricSquare, SymmetryEquationIsSquareOfHalfPotential) {
  EXPECT_EQ(symmetric_square(second_order(-sym("nu") / num(2))), lin_equation(sym("nu")));
  EXPECT_FALSE(symmetric_square(second_order(sym("nu"))) == lin_equation(sym("nu")));
  Gen g(61);
  for (int n = 0; n < 20; ++n) {
    RatExpr nu = g.expr(kZ, 2);
    ASSERT_EQ(symmetric_square(second_order(-nu / num(2))), derive_symmetry_ode(nu)) << to_string(nu);
  }
}

TEST(SymmetricSquare, MatrixAction) {
  using QM = Matrix<Rational>;
  QM minus{{Rational(-1), Rational(0)}, {Rational(0), Rational(-1)}};
  EXPECT_EQ(sym2_matrix(minus), QM::identity(3));
  Rational u(3, 2);
  QM d{{u, Rational(0)}, {Rational(0), 1 / u}};
  EXPECT_EQ(sym2_matrix(d), (QM{{u * u, 0, 0}, {0, 1, 0}, {0, 0, 1 / (u * u)}}));
  EXPECT_THROW(sym2_matrix(QM(2, 2)), SingularMatrix);
  EXPECT_THROW(sym2_matrix(QM::identity(3)), DimensionMismatch);
}

TEST(SymmetricSquare, MatrixActionIsAHomomorphismProperty) {
  Gen g(62);
  using QM = Matrix<Rational>;
  auto random = [&] {
    for (;;) {
      QM M{{g.rational(), g.rational()}, {g.rational(), g.rational()}};
      if (sgn(M.determinant()) != 0) return M;
    }
  };
  for (int n = 0; n < 100; ++n) {
    QM A = random(), B = random();
    ASSERT_EQ(sym2_matrix(A * B), sym2_matrix(A) * sym2_matrix(B));
    ASSERT_EQ(sym2_matrix(A).determinant(), A.determinant() * A.determinant() * A.determinant());
    ASSERT_EQ(sym2_matrix(A.scaled(Rational(-1))), sym2_matrix(A));
  }
}

TEST(Projection, SL2ToPSL2) {
  EXPECT_EQ(psl2_projection(sl2(GaloisTag::FiniteCyclic, 4)), psl2(GaloisTag::FiniteCyclic, 2));
  EXPECT_EQ(psl2_projection(sl2(GaloisTag::FiniteCyclic, 2)), psl2(GaloisTag::Trivial));
  EXPECT_EQ(psl2_projection(sl2(GaloisTag::FiniteCyclic, 3)), psl2(GaloisTag::FiniteCyclic, 3));
  EXPECT_EQ(psl2_projection(sl2(GaloisTag::DihedralFinite, 8)), psl2(GaloisTag::DihedralFinite, 4));
  EXPECT_EQ(psl2_projection(sl2(GaloisTag::TriangularFinite, 2)), psl2(GaloisTag::Unipotent));
  for (GaloisTag t : {GaloisTag::Trivial, GaloisTag::Unipotent, GaloisTag::Borel, GaloisTag::DiagonalTorus,
                      GaloisTag::DihedralInfinite, GaloisTag::Tetrahedral, GaloisTag::Octahedral,
                      GaloisTag::Icosahedral, GaloisTag::Full})
    EXPECT_EQ(psl2_projection(sl2(t)).tag, t);
  EXPECT_THROW(psl2_projection(psl2(GaloisTag::Full)), UnsupportedInput);
}

TEST(Hypergeometric, ExponentDifferences) {
  HGParams p = HGParams::from_abc(Z("1/2"), Z("1/2"), Z("1"));
  auto e = p.exponent_differences();
  EXPECT_TRUE(e[0].is_zero());
  EXPECT_TRUE(e[1].is_zero());
  EXPECT_TRUE(e[2].is_zero());
  HGParams q = lmn("1/2", "1/3", "1/5");
  auto abc = q.parameters_abc();
  HGParams back = HGParams::from_abc(abc[0], abc[1], abc[2]);
  EXPECT_EQ(back.exponent_differences(), q.exponent_differences());
  HGParams both = p;
  both.lmn = std::array<RatExpr, 3>{num(1), num(0), num(0)};
  EXPECT_THROW(both.exponent_differences(), SchemaError);
}

TEST(Hypergeometric, NormalFormSolvesTheTransformedEquation) {
  // y = z^{(1-l)/2} is a local solution exponent at 0: indicial e(e-1) + (1-l^2)/4 = 0.
  HGParams p = lmn("1/3", "1/4", "1/5");
  RatExpr nu = hypergeometric_normal_form(p).nu;
  RatExpr lead = (nu * sym("z").pow(2)).substitute({{"z", num(0)}});
  EXPECT_EQ(lead, num(1, 4) * (num(1) - num(1, 9)));
}

TEST(Hypergeometric, ClassificationTable) {
  const std::vector<std::pair<HGParams, GaloisClass>> cases{
      {HGParams::from_abc(Z("1/2"), Z("1/2"), Z("1")), psl2(GaloisTag::Full)},
      {lmn("1/2", "1/3", "1/3"), psl2(GaloisTag::Tetrahedral)},
      {lmn("2/3", "1/3", "1/3"), psl2(GaloisTag::Tetrahedral)},
      {lmn("1/2", "1/3", "1/4"), psl2(GaloisTag::Octahedral)},
      {lmn("1/2", "1/3", "1/5"), psl2(GaloisTag::Icosahedral)},
      {lmn("2/5", "2/5", "2/5"), psl2(GaloisTag::Icosahedral)},
      {lmn("1/2", "1/2", "1/3"), psl2(GaloisTag::DihedralFinite, 6)},
      {lmn("1/3", "1/3", "1/3"), psl2(GaloisTag::TriangularFinite, 3)},
      {lmn("1/2", "1/3", "1/7"), psl2(GaloisTag::Full)},
  };
  for (const auto& [p, expected] : cases) {
    GaloisClass got = classify_hypergeometric(p);
    EXPECT_EQ(got, expected) << got.str() << " vs " << expected.str();
  }
}

TEST(Hypergeometric, SymbolicParametersWithFlags) {
  HGParams borel = HGParams::from_abc(Z("-1"), Z("0"), sym("c"));
  EXPECT_EQ(classify_hypergeometric(borel, {{"c", ParamKind::Irrational}}).tag, GaloisTag::Borel);
  EXPECT_EQ(classify_hypergeometric(borel, {{"c", ParamKind::Integer}}).tag, GaloisTag::Unipotent);
  HGParams dihedral = HGParams::from_abc(sym("a"), -sym("a"), Z("1/2"));
  EXPECT_EQ(classify_hypergeometric(dihedral, {{"a", ParamKind::Irrational}}).tag, GaloisTag::DihedralInfinite);
  try {
    classify_hypergeometric(HGParams::from_abc(sym("a"), sym("b"), sym("c")));
    FAIL() << "expected Undecidable";
  } catch (const Undecidable& e) {
    EXPECT_EQ(e.witness().at("l"), "-c + 1");
  }
}

TEST(Hypergeometric, SchwarzListInvarianceProperty) {
  Gen g(63);
  const std::vector<std::pair<std::array<std::string, 3>, GaloisTag>> base{
      {{"1/2", "1/3", "1/3"}, GaloisTag::Tetrahedral},
      {{"1/2", "1/3", "1/4"}, GaloisTag::Octahedral},
      {{"1/2", "1/3", "1/5"}, GaloisTag::Icosahedral},
      {{"2/5", "1/3", "1/3"}, GaloisTag::Icosahedral},
  };
  for (int n = 0; n < 120; ++n) {
    const auto& [v, tag] = base[static_cast<std::size_t>(g.integer(0, 3))];
    std::array<RatExpr, 3> x{Z(v[0]), Z(v[1]), Z(v[2])};
    std::shuffle(x.begin(), x.end(), g.engine());
    long k0 = g.integer(-2, 2), k1 = g.integer(-2, 2);
    long k2 = g.integer(-2, 2);
    if ((k0 + k1 + k2) % 2 != 0) k2 += 1;
    x[0] = (g.coin() ? x[0] : -x[0]) + num(k0);
    x[1] = (g.coin() ? x[1] : -x[1]) + num(k1);
    x[2] = (g.coin() ? x[2] : -x[2]) + num(k2);
    ASSERT_EQ(classify_hypergeometric(HGParams::from_lmn(x[0], x[1], x[2])).tag, tag)
        << to_string(x[0]) << ", " << to_string(x[1]) << ", " << to_string(x[2]);
  }
}

TEST(Hypergeometric, AgreesWithKovacicProperty) {
  Gen g(64);
  const std::vector<std::string> values{"0", "1/2", "1/3", "1/4", "1/5", "2/3", "1/6", "2/5", "3/4", "1"};
  int reducible = 0, primitive = 0;
  for (int n = 0; n < 110; ++n) {
    auto pick = [&] { return values[static_cast<std::size_t>(g.integer(0, static_cast<long>(values.size()) - 1))]; };
    HGParams p = lmn(pick(), pick(), pick());
    ReciprocalGalois res = classify_reciprocal_sl2(p);
    ASSERT_TRUE(res.cross_check.has_value());
    ASSERT_TRUE(*res.cross_check) << res.psl2.str() << " vs " << psl2_projection(*res.sl2).str();
    if (res.certificate) {
      ASSERT_TRUE(res.certificate->verified);
    }
    const GaloisTag t = res.psl2.tag;
    if (t == GaloisTag::Tetrahedral || t == GaloisTag::Octahedral || t == GaloisTag::Icosahedral) ++primitive;
    if (t == GaloisTag::Trivial || t == GaloisTag::FiniteCyclic || t == GaloisTag::Borel ||
        t == GaloisTag::Unipotent || t == GaloisTag::DiagonalTorus || t == GaloisTag::TriangularFinite)
      ++reducible;
  }
  EXPECT_GE(reducible, 5);
  EXPECT_GE(primitive, 5);
}

TEST(ReciprocalSl2, PotentialClassification) {
  ReciprocalGalois zero = classify_reciprocal_sl2(RatExpr());
  EXPECT_EQ(zero.psl2.tag, GaloisTag::Trivial);
  EXPECT_EQ(zero.symmetry_ode, lin_equation(RatExpr()));
  EXPECT_EQ(zero.method, "kovacic");
  ReciprocalGalois airy = classify_reciprocal_sl2(Z("-2*z"));
  EXPECT_EQ(airy.base_r, Z("z"));
  EXPECT_EQ(airy.psl2.tag, GaloisTag::Full);
  ReciprocalGalois leg = classify_reciprocal_sl2(HGParams::from_abc(Z("1/2"), Z("1/2"), Z("1")));
  EXPECT_EQ(leg.psl2.tag, GaloisTag::Full);
  EXPECT_EQ(leg.nu, num(2) * hypergeometric_normal_form(HGParams::from_abc(Z("1/2"), Z("1/2"), Z("1"))).nu);
  EXPECT_EQ(leg.method, "exponent-differences");
  EXPECT_TRUE(leg.cross_check.value_or(false));
  EXPECT_NE(std::string(base_equation_note()).find("nu/2"), std::string::npos);
}
