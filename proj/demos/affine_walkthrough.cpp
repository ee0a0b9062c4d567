/// Walks through the affine parallelism {d/dx, x d/dx + d/dy}: structure constants, coframe,
/// reciprocal connection and its horizontal fields.
#include <iostream>

#include "parallax/parallax.hpp"

using namespace parallax;

int main() {
  ChartPtr chart = Chart::make({"x", "y"});
  chart = extend_tower(chart, "t", {{"x", RatExpr(0)}, {"y", RatExpr::symbol("t")}});
  const RatExpr x = RatExpr::symbol("x"), t = RatExpr::symbol("t");
  Frame F = Frame::from_rows(chart, {{RatExpr(1), RatExpr(0)}, {x, RatExpr(1)}});

  StructureConstants L = infer_structure_constants(F);
  std::cout << "structure constants: " << join_lines(bracket_lines(L)) << "\n";

  Coframe w = coframe(F, L);
  std::cout << "coframe matrix: " << matrix_string(w.coeffs()) << "\n";
  std::cout << "Maurer-Cartan residual vanishes: " << (maurer_cartan_residual(w).is_zero() ? "yes" : "no") << "\n";

  FrameConnection rec = reciprocal(associated_connection(F));
  std::cout << "reciprocal, frame Christoffels: " << join_lines(christoffel_lines(rec.gamma())) << "\n";
  std::cout << "reciprocal, coordinate Christoffels: "
            << join_lines(christoffel_lines(change_frame(rec, Frame::coordinate(chart)).gamma())) << "\n";

  const std::vector<VectorField> Y{VectorField(chart, {t, RatExpr(0)}), VectorField(chart, {RatExpr(0), RatExpr(1)})};
  for (std::size_t i = 0; i < Y.size(); ++i)
    std::cout << "Y" << (i + 1) << " horizontal: " << (verify_horizontal(rec, Y[i]).ok ? "yes" : "no") << "\n";
  StructureConstants YL(2);
  YL.set_bracket(0, 1, Frame(chart, Y).components(lie_bracket(Y[0], Y[1])));
  std::cout << "horizontal brackets (t = e^y): " << join_lines(bracket_lines(YL, "Y")) << "\n";

  LieConnectionReport rep = lie_connection_report(associated_connection(F));
  std::cout << "associated connection is a Lie connection: " << (rep.is_lie_connection() ? "yes" : "no") << "\n";
}
