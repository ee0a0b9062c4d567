/// Prints the Galois groups of the reciprocal connection for the built-in hypergeometric
/// families, plus Kovacic's verdict on a few potentials.
#include <iomanip>
#include <iostream>

#include "parallax/parallax.hpp"

using namespace parallax;

int main() {
  std::cout << "hypergeometric families\n";
  for (const auto& e : detail::hg_examples()) {
    ReciprocalGalois r = classify_reciprocal_sl2(detail::hg_params(e), e.flags);
    std::cout << "  " << std::left << std::setw(44) << e.title << r.psl2.str() << "  [" << r.method << "]\n";
  }
  std::cout << "Kovacic on y'' = r y\n";
  for (const char* s : {"0", "1", "z", "z^2 + 1", "-3/(16*z^2)", "-3/(16*z^2) + 1/z"}) {
    RatExpr r = parse_expr(s, std::vector<std::string>{"z"});
    KovacicResult k = kovacic(r);
    std::cout << "  r = " << std::left << std::setw(20) << s << k.sl2.str();
    if (k.certificate) std::cout << "  (case " << k.certificate->kovacic_case << ", degree " << k.certificate->degree << ")";
    std::cout << "\n";
  }
}
