#pragma once

#include <random>
#include <string>
#include <vector>

#include "parallax/parallax.hpp"

namespace parallax::testing {

/// Seeded source of small random rationals, polynomials and rational functions.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long range = 5, long max_den = 4) {
    return make_rational(integer(-range, range), integer(1, max_den));
  }
  Rational nonzero_rational(long range = 5, long max_den = 4) {
    Rational q;
    while (sgn(q = rational(range, max_den)) == 0) {
    }
    return q;
  }

  /// Polynomial of total degree <= deg with at most `terms` terms.
  Poly poly(const std::vector<std::string>& vars, int deg, int terms = 4) {
    Poly p;
    const int n = static_cast<int>(integer(0, terms));
    for (int t = 0; t < n; ++t) {
      Poly m(rational());
      int left = static_cast<int>(integer(0, deg));
      for (int k = 0; k < left && !vars.empty(); ++k)
        m *= Poly::variable(vars[static_cast<std::size_t>(integer(0, static_cast<long>(vars.size()) - 1))]);
      p += m;
    }
    return p;
  }
  Poly nonzero_poly(const std::vector<std::string>& vars, int deg, int terms = 4) {
    Poly p;
    while ((p = poly(vars, deg, terms)).is_zero()) {
    }
    return p;
  }

  RatExpr expr(const std::vector<std::string>& vars, int deg = 2) {
    return RatExpr::fraction(poly(vars, deg), nonzero_poly(vars, deg - 1 < 0 ? 0 : deg - 1, 2));
  }
  RatExpr poly_expr(const std::vector<std::string>& vars, int deg = 2) { return RatExpr(poly(vars, deg)); }
  RatExpr nonzero_expr(const std::vector<std::string>& vars, int deg = 2) {
    RatExpr e;
    while ((e = expr(vars, deg)).is_zero()) {
    }
    return e;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

inline RatExpr sym(const std::string& n) { return RatExpr::symbol(n); }
inline RatExpr num(long p, long q = 1) { return RatExpr(make_rational(p, q)); }

/// Direct evaluation of a polynomial at a rational point, term by term.
inline Rational eval_poly(const Poly& p, const std::map<std::string, Rational>& at) {
  Rational acc = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& [v, e] : m.powers()) t *= rational_pow(at.at(v), e);
    acc += t;
  }
  return acc;
}

}  // namespace parallax::testing
