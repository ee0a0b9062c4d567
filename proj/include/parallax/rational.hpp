#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace parallax {

/// Exact rational number. Always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  Integer n = q.get_num();
  Integer d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

inline Rational rational_pow(const Rational& base, int exp) {
  Rational result(1);
  Rational b = exp >= 0 ? base : Rational(1) / base;
  unsigned e = static_cast<unsigned>(exp >= 0 ? exp : -exp);
  while (e) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace parallax
