#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parallax/errors.hpp"
#include "parallax/ratexpr.hpp"

namespace parallax {

/// Monic scalar equation y^(n) + sum_{i<n} coeffs[i] y^(i) = 0 in the variable `var`.
struct LinearODE {
  std::string var = "z";
  std::vector<RatExpr> coeffs;

  std::size_t order() const { return coeffs.size(); }

  friend bool operator==(const LinearODE& a, const LinearODE& b) {
    return a.var == b.var && a.coeffs == b.coeffs;
  }
};

/// Formal derivative in `var`, where a symbol f_k with f in `functions` stands for the
/// k-th derivative of an unspecified function f of `var` (f itself is f_0).
inline RatExpr formal_derivative(const RatExpr& e, const std::string& var,
                                 const std::vector<std::string>& functions = {"nu", "r"}) {
  RatExpr out = e.partial(var);
  for (const auto& s : e.symbols()) {
    for (const auto& f : functions) {
      std::string next;
      if (s == f) {
        next = f + "_1";
      } else if (s.size() > f.size() + 1 && s.compare(0, f.size() + 1, f + "_") == 0 &&
                 s.find_first_not_of("0123456789", f.size() + 1) == std::string::npos) {
        next = f + "_" + std::to_string(std::stoi(s.substr(f.size() + 1)) + 1);
      }
      if (!next.empty()) out += e.partial(s) * RatExpr::symbol(next);
    }
  }
  return out;
}

/// y'' = r y as a monic equation.
inline LinearODE second_order(const RatExpr& r, std::string var = "z") { return {std::move(var), {-r, RatExpr(0)}}; }

/// Human-readable rendering with `fn` as the unknown, e.g. "a''' + 2*nu*a' + nu_1*a = 0".
inline std::string to_string(const LinearODE& L, const std::string& fn = "y") {
  auto deriv = [&](std::size_t i) { return fn + std::string(i, '\''); };
  std::string s = deriv(L.order());
  for (std::size_t i = L.order(); i-- > 0;) {
    const RatExpr& c = L.coeffs[i];
    if (c.is_zero()) continue;
    std::string t = to_string(c);
    const bool single = c.den().is_constant() && c.num().size() == 1;
    if (single && t[0] == '-') {
      s += " - ";
      t = t.substr(1);
    } else {
      s += " + ";
      if (!single) t = "(" + t + ")";
    }
    s += t == "1" ? deriv(i) : t + "*" + deriv(i);
  }
  return s + " = 0";
}

}  // namespace parallax
