#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

#include "parallax/chart.hpp"
#include "parallax/errors.hpp"
#include "parallax/ratexpr.hpp"

namespace parallax {

namespace detail {

/// Recursive descent over
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := integer | name | '(' expr ')' | '-' factor
/// A rational literal p/q is read as a division, which yields the same value.
class Parser {
 public:
  using Resolver = std::function<bool(const std::string&)>;

  Parser(std::string_view src, Resolver known) : src_(src), known_(std::move(known)) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < src_.size() ? std::string(1, src_[pos_]) : std::string("end of input");
    throw SyntaxError("syntax error at position " + std::to_string(pos_) + ": expected " + expected + ", found '" +
                          found + "'",
                      {{"position", std::to_string(pos_)}, {"expected", expected}, {"found", found}});
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatExpr expr() {
    RatExpr acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  RatExpr term() {
    RatExpr acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatExpr d = factor();
        if (d.is_zero())
          throw DivisionByZeroPolynomial("division by zero at position " + std::to_string(at),
                                         {{"position", std::to_string(at)}});
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatExpr factor() {
    RatExpr b = base();
    if (accept('^')) {
      int e = exponent();
      if (e < 0 && b.is_zero()) throw DivisionByZeroPolynomial("negative power of zero");
      return b.pow(e);
    }
    return b;
  }

  int exponent() {
    bool paren = accept('(');
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    skip_ws();
    std::string digits = read_digits();
    if (digits.empty()) fail("integer exponent");
    if (digits.size() > 6) fail("exponent of at most six digits");
    if (paren && !accept(')')) fail("')'");
    int e = std::stoi(digits);
    return neg ? -e : e;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  RatExpr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("number, name, '(' or '-'");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      RatExpr e = expr();
      if (!accept(')')) fail("')'");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = read_digits();
      return RatExpr(Rational(Integer(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      if (!known_(name))
        throw UnknownSymbol("unknown symbol '" + name + "' at position " + std::to_string(start),
                            {{"name", name}, {"position", std::to_string(start)}});
      return RatExpr::symbol(name);
    }
    fail("number, name, '(' or '-'");
  }

  std::string_view src_;
  Resolver known_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text in the expression grammar; every name must be a chart variable,
/// a parameter or a tower element of `chart`.
inline RatExpr parse_expr(std::string_view source, const Chart& chart) {
  return detail::Parser(source, [&](const std::string& n) { return chart.knows(n); }).parse();
}

/// Parses a derivative of the tower element `fresh` about to be added to `chart`.
inline RatExpr parse_tower_expr(std::string_view source, const Chart& chart, const std::string& fresh) {
  return detail::Parser(source, [&](const std::string& n) { return n == fresh || chart.knows(n); }).parse();
}

/// Parses with an explicit list of admissible names.
inline RatExpr parse_expr(std::string_view source, const std::vector<std::string>& names) {
  return detail::Parser(source, [&](const std::string& n) {
           return std::find(names.begin(), names.end(), n) != names.end();
         }).parse();
}

}  // namespace parallax
