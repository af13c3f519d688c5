#include <cctype>

#include "vxa/ratfunc.hpp"

namespace vxa {

namespace {

std::string coeff_term(const Rat& c, long d) {
  std::string base;
  if (d == 1)
    base = "l";
  else if (d > 1)
    base = "l^" + std::to_string(d);
  if (d == 0) return rat_str(c);
  if (c == 1) return base;
  if (c == -1) return "-" + base;
  return rat_str(c) + "*" + base;
}

}  // namespace

std::string poly_str(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (long d = p.degree(); d >= 0; --d) {
    const Rat& c = p.coeff(d);
    if (c == 0) continue;
    if (out.empty()) {
      out = coeff_term(c, d);
    } else if (c > 0) {
      out += " + " + coeff_term(c, d);
    } else {
      out += " - " + coeff_term(-c, d);
    }
  }
  return out;
}

std::string ratfunc_str(const RatFunc& r) {
  if (r.is_polynomial()) return poly_str(r.num());
  std::string num = "(" + poly_str(r.num()) + ")";
  if (r.den().is_constant()) return num + "/" + rat_str(r.den().coeff(0));
  return num + "/(" + poly_str(r.den()) + ")";
}

// --- scalar expression parser --------------------------------------------
// Grammar: integer literals, `l`, binary + - * /, `^` with integer exponent,
// parentheses, unary minus.

namespace {

struct ScalarParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit ScalarParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("scalar parse error at offset " + std::to_string(pos) + ": " + what);
  }

  RatFunc parse_expr() {
    RatFunc v = parse_term();
    for (;;) {
      if (eat('+'))
        v += parse_term();
      else if (eat('-'))
        v -= parse_term();
      else
        return v;
    }
  }

  RatFunc parse_term() {
    RatFunc v = parse_unary();
    for (;;) {
      if (eat('*'))
        v *= parse_unary();
      else if (eat('/'))
        v /= parse_unary();
      else
        return v;
    }
  }

  RatFunc parse_unary() {
    if (eat('-')) return -parse_unary();
    return parse_power();
  }

  RatFunc parse_power() {
    RatFunc v = parse_atom();
    if (eat('^')) {
      bool neg = eat('-');
      long e = parse_integer();
      v = v.pow(neg ? -e : e);
    }
    return v;
  }

  long parse_integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  RatFunc parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      RatFunc v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'l') {
      ++pos;
      return RatFunc::ell();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc(Rat(parse_integer()));
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text) {
  ScalarParser p(text);
  RatFunc v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace vxa
