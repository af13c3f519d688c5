#include "vxa/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace vxa {

namespace {

enum class Tok { Num, Ell, Gen, Colon, LParen, RParen, Plus, Minus, Star, Slash, Caret, Deriv, Nth, End };

struct Token {
  Tok kind;
  long num = 0;   // Num value (nonnegative) or Nth index (signed)
  int gen = -1;   // generator index
  std::size_t pos = 0;
};

struct Lexer {
  const std::string& s;
  const Algebra& alg;
  std::size_t pos = 0;
  std::vector<std::pair<std::string, int>> names;  // sorted by length desc

  Lexer(const std::string& text, const Algebra& a) : s(text), alg(a) {
    for (std::size_t i = 0; i < alg.gens.size(); ++i)
      names.emplace_back(alg.gens[i].name, static_cast<int>(i));
    std::sort(names.begin(), names.end(),
              [](const auto& x, const auto& y) { return x.first.size() > y.first.size(); });
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s.size(); ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  long lex_integer() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer", start);
    return std::stol(s.substr(start, pos - start));
  }

  Token next() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    Token t;
    t.pos = pos;
    if (pos >= s.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = s[pos];
    if (c == '_') {
      ++pos;
      bool neg = pos < s.size() && s[pos] == '-';
      if (neg) ++pos;
      long v = lex_integer();
      if (pos >= s.size() || s[pos] != '_') fail("expected closing '_' of n-th product index", pos);
      ++pos;
      t.kind = Tok::Nth;
      t.num = neg ? -v : v;
      return t;
    }
    if (c == 'd' && pos + 1 < s.size() && s[pos + 1] == '^') {
      pos += 2;
      t.kind = Tok::Deriv;
      t.num = lex_integer();
      return t;
    }
    for (const auto& [name, idx] : names) {
      if (s.compare(pos, name.size(), name) == 0) {
        pos += name.size();
        t.kind = Tok::Gen;
        t.gen = idx;
        return t;
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Num;
      t.num = lex_integer();
      return t;
    }
    switch (c) {
      case 'l': t.kind = Tok::Ell; break;
      case ':': t.kind = Tok::Colon; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      default: fail(std::string("unexpected character '") + c + "'", pos);
    }
    ++pos;
    return t;
  }
};

struct ExprParser {
  const Engine& eng;
  Lexer lex;
  Token cur;

  ExprParser(const Engine& e, const std::string& text) : eng(e), lex(text, e.algebra()) { advance(); }

  void advance() { cur = lex.next(); }
  [[noreturn]] void fail(const std::string& msg) { lex.fail(msg, cur.pos); }

  bool starts_prim() const {
    switch (cur.kind) {
      case Tok::Num:
      case Tok::Ell:
      case Tok::Gen:
      case Tok::Colon:
      case Tok::LParen:
      case Tok::Deriv: return true;
      default: return false;
    }
  }

  FieldExpr parse_expr() {
    bool neg = false;
    if (cur.kind == Tok::Minus) {
      neg = true;
      advance();
    }
    FieldExpr v = parse_addend();
    if (neg) v = RatFunc(-1) * v;
    for (;;) {
      if (cur.kind == Tok::Plus) {
        advance();
        v += parse_addend();
      } else if (cur.kind == Tok::Minus) {
        advance();
        v -= parse_addend();
      } else {
        return v;
      }
    }
  }

  FieldExpr mul(const FieldExpr& a, const FieldExpr& b) {
    if (a.is_scalar()) return a.scalar_value() * b;
    if (b.is_scalar()) return b.scalar_value() * a;
    fail("product of two fields is ambiguous; use :A B: for normally ordered products");
  }

  FieldExpr parse_addend() {
    FieldExpr v = parse_mulfac();
    for (;;) {
      if (cur.kind == Tok::Star) {
        advance();
        v = mul(v, parse_mulfac());
      } else if (cur.kind == Tok::Slash) {
        advance();
        FieldExpr d = parse_mulfac();
        if (!d.is_scalar() || d.scalar_value().is_zero()) fail("division requires a nonzero scalar divisor");
        v = (RatFunc(1) / d.scalar_value()) * v;
      } else if (starts_prim()) {
        v = mul(v, parse_mulfac());
      } else {
        return v;
      }
    }
  }

  FieldExpr parse_mulfac() {
    FieldExpr v = parse_nthterm();
    if (cur.kind == Tok::Caret) {
      advance();
      bool neg = false;
      if (cur.kind == Tok::Minus) {
        neg = true;
        advance();
      }
      if (cur.kind != Tok::Num) fail("expected integer exponent");
      long e = neg ? -cur.num : cur.num;
      advance();
      if (!v.is_scalar()) fail("'^' applies to scalars only");
      v = FieldExpr::vacuum(v.scalar_value().pow(e));
    }
    return v;
  }

  FieldExpr parse_nthterm() {
    FieldExpr v = parse_prim();
    while (cur.kind == Tok::Nth) {
      long n = cur.num;
      advance();
      FieldExpr rhs = parse_prim();
      v = eng.nth(v, rhs, n);
    }
    return v;
  }

  FieldExpr parse_prim() {
    switch (cur.kind) {
      case Tok::Num: {
        FieldExpr v = FieldExpr::vacuum(RatFunc(Rat(cur.num)));
        advance();
        return v;
      }
      case Tok::Ell: {
        advance();
        return FieldExpr::vacuum(RatFunc::ell());
      }
      case Tok::Gen: {
        FieldExpr v = eng.gen_field(cur.gen);
        advance();
        return v;
      }
      case Tok::LParen: {
        advance();
        FieldExpr v = parse_expr();
        if (cur.kind != Tok::RParen) fail("expected ')'");
        advance();
        return v;
      }
      case Tok::Deriv: {
        long k = cur.num;
        advance();
        return eng.derivative(parse_prim(), k);
      }
      case Tok::Colon: {
        advance();
        std::vector<FieldExpr> items;
        while (true) {
          if (cur.kind == Tok::Colon && !items.empty()) {
            advance();
            break;
          }
          if (!starts_prim()) fail("expected Wick product item or closing ':'");
          items.push_back(parse_prim());
        }
        return eng.wick_chain(items);
      }
      default: fail("expected expression");
    }
  }
};

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  std::string s = (h == std::string::npos) ? line : line.substr(0, h);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

FieldExpr parse_expression(const Engine& eng, const std::string& text) {
  ExprParser p(eng, text);
  FieldExpr v = p.parse_expr();
  if (p.cur.kind != Tok::End) p.fail("trailing input");
  return v;
}

Algebra algebra_from_string(const std::string& text) {
  Algebra alg;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  std::vector<std::tuple<int, std::string>> ope_lines;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "algebra") {
      ls >> alg.name;
    } else if (head == "[gen]") {
      GeneratorInfo g;
      std::string w, parity, q, extra;
      if (!(ls >> g.name >> w >> parity >> q)) throw ParseError("malformed [gen] line", lineno, 1);
      g.weight = rat_from_string(w);
      g.charge = rat_from_string(q);
      if (parity == "odd")
        g.odd = true;
      else if (parity != "even")
        throw ParseError("parity must be 'even' or 'odd'", lineno, 1);
      while (ls >> extra) {
        if (extra == "filtered")
          g.filtered = true;
        else
          throw ParseError("unknown generator attribute: " + extra, lineno, 1);
      }
      if (!(g.weight > 0)) throw ParseError("generator weight must be positive", lineno, 1);
      if (alg.find_gen(g.name)) throw ParseError("duplicate generator name: " + g.name, lineno, 1);
      alg.gens.push_back(std::move(g));
    } else if (head == "[ope]") {
      std::string rest;
      std::getline(ls, rest);
      ope_lines.emplace_back(lineno, rest);
    } else {
      throw ParseError("unknown directive: " + head, lineno, 1);
    }
  }

  for (const auto& [ln, rest] : ope_lines) {
    std::istringstream ls(rest);
    std::string na, nb;
    long n;
    if (!(ls >> na >> nb >> n)) throw ParseError("malformed [ope] line", ln, 1);
    std::string eq;
    ls >> eq;
    if (eq != "=") throw ParseError("expected '=' in [ope] line", ln, 1);
    std::string expr_text;
    std::getline(ls, expr_text);
    int a = alg.gen_index(na), b = alg.gen_index(nb);
    if (n < 0) throw ParseError("[ope] index must be nonnegative", ln, 1);
    Engine tmp(alg);  // fresh engine: no cache staleness while the table grows
    FieldExpr e = parse_expression(tmp, expr_text);
    if (e.is_zero()) continue;
    Rat wa = alg.gens[a].weight, wb = alg.gens[b].weight;
    if (Rat(n) >= wa + wb)
      throw ParseError("[ope] entry violates the locality bound n < w(A)+w(B)", ln, 1);
    auto w = alg.homogeneous_weight(e);
    if (!w || *w != wa + wb - n - 1)
      throw ParseError("[ope] entry has wrong weight (need w(A)+w(B)-n-1)", ln, 1);
    auto q = alg.homogeneous_charge(e);
    if (!q || *q != alg.gens[a].charge + alg.gens[b].charge)
      throw ParseError("[ope] entry has wrong charge", ln, 1);
    bool want_odd = alg.gens[a].odd != alg.gens[b].odd;
    for (const auto& [m, c] : e.terms())
      if (alg.odd(m) != want_odd) throw ParseError("[ope] entry has wrong parity", ln, 1);
    alg.table[{a, b, n}] = std::move(e);
  }
  return alg;
}

Algebra load_algebra_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open algebra file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return algebra_from_string(ss.str());
}

}  // namespace vxa
