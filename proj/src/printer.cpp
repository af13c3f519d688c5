#include "vxa/printer.hpp"

#include <algorithm>
#include <sstream>

namespace vxa {

namespace {

std::string letter_str(const Algebra& alg, Letter L, bool inside_wick) {
  const std::string& name = alg.gens[L.gen].name;
  if (L.der == 0) return name;
  std::string s = "d^" + std::to_string(L.der) + " " + name;
  return inside_wick ? "(" + s + ")" : s;
}

bool is_simple_rat(const RatFunc& c) { return c.is_constant(); }

bool negative_leading(const RatFunc& c) { return c.num().leading() < 0; }

std::string coeff_str(const RatFunc& c, bool parenthesize_composite) {
  if (is_simple_rat(c)) return rat_str(c.constant_value());
  std::string s = ratfunc_str(c);
  if (!parenthesize_composite) return s;
  bool atom = c.is_polynomial() ? (c.num().coeffs().size() == 1 && c.num().leading() == 1) : false;
  return atom ? s : "(" + s + ")";
}

}  // namespace

std::string mono_str(const Algebra& alg, const Monomial& m) {
  if (m.is_vacuum()) return "1";
  if (m.size() == 1) return letter_str(alg, m.letters[0], false);
  std::string s = ":";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += " ";
    s += letter_str(alg, m.letters[i], true);
  }
  return s + ":";
}

std::string fieldexpr_str(const Algebra& alg, const FieldExpr& e) {
  if (e.is_zero()) return "0";
  std::vector<const std::pair<const Monomial, RatFunc>*> terms;
  for (const auto& t : e.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [&](auto* a, auto* b) { return display_less(alg, a->first, b->first); });
  std::string out;
  bool first = true;
  for (auto* t : terms) {
    const Monomial& m = t->first;
    RatFunc c = t->second;
    bool neg = negative_leading(c);
    if (neg) c = -c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (m.is_vacuum()) {
      out += coeff_str(c, true);
    } else if (c == RatFunc(1)) {
      out += mono_str(alg, m);
    } else {
      out += coeff_str(c, true) + "*" + mono_str(alg, m);
    }
  }
  return out;
}

std::string algebra_to_string(const Algebra& alg) {
  std::ostringstream os;
  os << "algebra " << alg.name << "\n";
  for (const auto& g : alg.gens) {
    os << "[gen] " << g.name << " " << rat_str(g.weight) << " " << (g.odd ? "odd" : "even") << " "
       << rat_str(g.charge);
    if (g.filtered) os << " filtered";
    os << "\n";
  }
  for (const auto& [key, e] : alg.table) {
    if (e.is_zero()) continue;
    auto [a, b, n] = key;
    os << "[ope] " << alg.gens[a].name << " " << alg.gens[b].name << " " << n << " = "
       << fieldexpr_str(alg, e) << "\n";
  }
  return os.str();
}

}  // namespace vxa
