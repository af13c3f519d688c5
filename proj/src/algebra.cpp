#include "vxa/algebra.hpp"

namespace vxa {

FieldExpr specialize(const FieldExpr& e, const Rat& value) {
  FieldExpr r;
  for (const auto& [m, c] : e.terms()) r.add(m, RatFunc(c.specialize(value)));
  return r;
}

Algebra specialize(const Algebra& a, const Rat& value) {
  Algebra r;
  r.name = a.name;
  r.gens = a.gens;
  for (const auto& [key, e] : a.table) r.table.emplace(key, specialize(e, value));
  return r;
}

bool display_less(const Algebra& alg, const Monomial& a, const Monomial& b) {
  Rat wa = alg.weight(a), wb = alg.weight(b);
  if (wa != wb) return wa < wb;
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters < b.letters;
}

}  // namespace vxa
