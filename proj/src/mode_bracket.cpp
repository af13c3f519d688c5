#include "vxa/mode_bracket.hpp"

#include "vxa/printer.hpp"

namespace vxa {

std::string SymPoly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : t_) {
    std::string mono;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = ratfunc_str(c);
    std::string term;
    if (mono.empty())
      term = cs;
    else if (c == RatFunc(1))
      term = mono;
    else
      term = "(" + cs + ")*" + mono;
    out += first ? term : " + " + term;
    first = false;
  }
  return out;
}

SymPoly sym_binom(const SymPoly& x, long j) {
  SymPoly acc = SymPoly::constant(x.nsyms(), RatFunc(1));
  for (long i = 0; i < j; ++i) acc = acc * (x - SymPoly::constant(x.nsyms(), RatFunc(Rat(i))));
  return RatFunc(Rat(1) / factorial(j)) * acc;
}

namespace {

struct BracketTerms {
  std::map<Monomial, SymPoly> fields;
  SymPoly central;
};

// [a_P, b_*] where the math-convention index of a is P + Delta_a - 1 with P
// the given linear form (plus offset): sum_j binom(index, j) (a o_j b).
BracketTerms bracket_with_form(const Engine& eng, const FieldExpr& a, const FieldExpr& b,
                               const SymPoly& p_form, const Rat& offset_a, int nsyms) {
  const Algebra& alg = eng.algebra();
  auto wa = alg.homogeneous_weight(a);
  if (!wa) throw std::invalid_argument("mode bracket: left argument must be weight-homogeneous");
  auto wb = alg.homogeneous_weight(b);
  Rat bound = *wa + (wb ? *wb : Rat(0));
  SymPoly index = p_form + SymPoly::constant(nsyms, RatFunc(*wa - 1 + offset_a));
  BracketTerms out{{}, SymPoly(nsyms)};
  for (long j = 0; Rat(j) < bound; ++j) {
    FieldExpr e = eng.nth(a, b, j);
    if (e.is_zero()) continue;
    SymPoly bin = sym_binom(index, j);
    for (const auto& [m, c] : e.terms()) {
      if (m.is_vacuum()) {
        out.central += c * bin;
      } else {
        auto [it, inserted] = out.fields.try_emplace(m, SymPoly(nsyms));
        it->second += c * bin;
      }
    }
  }
  return out;
}

}  // namespace

ModeBracket mode_bracket(const Engine& eng, const FieldExpr& a, const FieldExpr& b,
                         const Rat& offset_a) {
  BracketTerms t = bracket_with_form(eng, a, b, SymPoly::symbol(1, 0), offset_a, 1);
  return ModeBracket{std::move(t.fields), std::move(t.central)};
}

std::string mode_bracket_str(const Engine& eng, const ModeBracket& br) {
  const std::vector<std::string> names{"m"};
  std::string out;
  for (const auto& [m, p] : br.fields) {
    if (!out.empty()) out += " + ";
    out += "(" + p.str(names) + ")*(" + mono_str(eng.algebra(), m) + ")_{m+n}";
  }
  if (!br.central.is_zero()) {
    if (!out.empty()) out += " + ";
    out += "(" + br.central.str(names) + ")*delta_{m+n,0}";
  }
  return out.empty() ? "0" : out;
}

std::string jacobi_check(const Engine& eng, const FieldExpr& a, const FieldExpr& b,
                         const FieldExpr& c) {
  const Algebra& alg = eng.algebra();
  const int N = 3;  // symbols m, n, p
  SymPoly m = SymPoly::symbol(N, 0), n = SymPoly::symbol(N, 1), p = SymPoly::symbol(N, 2);
  auto parity = [&](const FieldExpr& x) { return x.is_zero() ? false : alg.odd(x.terms().begin()->first); };
  int sab = (parity(a) && parity(b)) ? -1 : 1;

  // nested bracket: [x_P, (inner fields at mode Q)] accumulated at m+n+p
  auto outer = [&](const FieldExpr& x, const SymPoly& xform, const BracketTerms& inner,
                   const SymPoly& inner_mode) {
    BracketTerms out{{}, SymPoly(N)};
    for (const auto& [mono, q] : inner.fields) {
      FieldExpr field = FieldExpr::term(mono, RatFunc(1));
      BracketTerms t = bracket_with_form(eng, x, field, xform, Rat(0), N);
      for (auto& [mm, pp] : t.fields) {
        auto [it, ins] = out.fields.try_emplace(mm, SymPoly(N));
        it->second += q * pp;
      }
      out.central += q * t.central;
    }
    (void)inner_mode;  // the central of `inner` is a multiple of the identity: bracket vanishes
    return out;
  };

  BracketTerms bc_ = bracket_with_form(eng, b, c, n, Rat(0), N);
  BracketTerms lhs = outer(a, m, bc_, n + p);

  BracketTerms ab = bracket_with_form(eng, a, b, m, Rat(0), N);
  // [Y_{m+n}, c_p]: the index form of Y is m+n
  BracketTerms rhs1{{}, SymPoly(N)};
  for (const auto& [mono, q] : ab.fields) {
    FieldExpr y = FieldExpr::term(mono, RatFunc(1));
    BracketTerms t = bracket_with_form(eng, y, c, m + n, Rat(0), N);
    for (auto& [mm, pp] : t.fields) {
      auto [it, ins] = rhs1.fields.try_emplace(mm, SymPoly(N));
      it->second += q * pp;
    }
    rhs1.central += q * t.central;
  }

  BracketTerms ac = bracket_with_form(eng, a, c, m, Rat(0), N);
  BracketTerms rhs2 = outer(b, n, ac, m + p);

  // assemble: lhs - rhs1 - sab*rhs2 must vanish; fields as free polynomials,
  // centrals on the delta support p = -m-n.
  std::map<Monomial, SymPoly> field_residual;
  auto acc_fields = [&](const std::map<Monomial, SymPoly>& f, int sign) {
    for (const auto& [mono, q] : f) {
      auto [it, ins] = field_residual.try_emplace(mono, SymPoly(N));
      it->second += RatFunc(sign) * q;
    }
  };
  acc_fields(lhs.fields, 1);
  acc_fields(rhs1.fields, -1);
  acc_fields(rhs2.fields, -sab);
  for (const auto& [mono, q] : field_residual)
    if (!q.is_zero()) return "field term " + mono_str(alg, mono) + " does not cancel";

  SymPoly central = lhs.central - rhs1.central - RatFunc(sab) * rhs2.central;
  SymPoly minus_mn = SymPoly(N) - m - n;
  if (!central.substitute(2, minus_mn).is_zero()) return "central terms do not cancel on the delta support";
  return {};
}

}  // namespace vxa
