#include "vxa/catalog.hpp"

#include "vxa/parser.hpp"
#include "vxa/printer.hpp"

namespace vxa {

namespace detail {

namespace {

// Fill the (B, A, n) orientations from the stored (A, B, .) entries via the
// skew-symmetry transform, for every pair with A-index < B-index.
void complete_by_skew(Algebra& alg) {
  Engine eng(alg);
  const int ng = static_cast<int>(alg.gens.size());
  std::map<std::tuple<int, int, long>, FieldExpr> flipped;
  for (int a = 0; a < ng; ++a)
    for (int b = a + 1; b < ng; ++b) {
      bool any = false;
      Rat bound = alg.gens[a].weight + alg.gens[b].weight;
      for (long n = 0; Rat(n) < bound; ++n)
        if (alg.table_entry(a, b, n)) any = true;
      if (!any) continue;
      for (long n = 0; Rat(n) < bound; ++n) {
        FieldExpr e = eng.nth_via_skew(eng.gen_field(a), eng.gen_field(b), n);
        if (!e.is_zero()) flipped[{b, a, n}] = std::move(e);
      }
    }
  for (auto& [k, v] : flipped) alg.table[k] = std::move(v);
}

}  // namespace

Algebra build_bp() {
  Algebra alg;
  alg.name = "bp";
  alg.gens = {
      {"T", Rat(2), false, Rat(0), false},
      {"J", Rat(1), false, Rat(0), false},
      {"G+", rat(3, 2), false, Rat(1), true},
      {"G-", rat(3, 2), false, Rat(-1), true},
  };
  const int T = 0, J = 1, Gp = 2, Gm = 3;
  const RatFunc l = RatFunc::ell();
  auto mono1 = [](int g, int d) { return FieldExpr::term(Monomial::single(g, d), RatFunc(1)); };

  alg.table[{T, T, 0}] = mono1(T, 1);
  alg.table[{T, T, 1}] = RatFunc(2) * mono1(T, 0);
  alg.table[{T, T, 3}] = FieldExpr::vacuum(-(l * (RatFunc(6) * l - RatFunc(7))) / (RatFunc(2) * l + RatFunc(3)));
  alg.table[{T, J, 0}] = mono1(J, 1);
  alg.table[{T, J, 1}] = mono1(J, 0);
  alg.table[{T, Gp, 0}] = mono1(Gp, 1);
  alg.table[{T, Gp, 1}] = rat(3, 2) * mono1(Gp, 0);
  alg.table[{T, Gm, 0}] = mono1(Gm, 1);
  alg.table[{T, Gm, 1}] = rat(3, 2) * mono1(Gm, 0);
  alg.table[{J, J, 1}] = FieldExpr::vacuum(RatFunc(2) * l / RatFunc(3));
  alg.table[{J, Gp, 0}] = mono1(Gp, 0);
  alg.table[{J, Gm, 0}] = RatFunc(-1) * mono1(Gm, 0);
  FieldExpr gpgm0 = RatFunc(3) * FieldExpr::term(Monomial({{J, 0}, {J, 0}}), RatFunc(1));
  gpgm0 += (RatFunc(rat(3, 4)) * (RatFunc(2) * l - RatFunc(1))) * mono1(J, 1);
  gpgm0 -= (l + rat(3, 2)) * mono1(T, 0);
  alg.table[{Gp, Gm, 0}] = std::move(gpgm0);
  alg.table[{Gp, Gm, 1}] = (RatFunc(rat(3, 2)) * (RatFunc(2) * l - RatFunc(1))) * mono1(J, 0);
  alg.table[{Gp, Gm, 2}] = FieldExpr::vacuum(l * (RatFunc(2) * l - RatFunc(1)));

  complete_by_skew(alg);
  return alg;
}

Algebra build_bc() {
  Algebra alg;
  alg.name = "bc";
  alg.gens = {
      {"b", rat(1, 2), true, Rat(-1), true},
      {"c", rat(1, 2), true, Rat(1), true},
  };
  alg.table[{0, 1, 0}] = FieldExpr::vacuum(RatFunc(1));
  complete_by_skew(alg);
  return alg;
}

}  // namespace detail

const std::string& bp_alg_text() {
  static const std::string text = algebra_to_string(detail::build_bp());
  return text;
}

const std::string& bc_alg_text() {
  static const std::string text = algebra_to_string(detail::build_bc());
  return text;
}

Algebra bp_algebra() { return algebra_from_string(bp_alg_text()); }
Algebra bc_system() { return algebra_from_string(bc_alg_text()); }

Algebra tensor(const Algebra& a, const Algebra& b, const std::string& name) {
  Algebra r;
  r.name = name;
  r.gens = a.gens;
  for (const auto& g : b.gens) {
    for (const auto& h : a.gens)
      if (h.name == g.name) throw std::invalid_argument("tensor: generator name clash: " + g.name);
    r.gens.push_back(g);
  }
  r.table = a.table;
  const int off = static_cast<int>(a.gens.size());
  for (const auto& [key, e] : b.table) {
    auto [x, y, n] = key;
    FieldExpr shifted;
    for (const auto& [m, c] : e.terms()) {
      Monomial sm = m;
      for (auto& L : sm.letters) L.gen = static_cast<std::uint16_t>(L.gen + off);
      shifted.add(std::move(sm), c);
    }
    r.table[{x + off, y + off, n}] = std::move(shifted);
  }
  return r;
}

// --- named fields -----------------------------------------------------------

FieldExpr capital_u(const Algebra& alg, long i, long j) {
  auto gp = alg.gen_index("G+"), gm = alg.gen_index("G-");
  return FieldExpr::term(Monomial({{static_cast<std::uint16_t>(gp), static_cast<std::uint16_t>(i)},
                                   {static_cast<std::uint16_t>(gm), static_cast<std::uint16_t>(j)}}),
                         RatFunc(1));
}

FieldExpr heisenberg_virasoro(const Engine& eng) {
  const Algebra& alg = eng.algebra();
  int J = alg.gen_index("J");
  RatFunc c = RatFunc(3) / (RatFunc(4) * RatFunc::ell());
  return c * FieldExpr::term(Monomial({{static_cast<std::uint16_t>(J), 0}, {static_cast<std::uint16_t>(J), 0}}),
                             RatFunc(1));
}

FieldExpr coset_virasoro(const Engine& eng) {
  return eng.gen_field("T") - heisenberg_virasoro(eng);
}

FieldExpr power_field(const Engine& eng, const std::string& gen, long m) {
  if (m < 1) throw std::invalid_argument("power_field needs a positive exponent");
  std::vector<FieldExpr> fs(static_cast<std::size_t>(m), eng.gen_field(gen));
  return eng.wick_chain(fs);
}

FieldExpr je_field(const Engine& eng) {
  return RatFunc(-1) * eng.wick(eng.gen_field("b"), eng.gen_field("c"));
}

FieldExpr te_field(const Engine& eng) {
  // (1/2)(-:b dc: + :(db) c:). With the coefficient 1 displayed in the source
  // material, b would get conformal weight 1 instead of 1/2 and the central
  // term becomes 4x; the 1/2 normalization is the one with central charge 1.
  FieldExpr b = eng.gen_field("b"), c = eng.gen_field("c");
  FieldExpr t = RatFunc(-1) * eng.wick(b, eng.derivative(c)) + eng.wick(eng.derivative(b), c);
  return RatFunc(rat(1, 2)) * t;
}

FieldExpr jdiag_field(const Engine& eng) { return eng.gen_field("J") + je_field(eng); }

FieldExpr phi_plus(const Engine& eng, long n) {
  return eng.wick(eng.gen_field("b"), eng.derivative(eng.gen_field("G+"), n));
}

FieldExpr phi_minus(const Engine& eng, long n) {
  return eng.wick(eng.gen_field("c"), eng.derivative(eng.gen_field("G-"), n));
}

FieldExpr jd_field(const Engine& eng) {
  RatFunc c = RatFunc(2) * RatFunc::ell() / RatFunc(3);
  return eng.gen_field("J") - c * je_field(eng);
}

FieldExpr td_field(const Engine& eng) {
  FieldExpr jd = jdiag_field(eng);
  RatFunc c = RatFunc(3) / (RatFunc(2) * (RatFunc(3) + RatFunc(2) * RatFunc::ell()));
  return eng.gen_field("T") + te_field(eng) - c * eng.wick(jd, jd);
}

std::optional<FieldExpr> named_field(const Engine& eng, const std::string& name) {
  const Algebra& alg = eng.algebra();
  try {
    if (name == "T^H") return heisenberg_virasoro(eng);
    if (name == "T^C") return coset_virasoro(eng);
    if (name == "J^E") return je_field(eng);
    if (name == "T^E") return te_field(eng);
    if (name == "J^diag") return jdiag_field(eng);
    if (name == "J^D") return jd_field(eng);
    if (name == "T^D") return td_field(eng);
    if (name == "phi^+") return phi_plus(eng);
    if (name == "phi^-") return phi_minus(eng);
    if (name.size() > 4 && name.substr(0, 3) == "U_{" && name.back() == '}') {
      auto comma = name.find(',');
      if (comma == std::string::npos) return std::nullopt;
      long i = std::stol(name.substr(3, comma - 3));
      long j = std::stol(name.substr(comma + 1, name.size() - comma - 2));
      return capital_u(alg, i, j);
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace vxa
