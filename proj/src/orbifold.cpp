#include "vxa/orbifold.hpp"

#include <algorithm>

#include "vxa/printer.hpp"

namespace vxa {

GeneratorSet GeneratorSet::make(const Engine& eng,
                                std::vector<std::pair<std::string, FieldExpr>> members) {
  const Algebra& alg = eng.algebra();
  GeneratorSet gs;
  for (auto& [name, f] : members) {
    auto w = alg.homogeneous_weight(f);
    auto q = alg.homogeneous_charge(f);
    if (!w || !q) throw std::invalid_argument("generator set members must be homogeneous: " + name);
    gs.names.push_back(name);
    gs.weights.push_back(*w);
    gs.charges.push_back(*q);
    gs.degrees.push_back(alg.max_filtration_degree(f));
    gs.fields.push_back(std::move(f));
  }
  return gs;
}

GeneratorSet orbifold_generators(const Engine& eng, long max_u_index) {
  std::vector<std::pair<std::string, FieldExpr>> members;
  members.emplace_back("J", eng.gen_field("J"));
  members.emplace_back("T", eng.gen_field("T"));
  for (long m = 0; m <= max_u_index; ++m)
    members.emplace_back("U_{0," + std::to_string(m) + "}", capital_u(eng.algebra(), 0, m));
  return GeneratorSet::make(eng, std::move(members));
}

std::string genword_str(const GeneratorSet& gens, const GenWord& w) {
  if (w.letters.empty()) return "1";
  std::string s;
  bool wick = w.letters.size() > 1;
  if (wick) s += ":";
  bool first = true;
  for (auto [idx, der] : w.letters) {
    if (!first) s += " ";
    first = false;
    std::string item = gens.names[idx];
    if (der > 0) item = "d^" + std::to_string(der) + " " + item;
    if (wick && (der > 0 || gens.names[idx].find(' ') != std::string::npos)) item = "(" + item + ")";
    s += item;
  }
  if (wick) s += ":";
  return s;
}

namespace {

struct WordEnum {
  const GeneratorSet& gens;
  Rat target_charge;
  long max_filtration;
  std::vector<std::pair<int, long>> current;
  long degree = 0;
  std::vector<GenWord> out;

  void member_letters(std::size_t s, long max_der, const Rat& remaining) {
    next_member(s + 1, remaining);
    if (degree + gens.degrees[s] > max_filtration) return;
    Rat avail = remaining - gens.weights[s];
    if (avail < 0) return;
    long top = std::min<long>(max_der, static_cast<long>(rat_floor(avail).get_si()));
    for (long d = top; d >= 0; --d) {
      current.emplace_back(static_cast<int>(s), d);
      degree += gens.degrees[s];
      member_letters(s, d, remaining - gens.weights[s] - d);
      degree -= gens.degrees[s];
      current.pop_back();
    }
  }

  void next_member(std::size_t s, const Rat& remaining) {
    if (s == gens.size()) {
      if (remaining == 0) {
        Rat q = 0;
        for (auto [idx, der] : current) q += gens.charges[idx];
        if (q == target_charge) out.push_back(GenWord{current});
      }
      return;
    }
    member_letters(s, 1 << 14, remaining);
  }
};

}  // namespace

std::vector<GenWord> enumerate_words(const GeneratorSet& gens, const Rat& weight, const Rat& charge,
                                     long max_filtration) {
  WordEnum e{gens, charge, max_filtration, {}, 0, {}};
  e.next_member(0, weight);
  auto word_degree = [&](const GenWord& w) {
    long d = 0;
    for (auto [idx, der] : w.letters) d += gens.degrees[idx];
    return d;
  };
  std::sort(e.out.begin(), e.out.end(), [&](const GenWord& a, const GenWord& b) {
    long da = word_degree(a), db = word_degree(b);
    if (da != db) return da < db;
    return a.letters < b.letters;
  });
  return e.out;
}

FieldExpr word_field(const Engine& eng, const GeneratorSet& gens, const GenWord& w) {
  if (w.letters.empty()) return eng.vacuum();
  std::vector<FieldExpr> factors;
  for (auto [idx, der] : w.letters) factors.push_back(eng.derivative(gens.fields[idx], der));
  return eng.wick_chain(factors);
}

ExpressResult express_in_generators(const Engine& eng, const FieldExpr& omega,
                                    const GeneratorSet& gens, long max_filtration,
                                    SolveMethod method) {
  const Algebra& alg = eng.algebra();
  auto w = alg.homogeneous_weight(omega);
  auto q = alg.homogeneous_charge(omega);
  if (!w || !q) throw std::invalid_argument("express_in_generators: omega must be homogeneous");

  std::vector<GenWord> words = enumerate_words(gens, *w, *q, max_filtration);
  std::vector<FieldExpr> images;
  images.reserve(words.size());
  for (const auto& word : words) images.push_back(word_field(eng, gens, word));

  std::map<Monomial, long> row_of;
  auto intern = [&](const FieldExpr& e) {
    for (const auto& [m, c] : e.terms()) row_of.try_emplace(m, static_cast<long>(row_of.size()));
  };
  for (const auto& im : images) intern(im);
  intern(omega);

  const long rows = static_cast<long>(row_of.size());
  const long cols = static_cast<long>(words.size());
  RatMat A(rows, cols);
  RatVec b(rows);
  for (long i = 0; i < rows; ++i) b(i) = RatFunc(0);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) A(i, j) = RatFunc(0);
  for (long j = 0; j < cols; ++j)
    for (const auto& [m, c] : images[j].terms()) A(row_of.at(m), j) = c;
  for (const auto& [m, c] : omega.terms()) b(row_of.at(m)) = c;

  LinearSolution s = solve_linear(A, b, method);
  ExpressResult r;
  r.success = s.consistent;
  const RatVec& x = s.consistent ? s.particular : s.best_effort;
  if (x.size() == cols) {
    FieldExpr achieved;
    for (long j = 0; j < cols; ++j) {
      if (x(j).is_zero()) continue;
      r.combo.emplace_back(words[j], x(j));
      achieved.add_scaled(images[j], x(j));
    }
    r.residual = omega - achieved;
  } else {
    r.residual = omega;
  }
  if (!s.consistent && s.infeasibility_witness.size() == rows) {
    for (const auto& [m, i] : row_of)
      if (!s.infeasibility_witness(i).is_zero()) r.failure_functional[m] = s.infeasibility_witness(i);
  }
  return r;
}

// --- C_n ---------------------------------------------------------------------

CnTable cn_coefficients(const Engine& eng, const FieldExpr& omega, long n) {
  const Algebra& alg = eng.algebra();
  if (n < 0) throw std::invalid_argument("cn_coefficients: n must be nonnegative");
  auto w = alg.homogeneous_weight(omega);
  auto q = alg.homogeneous_charge(omega);
  if (!q || (!omega.is_zero() && *q != 0))
    throw std::invalid_argument("cn_coefficients: omega must have charge 0");
  if (!w || (!omega.is_zero() && *w != Rat(n + 7)))
    throw std::invalid_argument("cn_coefficients: omega must have weight n+7");
  if (alg.max_filtration_degree(omega) > 2)
    throw std::invalid_argument("cn_coefficients: omega must have filtration degree <= 2");
  auto gp = static_cast<std::uint16_t>(alg.gen_index("G+"));
  auto gm = static_cast<std::uint16_t>(alg.gen_index("G-"));
  CnTable t;
  t.n = n;
  t.alternating_sum = RatFunc(0);
  for (long i = 0; i <= n + 4; ++i) {
    Monomial m({Letter{gp, static_cast<std::uint16_t>(i)},
                Letter{gm, static_cast<std::uint16_t>(n + 4 - i)}});
    RatFunc c = omega.coeff(m);
    t.alternating_sum += (i % 2) ? -c : c;
    t.coeff.push_back(std::move(c));
  }
  return t;
}

TelescopingTerms telescoping_terms(const Engine& eng, long n) {
  if (n < 1) throw std::invalid_argument("telescoping_terms: n must be >= 1");
  const Algebra& alg = eng.algebra();
  auto gp = static_cast<std::uint16_t>(alg.gen_index("G+"));
  auto gm = static_cast<std::uint16_t>(alg.gen_index("G-"));
  auto L = [&](std::uint16_t g, long d) { return Letter{g, static_cast<std::uint16_t>(d)}; };
  auto word = [&](std::vector<Letter> ls) { return eng.normalize_word(ls); };

  FieldExpr a1 = eng.wick(capital_u(alg, 0, 0), capital_u(alg, 1, n));
  FieldExpr a2 = word({L(gp, 0), L(gm, 0), L(gp, 1), L(gm, n)});
  FieldExpr a3 = word({L(gp, 0), L(gm, 0), L(gm, n), L(gp, 1)});
  FieldExpr a4 = word({L(gp, 0), L(gm, n), L(gm, 0), L(gp, 1)});
  FieldExpr a5 = word({L(gp, 0), L(gm, n), L(gp, 1), L(gm, 0)});
  FieldExpr a6 = eng.wick(capital_u(alg, 0, n), capital_u(alg, 1, 0));

  TelescopingTerms t;
  t.diff = {a1 - a2, a2 - a3, a4 - a5, a5 - a6};
  t.zero_diff = a3 - a4;
  for (int i = 0; i < 4; ++i) t.tables[i] = cn_coefficients(eng, t.diff[i], n);
  return t;
}

// --- decoupling ----------------------------------------------------------------

const DecouplingResult& OrbifoldSolver::decoupling(long n) {
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  if (n < 1) throw std::invalid_argument("decoupling relations start at n = 1");
  const Algebra& alg = eng_.algebra();

  DecouplingResult res;
  res.n = n;
  res.target = "U_{0," + std::to_string(n + 4) + "}";
  res.source = eng_.wick(capital_u(alg, 0, 0), capital_u(alg, 1, n)) -
               eng_.wick(capital_u(alg, 0, n), capital_u(alg, 1, 0));

  // Step 1: express over the full generating set {J, T, U_{0,0..n+4}}; the
  // only weight-(n+7) word carrying U_{0,n+4} is the bare target.
  GeneratorSet full = orbifold_generators(eng_, n + 4);
  ExpressResult raw = express_in_generators(eng_, res.source, full, 2, method_);
  if (!raw.success) throw std::runtime_error("decoupling: source not expressible (engine defect)");
  const int target_idx = static_cast<int>(full.size()) - 1;
  std::vector<std::pair<GenWord, RatFunc>> rem;
  for (auto& [word, c] : raw.combo) {
    bool is_target = word.letters.size() == 1 && word.letters[0] == std::pair<int, long>{target_idx, 0};
    if (is_target)
      res.leading_coefficient = c;
    else
      rem.emplace_back(word, c);
  }

  if (res.leading_coefficient.is_zero()) {
    // The canonical coefficient vanishes identically only at specialized
    // levels 0, 1/2 (Lemma 5.3 guarantees solver-independence).
    res.no_decoupling = true;
    res.gens = full;
    res.remainder = std::move(rem);
    res.verified = true;
    return memo_.emplace(n, std::move(res)).first->second;
  }

  // Step 2: eliminate U_{0,m} for m = n+3 .. 5 from the remainder, highest
  // index first, by substituting previously found relations.
  for (long m = n + 3; m >= 5; --m) {
    const int m_idx = 2 + static_cast<int>(m);  // member index of U_{0,m} in `full`
    std::vector<std::pair<GenWord, RatFunc>> clean;
    FieldExpr dirty;
    const DecouplingResult& lower = decoupling(m - 4);
    FieldExpr u_sub = lower.substitute;
    for (auto& [word, c] : rem) {
      bool has_m = false;
      for (auto [idx, der] : word.letters) has_m |= (idx == m_idx);
      if (!has_m) {
        clean.emplace_back(word, c);
        continue;
      }
      std::vector<FieldExpr> factors;
      for (auto [idx, der] : word.letters) {
        const FieldExpr& base = (idx == m_idx) ? u_sub : full.fields[idx];
        factors.push_back(eng_.derivative(base, der));
      }
      dirty.add_scaled(eng_.wick_chain(factors), c);
    }
    rem = std::move(clean);
    if (dirty.is_zero()) continue;
    GeneratorSet lower_set = orbifold_generators(eng_, m - 1);
    // substituted relations bring multi-U words: allow the full word degree
    // at this weight (each U letter costs weight 3)
    long max_filt = 2 * ((n + 7) / 3);
    ExpressResult red = express_in_generators(eng_, dirty, lower_set, max_filt, method_);
    if (!red.success) throw std::runtime_error("decoupling: recursive reduction failed at m=" + std::to_string(m));
    for (auto& [word, c] : red.combo) {
      // word indices carry over: lower_set is a prefix of `full`
      auto it2 = std::find_if(rem.begin(), rem.end(),
                              [&](const auto& p) { return p.first == word; });
      if (it2 == rem.end())
        rem.emplace_back(word, c);
      else {
        it2->second += c;
        if (it2->second.is_zero()) rem.erase(it2);
      }
    }
  }

  res.gens = orbifold_generators(eng_, std::min<long>(n + 4, 4));
  res.remainder = std::move(rem);

  // Verification: source - c*U_{0,n+4} - remainder normalizes to zero.
  FieldExpr remainder_expr;
  for (auto& [word, c] : res.remainder) remainder_expr.add_scaled(word_field(eng_, res.gens, word), c);
  FieldExpr check = res.source - res.leading_coefficient * capital_u(alg, 0, n + 4) - remainder_expr;
  res.substitute = (RatFunc(1) / res.leading_coefficient) * (res.source - remainder_expr);
  res.verified = check.is_zero();
  return memo_.emplace(n, std::move(res)).first->second;
}

DecouplingResult solve_decoupling(const Engine& eng, long n, SolveMethod method) {
  OrbifoldSolver s(eng, method);
  return s.decoupling(n);
}

// --- corrections ---------------------------------------------------------------

const std::vector<Poly>& correction_denominator_catalog() {
  static const std::vector<Poly> catalog = [] {
    auto poly = [](long c0, long c1, long c2) {
      return Poly(std::vector<Rat>{Rat(c0), Rat(c1), Rat(c2)});
    };
    std::vector<Poly> v;
    v.push_back(Poly::variable());  // l
    v.push_back(poly(-51, -104, 60));
    v.push_back(poly(-107, -104, 28));
    v.push_back(poly(-23, -20, 4));
    v.push_back(poly(9, -22, 24));
    v.push_back(poly(-183, -220, 84));
    v.push_back(poly(-33, -29, 6));
    v.push_back(poly(27, -52, 60));
    v.push_back(poly(-1017, -832, 132));
    return v;
  }();
  return catalog;
}

bool commutant_check(const Engine& eng, const FieldExpr& v, const FieldExpr& h) {
  const Algebra& alg = eng.algebra();
  auto wv = alg.homogeneous_weight(v), wh = alg.homogeneous_weight(h);
  Rat bound = (wv ? *wv : Rat(0)) + (wh ? *wh : Rat(0));
  for (long nn = 0; Rat(nn) < bound; ++nn)
    if (!eng.nth(h, v, nn).is_zero()) return false;
  return true;
}

CorrectionResult solve_correction(const Engine& eng, long i, SolveMethod method) {
  if (i < 0) throw std::invalid_argument("solve_correction: i must be >= 0");
  const Algebra& alg = eng.algebra();
  const Rat w = Rat(i + 3);
  FieldExpr u0i = capital_u(alg, 0, i);
  const Monomial u0i_mono = u0i.terms().begin()->first;

  std::vector<Monomial> basis = weight_basis(alg, w, 0, 2);
  std::vector<Monomial> unknowns;
  for (const auto& m : basis)
    if (!(m == u0i_mono)) unknowns.push_back(m);

  FieldExpr J = eng.gen_field("J");
  FieldExpr tc = coset_virasoro(eng);

  // Conditions: J o_n (U_{0,i} + omega) = 0 for n >= 0, T^C-primary of
  // weight i+3. Assembled as one linear system over the unknown omega.
  std::vector<std::pair<FieldExpr, long>> conditions;
  for (long nn = 0; Rat(nn) < w + 1; ++nn) conditions.emplace_back(J, nn);
  for (long nn = 2; Rat(nn) < w + 2; ++nn) conditions.emplace_back(tc, nn);

  std::map<std::pair<std::size_t, Monomial>, long> row_of;
  auto intern_rows = [&](std::size_t cond, const FieldExpr& e) {
    for (const auto& [m, c] : e.terms())
      row_of.try_emplace(std::make_pair(cond, m), static_cast<long>(row_of.size()));
  };

  // Images of each unknown and of U_{0,i} under every condition, plus the
  // T^C o_1 eigen-condition handled separately below.
  std::vector<std::vector<FieldExpr>> images(conditions.size());
  std::vector<FieldExpr> rhs_parts(conditions.size());
  for (std::size_t k = 0; k < conditions.size(); ++k) {
    auto& [probe, nn] = conditions[k];
    rhs_parts[k] = RatFunc(-1) * eng.nth(probe, u0i, nn);
    intern_rows(k, rhs_parts[k]);
    for (const auto& m : unknowns) {
      images[k].push_back(eng.nth(probe, FieldExpr::term(m, RatFunc(1)), nn));
      intern_rows(k, images[k].back());
    }
  }
  // T^C o_1 X = (i+3) X : affine in the unknowns.
  const std::size_t eig = conditions.size();
  std::vector<FieldExpr> eig_images;
  FieldExpr eig_rhs = RatFunc(-1) * (eng.nth(tc, u0i, 1) - RatFunc(Rat(i + 3)) * u0i);
  {
    for (const auto& m : unknowns) {
      FieldExpr x = FieldExpr::term(m, RatFunc(1));
      eig_images.push_back(eng.nth(tc, x, 1) - RatFunc(Rat(i + 3)) * x);
      intern_rows(eig, eig_images.back());
    }
    intern_rows(eig, eig_rhs);
  }

  const long rows = static_cast<long>(row_of.size());
  const long cols = static_cast<long>(unknowns.size());
  RatMat A(rows, cols);
  RatVec b(rows);
  for (long r = 0; r < rows; ++r) {
    b(r) = RatFunc(0);
    for (long c = 0; c < cols; ++c) A(r, c) = RatFunc(0);
  }
  for (std::size_t k = 0; k < conditions.size(); ++k) {
    for (long c = 0; c < cols; ++c)
      for (const auto& [m, v] : images[k][c].terms()) A(row_of.at({k, m}), c) = v;
    for (const auto& [m, v] : rhs_parts[k].terms()) b(row_of.at({k, m})) = v;
  }
  for (long c = 0; c < cols; ++c)
    for (const auto& [m, v] : eig_images[c].terms()) A(row_of.at({eig, m}), c) = v;
  for (const auto& [m, v] : eig_rhs.terms()) b(row_of.at({eig, m})) = v;

  LinearSolution s = solve_linear(A, b, method);
  if (!s.consistent)
    throw std::runtime_error("solve_correction: no correction term exists (contradicts the theorem)");

  CorrectionResult res;
  res.i = i;
  res.unique = s.nullspace.empty();
  for (long c = 0; c < cols; ++c) res.omega.add(unknowns[c], s.particular(c));
  res.corrected = u0i + res.omega;

  // Transport into the {J, T, U_{0,0..i}} word coordinates (unique below
  // weight 8; these are the coefficients the denominator catalog describes).
  res.gens = orbifold_generators(eng, i);
  ExpressResult ex = express_in_generators(eng, res.corrected, res.gens, 2, method);
  if (!ex.success)
    throw std::runtime_error("solve_correction: U^C not expressible over {J,T,U} words");
  res.word_combo = std::move(ex.combo);

  const auto& catalog = correction_denominator_catalog();
  std::vector<Poly> seen;
  bool all_known = true;
  for (const auto& [word, c] : res.word_combo) {
    Poly d = c.den();
    for (const auto& f : catalog) {
      for (;;) {
        auto [q, r] = d.divmod(f);
        if (!r.is_zero() || q.is_zero()) break;
        d = q;
        Poly fm = f.monic();
        if (std::find(seen.begin(), seen.end(), fm) == seen.end()) seen.push_back(fm);
      }
    }
    if (d.degree() > 0) {
      all_known = false;
      Poly dm = d.monic();
      if (std::find(seen.begin(), seen.end(), dm) == seen.end()) seen.push_back(dm);
    }
  }
  res.denominator_factors = std::move(seen);
  res.factors_within_catalog = all_known;
  return res;
}

}  // namespace vxa
