#include "vxa/acceptance.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <random>
#include <sstream>

#include "vxa/characters.hpp"
#include "vxa/mode_bracket.hpp"
#include "vxa/orbifold.hpp"
#include "vxa/parser.hpp"
#include "vxa/printer.hpp"

namespace vxa {

namespace {

const RatFunc L = RatFunc::ell();

RatFunc rf(long num, long den = 1) { return RatFunc(rat(num, den)); }

RatFunc cn_closed_form(long n) {
  Rat pref = Rat(n * (n + 7)) / (Rat(24) * Rat((n + 3) * (n + 4)));
  return RatFunc(pref) * L * (rf(2) * L - 1);
}

struct Runner {
  const AcceptanceOptions& opts;
  std::ostream* progress;
  std::vector<AcceptanceItem> items;

  void run(const std::string& id, const std::string& name,
           const std::function<std::pair<bool, std::string>()>& fn, bool expected_fail = false) {
    AcceptanceItem item;
    item.id = id;
    item.name = name;
    item.expected_fail = expected_fail;
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto [ok, detail] = fn();
      item.pass = ok;
      item.detail = detail;
    } catch (const std::exception& e) {
      item.pass = false;
      item.detail = std::string("exception: ") + e.what();
    }
    item.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) {
      (*progress) << (item.pass ? "[PASS] "
                                : (item.expected_fail ? "[FAIL, documented defect] " : "[FAIL] "))
                  << item.id << " " << item.name << " (" << item.seconds << " s)";
      if (!item.detail.empty()) (*progress) << " — " << item.detail;
      (*progress) << "\n" << std::flush;
    }
    items.push_back(std::move(item));
  }
};

// random normal monomial over the bp presentation
Monomial random_mono(std::mt19937& rng, const Engine& eng, int max_letters, int max_der) {
  const auto& alg = eng.algebra();
  std::uniform_int_distribution<int> nl(0, max_letters);
  std::uniform_int_distribution<int> gd(0, static_cast<int>(alg.gens.size()) - 1);
  std::uniform_int_distribution<int> dd(0, max_der);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Letter> word;
    int k = nl(rng);
    for (int i = 0; i < k; ++i)
      word.push_back(Letter{static_cast<std::uint16_t>(gd(rng)), static_cast<std::uint16_t>(dd(rng))});
    FieldExpr e = eng.normalize_word(word);
    if (e.is_zero()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, e.size() - 1);
    auto it = e.terms().begin();
    std::advance(it, pick(rng));
    return it->first;
  }
  return Monomial::vacuum();
}

// --- criterion 5: the displayed telescoping coefficient tables ----------------

RatFunc c1_expected(long n, long j) {
  RatFunc N = rf(n);
  RatFunc v = rf(0);
  if (j == 1) v += (rf(3) + 2 * L) * (rf(4) + 4 * L + N + 2 * L * N) / (rf(4) * (N + 2) * (N + 3));
  if (j == 2) v += rf(-3) * (rf(3) + 2 * L) / (rf(4) * (N + 2));
  if (j == 3) v += (rf(3) + 2 * L) / (2 * N + 2);
  if (j == 4) v += -(rf(3) + 2 * L) * (rf(5) + 6 * L) / rf(48);
  if (j >= 3 && j <= n + 3) {
    Rat fact = factorial(n) / (factorial(n + 4 - j) * factorial(j));
    v += -(rf(3) + 10 * L + 6 * N + 4 * L * N) * RatFunc(fact) / rf(2);
  }
  if (j == n + 4) v += rf(-3) * (rf(5) + 2 * L + 2 * N) / ((N + 1) * (N + 2) * (N + 3) * (N + 4));
  return v;
}

RatFunc c2_expected(long n, long j) {
  RatFunc N = rf(n);
  if (j == 0) return (rf(18) - 4 * L + 3 * N + 2 * L * N) / (rf(2) * (N + 1) * (N + 2) * (N + 3) * (N + 4));
  if (j == n + 4)
    return -(rf(-15) - 2 * L - 6 * N + 4 * L * N) / (rf(2) * (N + 1) * (N + 2) * (N + 3) * (N + 4));
  Rat fact = factorial(n) / (factorial(n + 4 - j) * factorial(j));
  return rf(-6) * RatFunc(fact);
}

RatFunc c3_expected(long n, long j) {
  RatFunc N = rf(n);
  if (j == 0) return -(rf(18) - 4 * L + 3 * N + 2 * L * N) / (rf(2) * (N + 1) * (N + 2) * (N + 3) * (N + 4));
  if (j == 1) return rf(6) / ((N + 1) * (N + 2) * (N + 3));
  if (j == 2) return rf(3) / ((N + 1) * (N + 2));
  if (j == 3) return rf(1) / (N + 1);
  if (j == 4) return rf(-5, 16) - L / rf(24);
  return rf(0);
}

RatFunc c4_expected(long n, long j) {
  RatFunc N = rf(n);
  int sgn = (n % 2 == 0) ? 1 : -1;
  if (j == 1)
    return rf(-3) * (N + 4) / (rf(4) * (N + 2) * (N + 3)) +
           L * (rf(-30) - 10 * N + N * N) / (rf(6) * (N + 2) * (N + 3)) - L * L / rf(3);
  if (j == 2) return rf(3) * (rf(6) + 4 * L - N + 2 * L * N) / (rf(8) * (N + 2));
  if (j == 3) return rf(-1);
  if (j == n + 3) return rf(-sgn) * (rf(3) + 2 * L) / (rf(4) * (N + 3));
  if (j == n + 4) {
    RatFunc num = rf(45) + 40 * L + 12 * L * L + 25 * N + 47 * L * N + 22 * L * L * N +
                  14 * L * N * N + 12 * L * L * N * N - N * N * N + L * N * N * N +
                  2 * L * L * N * N * N;
    return rf(sgn) * num / (rf(2) * (N + 1) * (N + 2) * (N + 3) * (N + 4));
  }
  return rf(0);
}

std::string check_c_tables(const Engine& eng, long n) {
  TelescopingTerms t = telescoping_terms(eng, n);
  auto expected = [&](int i, long j) {
    switch (i) {
      case 0: return c1_expected(n, j);
      case 1: return c2_expected(n, j);
      case 2: return c3_expected(n, j);
      default: return c4_expected(n, j);
    }
  };
  for (int i = 0; i < 4; ++i)
    for (long j = 0; j <= n + 4; ++j)
      if (!(t.tables[i].coeff[j] == expected(i, j)))
        return "C^" + std::to_string(i + 1) + "_{" + std::to_string(n) + "," + std::to_string(j) +
               "} does not match the displayed formula";
  // middle difference is C-invisible, and the alternating double sum gives C_n
  CnTable zero = cn_coefficients(eng, t.zero_diff, n);
  for (const auto& c : zero.coeff)
    if (!c.is_zero()) return "middle telescoping difference has a nonzero C entry";
  RatFunc total = rf(0);
  for (int i = 0; i < 4; ++i) total += t.tables[i].alternating_sum;
  if (!(total * total == cn_closed_form(n) * cn_closed_form(n)))
    return "alternating double sum does not reproduce the closed form";
  return {};
}

// the long U_{0,1} identity displayed in the tensor-product section
std::pair<FieldExpr, FieldExpr> u01_long_relation(const Engine& eng) {
  const Algebra& alg = eng.algebra();
  FieldExpr J = eng.gen_field("J"), T = eng.gen_field("T");
  FieldExpr je = je_field(eng);
  FieldExpr dje = eng.derivative(je), d2je = eng.derivative(je, 2), d3je = eng.derivative(je, 3);
  FieldExpr u00 = capital_u(alg, 0, 0);
  FieldExpr phi_p = phi_plus(eng), phi_m = phi_minus(eng);
  auto W = [&](std::vector<FieldExpr> fs) { return eng.wick_chain(fs); };

  FieldExpr rhs;
  rhs -= eng.wick(phi_p, phi_m);
  rhs -= W({je, u00});
  rhs -= rf(3, 2) * W({J, J, dje});
  rhs += ((rf(3) + 2 * L) / rf(4)) * W({T, dje});
  rhs += ((rf(3) - 6 * L) / rf(8)) * W({eng.derivative(J), dje});
  rhs += ((rf(1) - 2 * L) / rf(4)) * W({J, d2je});
  rhs += ((L - 2 * L * L) / rf(24)) * d3je;
  rhs += eng.derivative(u00);
  rhs += rf(3, 2) * W({J, J, je, je});
  rhs -= ((rf(3) - 6 * L) / rf(8)) * W({eng.derivative(J), je, je});
  rhs -= ((rf(3) - 6 * L) / rf(4)) * W({J, dje, je});
  // the displayed :JJJJ: term sits in a run of J^E-words and only closes the
  // identity as the fourth Wick power of J^E
  rhs -= ((L - 2 * L * L) / rf(24)) * W({je, je, je, je});
  rhs += ((L - 2 * L * L) / rf(4)) * W({dje, je, je});
  rhs -= ((L - 2 * L * L) / rf(6)) * W({d2je, je});
  rhs -= ((L - 2 * L * L) / rf(8)) * W({dje, dje});
  rhs += ((rf(1) - 2 * L) / rf(4)) * W({J, je, je, je});
  rhs -= ((rf(3) + 2 * L) / rf(4)) * W({T, je, je});
  return {capital_u(alg, 0, 1), rhs};
}

}  // namespace

std::string default_data_dir() {
  namespace fs = std::filesystem;
#ifdef VXA_DATA_DIR
  if (fs::exists(fs::path(VXA_DATA_DIR) / "appendix_weight8.expr")) return VXA_DATA_DIR;
#endif
  for (const char* c : {"data", "../data", "../../data", "../../../data"})
    if (fs::exists(fs::path(c) / "appendix_weight8.expr")) return c;
  return "data";
}

std::vector<AcceptanceItem> run_acceptance(const AcceptanceOptions& opts, std::ostream* progress) {
  Runner r{opts, progress, {}};
  Algebra bp = bp_algebra();
  Engine eng(bp);
  Algebra bc = bc_system();
  Algebra wxe = tensor(bp, bc, "bp_bc");
  Engine ebc(bc);
  Engine ewxe(wxe);

  r.run("1", "OPE consistency (skew-symmetry + commutator identity) for W, E, WxE", [&] {
    for (const Engine* e : {&eng, &ebc, &ewxe}) {
      std::string err = e->check_consistency();
      if (!err.empty()) return std::make_pair(false, e->algebra().name + ": " + err);
    }
    return std::make_pair(true, std::string("all generator pairs and triples"));
  });

  r.run("2", "central charges and the T^H = 3/(4l) :JJ: resolution", [&] {
    FieldExpr T = eng.gen_field("T"), J = eng.gen_field("J");
    if (!(eng.nth(T, T, 3) == FieldExpr::vacuum(-(L * (rf(6) * L - 7)) / (rf(2) * L + 3))))
      return std::make_pair(false, std::string("T o_3 T"));
    FieldExpr tc = coset_virasoro(eng);
    RatFunc c = rf(-3) * (rf(2) * L - 1).pow(2) / (rf(2) * L + 3);
    if (!(eng.nth(tc, tc, 3) == FieldExpr::vacuum(c / 2)))
      return std::make_pair(false, std::string("T^C o_3 T^C"));
    for (long n = 0; n <= 3; ++n)
      if (!eng.nth(J, tc, n).is_zero()) return std::make_pair(false, std::string("J o_n T^C != 0"));
    FieldExpr wrong = T - (rf(4) / (rf(3) * L)) * eng.wick(J, J);
    bool wrong_fails = false;
    for (long n = 0; n <= 3; ++n)
      if (!eng.nth(J, wrong, n).is_zero()) wrong_fails = true;
    if (!wrong_fails) return std::make_pair(false, std::string("4/(3l) variant unexpectedly commutes"));
    return std::make_pair(true, std::string("c(T), c(T^C), commutant property; 4/(3l) variant rejected"));
  });

  r.run("3", "Appendix weight-8 relation (verbatim transcription + solver route)", [&] {
    std::ifstream f(std::filesystem::path(opts.data_dir) / "appendix_weight8.expr");
    if (!f) return std::make_pair(false, std::string("cannot open appendix_weight8.expr"));
    std::stringstream ss;
    ss << f.rdbuf();
    FieldExpr e = parse_expression(eng, ss.str());
    if (!e.is_zero())
      return std::make_pair(false, "transcribed relation normalizes to " +
                                       std::to_string(e.size()) + " nonzero terms");
    DecouplingResult d = solve_decoupling(eng, 1);
    if (!d.verified) return std::make_pair(false, std::string("solver relation failed verification"));
    RatFunc c1 = cn_closed_form(1);
    if (!(d.leading_coefficient * d.leading_coefficient == c1 * c1))
      return std::make_pair(false, std::string("U_{0,5} coefficient magnitude"));
    return std::make_pair(true, std::string("normalizes to zero; solver recovers |l(2l-1)/60| U_{0,5}"));
  });

  r.run("4", "closed form of C_n for n = 1..5, vanishing exactly at l in {0, 1/2}", [&] {
    for (long n = 1; n <= 5; ++n) {
      FieldExpr src = eng.wick(capital_u(bp, 0, 0), capital_u(bp, 1, n)) -
                      eng.wick(capital_u(bp, 0, n), capital_u(bp, 1, 0));
      RatFunc cn = cn_coefficients(eng, src, n).alternating_sum;
      RatFunc closed = cn_closed_form(n);
      if (!(cn * cn == closed * closed))
        return std::make_pair(false, "C_" + std::to_string(n) + " magnitude mismatch");
      if (!(cn.specialize(0) == 0) || !(cn.specialize(rat(1, 2)) == 0))
        return std::make_pair(false, "C_" + std::to_string(n) + " does not vanish at 0, 1/2");
      for (long v = 1; v <= 3; ++v)
        if (cn.specialize(v) == 0)
          return std::make_pair(false, "C_" + std::to_string(n) + " vanishes away from {0, 1/2}");
    }
    return std::make_pair(true, std::string("C_n = n(n+7)/(4!(n+3)(n+4)) l(2l-1) in magnitude, n = 1..5"));
  });

  r.run("5", "coefficient tables C^i_{n,j} for n = 2, 3", [&] {
    for (long n = 2; n <= 3; ++n) {
      std::string err = check_c_tables(eng, n);
      if (!err.empty()) return std::make_pair(false, err);
    }
    return std::make_pair(true, std::string("all entries match the displayed band formulas"));
  });

  r.run("6", "no premature relations: U_{0,m} independent for m <= 4", [&] {
    for (long m = 1; m <= 4; ++m) {
      GeneratorSet low = orbifold_generators(eng, m - 1);
      ExpressResult res = express_in_generators(eng, capital_u(bp, 0, m), low, 2);
      if (res.success)
        return std::make_pair(false, "U_{0," + std::to_string(m) + "} unexpectedly decouples");
      if (res.failure_functional.empty())
        return std::make_pair(false, "missing failure certificate at m=" + std::to_string(m));
    }
    return std::make_pair(true, std::string("solver returns failure certificates for m = 1..4"));
  });

  std::vector<CorrectionResult> corrections;
  r.run("7-corrections", std::string("unique primary commutant corrections U^C_i, i = 0..2") +
                             (opts.extended ? " (extended: i = 0..4)" : ""),
        [&] {
          long top = opts.extended ? 4 : 2;
          FieldExpr J = eng.gen_field("J");
          FieldExpr tc = coset_virasoro(eng);
          for (long i = 0; i <= top; ++i) {
            corrections.push_back(solve_correction(eng, i));
            const CorrectionResult& res = corrections.back();
            if (!res.unique) return std::make_pair(false, "correction not unique at i=" + std::to_string(i));
            if (!commutant_check(eng, res.corrected, J))
              return std::make_pair(false, "U^C not in Com(H) at i=" + std::to_string(i));
            if (!(eng.nth(tc, res.corrected, 1) == RatFunc(Rat(i + 3)) * res.corrected))
              return std::make_pair(false, "U^C not primary of weight i+3 at i=" + std::to_string(i));
            for (long nn = 2; Rat(nn) < Rat(i + 3) + 2; ++nn)
              if (!eng.nth(tc, res.corrected, nn).is_zero())
                return std::make_pair(false, "T^C o_n U^C != 0 at i=" + std::to_string(i));
          }
          return std::make_pair(true, std::string("existence, uniqueness, commutant and primary conditions"));
        });

  r.run("7-denominators", "every U^C_i denominator factor divides l * (the eight quadratics)", [&] {
    // Exact outcome: true for i = 0 (factor l) and i = 1 (l and 60x^2-104x-51),
    // but the unique primary U^C_2 carries the additional factors (l+1) and
    // (4l^2-24l+3) in both the free-monomial and the {J,T,U}-word coordinates,
    // certified by two independent solver routes. The stated catalog is
    // therefore incomplete at i = 2.
    for (const auto& res : corrections) {
      if (!res.factors_within_catalog) {
        std::string extra;
        for (const auto& f : res.denominator_factors) extra += " (" + poly_str(f) + ")";
        return std::make_pair(false, "factors outside the catalog at i=" + std::to_string(res.i) +
                                         "; observed monic factors:" + extra);
      }
    }
    return std::make_pair(true, std::string("all observed factors divide the catalog"));
  }, /*expected_fail=*/true);

  r.run("8", "power-field identities at l = 1 and l = 2", [&] {
    for (long ell : {1L, 2L}) {
      Algebra sp = specialize(bp, ell);
      Engine es(sp);
      FieldExpr J = es.gen_field("J"), T = es.gen_field("T");
      FieldExpr th = heisenberg_virasoro(eng);  // symbolic 3/(4l) :JJ:
      FieldExpr th_sp = specialize(th, ell);
      for (const char* g : {"G+", "G-"}) {
        long sgn = (g[1] == '+') ? 1 : -1;
        FieldExpr p = power_field(es, g, 2 * ell);
        if (!(es.nth(J, p, 0) == RatFunc(Rat(sgn * 2 * ell)) * p))
          return std::make_pair(false, std::string("J_0 eigenvalue on (") + g + ")^{2l}");
        if (!(es.nth(T, p, 1) == RatFunc(Rat(3 * ell)) * p))
          return std::make_pair(false, std::string("T o_1 (") + g + ")^{2l}");
        if (!(es.nth(th_sp, p, 1) == RatFunc(Rat(3 * ell)) * p))
          return std::make_pair(false, std::string("T^H o_1 (") + g + ")^{2l}");
        for (long nn = 2; Rat(nn) < Rat(3 * ell) + 2; ++nn)
          if (!es.nth(T, p, nn).is_zero() || !es.nth(th_sp, p, nn).is_zero())
            return std::make_pair(false, std::string("T/T^H o_n (") + g + ")^{2l} != 0, n >= 2");
      }
      // G^- o_1 (G+)^{2l+1} and its mirror, specialized consistently
      FieldExpr gp = power_field(es, "G+", 2 * ell), gm = power_field(es, "G-", 2 * ell);
      RatFunc pref = RatFunc(Rat((2 * ell + 1) * (2 * ell + 1), 2));
      FieldExpr lhs_p = es.nth(es.gen_field("G-"), power_field(es, "G+", 2 * ell + 1), 1);
      FieldExpr rhs_p = pref * (es.derivative(gp) - rf(3) * es.wick(J, gp));
      if (!(lhs_p == rhs_p)) return std::make_pair(false, std::string("G- o_1 (G+)^{2l+1}"));
      FieldExpr lhs_m = es.nth(es.gen_field("G+"), power_field(es, "G-", 2 * ell + 1), 1);
      FieldExpr rhs_m = (RatFunc(-1) * pref) * (es.derivative(gm) + rf(3) * es.wick(J, gm));
      if (!(lhs_m == rhs_m)) return std::make_pair(false, std::string("G+ o_1 (G-)^{2l+1}"));
    }
    return std::make_pair(true, std::string("eigenvalues, annihilation, and the o_1 formulas at l = 1, 2"));
  });

  r.run("9", "tensor-product identities (diag Heisenberg commutant)", [&] {
    FieldExpr jd = jdiag_field(ewxe);
    if (!(ewxe.nth(jd, jd, 1) == FieldExpr::vacuum((rf(3) + 2 * L) / 3)))
      return std::make_pair(false, std::string("J^diag level"));
    // phi^pm_{0,1} = pm :phi^pm_{0,0} J^E:
    FieldExpr je = je_field(ewxe);
    if (!(phi_plus(ewxe, 1) == ewxe.wick(phi_plus(ewxe), je)))
      return std::make_pair(false, std::string("phi^+_{0,1} recursion"));
    if (!(phi_minus(ewxe, 1) == RatFunc(-1) * ewxe.wick(phi_minus(ewxe), je)))
      return std::make_pair(false, std::string("phi^-_{0,1} recursion"));
    // the long U_{0,1} relation
    auto [u01, rhs] = u01_long_relation(ewxe);
    if (!(u01 == rhs)) return std::make_pair(false, std::string("long U_{0,1} relation"));
    // commutant membership of the generators of D^l
    CorrectionResult corr = solve_correction(eng, 0);
    FieldExpr ud = corr.corrected;  // bp monomials embed in the tensor algebra
    for (const FieldExpr& v : {jd_field(ewxe), td_field(ewxe), phi_plus(ewxe), phi_minus(ewxe), ud})
      if (!commutant_check(ewxe, v, jd))
        return std::make_pair(false, std::string("J^diag does not annihilate a D-generator"));
    return std::make_pair(true, std::string("levels, phi recursions, the long U_{0,1} identity, commutant"));
  });

  r.run("10", "mode brackets and the Jacobi identity", [&] {
    ModeBracket plus = mode_bracket(eng, eng.gen_field("J"), eng.gen_field("G+"));
    ModeBracket minus = mode_bracket(eng, eng.gen_field("J"), eng.gen_field("G-"));
    Monomial gp = Monomial::single(bp.gen_index("G+"), 0), gm = Monomial::single(bp.gen_index("G-"), 0);
    if (!(plus.fields.size() == 1 && plus.fields.begin()->second == SymPoly::constant(1, rf(1)) &&
          plus.fields.begin()->first == gp && plus.central.is_zero()))
      return std::make_pair(false, std::string("[J_m, G+_n]"));
    if (!(minus.fields.size() == 1 && minus.fields.begin()->second == SymPoly::constant(1, rf(-1)) &&
          minus.fields.begin()->first == gm && minus.central.is_zero()))
      return std::make_pair(false, std::string("[J_m, G-_n]"));

    ModeBracket br = mode_bracket(eng, eng.gen_field("G+"), eng.gen_field("G-"));
    Monomial tmono = Monomial::single(bp.gen_index("T"), 0);
    Monomial jj({Letter{static_cast<std::uint16_t>(bp.gen_index("J")), 0},
                 Letter{static_cast<std::uint16_t>(bp.gen_index("J")), 0}});
    if (!(br.fields.at(tmono) == SymPoly::constant(1, -(L + rat(3, 2)))))
      return std::make_pair(false, std::string("T^C coefficient in [G+,G-]"));
    RatFunc jj_direct = br.fields.at(jj).terms().begin()->second;
    RatFunc jj_split = jj_direct + (-(L + rat(3, 2))) * (rf(3) / (rf(4) * L));
    if (!(jj_split == (rf(9) / (rf(4) * L)) * (L - rat(1, 2))))
      return std::make_pair(false, std::string("(J^2) coefficient in [G+,G-]"));
    ModeBracket shifted = mode_bracket(eng, eng.gen_field("G+"), eng.gen_field("G-"), rat(1, 2));
    SymPoly m = SymPoly::symbol(1, 0);
    if (!(shifted.central == (L * (L - rat(1, 2))) * (m * m + m)))
      return std::make_pair(false, std::string("central term after the m -> m+1/2 shift"));

    for (const Engine* e : {&eng, &ebc, &ewxe}) {
      const auto& gens = e->algebra().gens;
      for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = 0; b < gens.size(); ++b)
          for (std::size_t c = 0; c < gens.size(); ++c) {
            std::string err = jacobi_check(*e, e->gen_field(static_cast<int>(a)),
                                           e->gen_field(static_cast<int>(b)),
                                           e->gen_field(static_cast<int>(c)));
            if (!err.empty())
              return std::make_pair(false, e->algebra().name + " Jacobi (" + gens[a].name + "," +
                                               gens[b].name + "," + gens[c].name + "): " + err);
          }
    }
    return std::make_pair(true, std::string("brackets match; Jacobi exact on all generator-mode triples"));
  });

  r.run("11a-literal", "character coefficients equal free counts below 9/2 (l=1), 15/2 (l=2)", [&] {
    // Stated bound taken literally. The maximal ideal reaches weight 2l+1 < 3(2l+1)/2
    // through high modes of (G^pm)^{2l+1} (e.g. (G-)^3 o_5 (G+)^3 != 0 at l=1,
    // weight 3), so the simple quotient deviates from free counting inside the
    // stated range; see 11a-ideal-bound for the corrected comparison.
    for (long ell : {1L, 2L}) {
      Algebra sp = specialize(bp, ell);
      Rat bound = Rat(3 * (2 * ell + 1)) / 2;
      JacobiSeries ch = bp_character_normalized(ell, bound);
      for (Rat w = 0; w < bound; w += rat(1, 2))
        for (long q = -2 * ell - 1; q <= 2 * ell + 1; ++q) {
          long expected = static_cast<long>(weight_basis(sp, w, Rat(q)).size());
          if (!(ch.component(q).coeff(w) == expected))
            return std::make_pair(false, "first discrepancy at l=" + std::to_string(ell) + ", weight " +
                                             rat_str(w) + ", charge " + std::to_string(q) + ": ideal of (G^pm)^" +
                                             std::to_string(2 * ell + 1) + " reaches below the stated bound");
        }
    }
    return std::make_pair(true, std::string("free counts reproduced on the stated range"));
  }, /*expected_fail=*/true);

  r.run("11a-ideal-bound", "character coefficients equal free counts below the first ideal weight 2l+1",
        [&] {
          for (long ell : {1L, 2L}) {
            Algebra sp = specialize(bp, ell);
            Engine es(sp);
            Rat bound = Rat(2 * ell + 1);
            JacobiSeries ch = bp_character_normalized(ell, bound + 1);
            for (Rat w = 0; w < bound; w += rat(1, 2))
              for (long q = -2 * ell - 1; q <= 2 * ell + 1; ++q) {
                long expected = static_cast<long>(weight_basis(sp, w, Rat(q)).size());
                if (!(ch.component(q).coeff(w) == expected))
                  return std::make_pair(false, "mismatch below the first ideal element at l=" +
                                                   std::to_string(ell));
              }
            // the first deficit occurs exactly at (2l+1, 0) and is witnessed by a
            // nonzero ideal element (G-)^{2l+1} o_{4l+1} (G+)^{2l+1}
            FieldExpr wit = es.nth(power_field(es, "G-", 2 * ell + 1),
                                   power_field(es, "G+", 2 * ell + 1), 4 * ell + 1);
            if (wit.is_zero() || !(sp.homogeneous_weight(wit) == Rat(2 * ell + 1)))
              return std::make_pair(false, "ideal witness missing at l=" + std::to_string(ell));
            long free_dim = static_cast<long>(weight_basis(sp, bound, 0).size());
            if (!(ch.component(0).coeff(bound) < free_dim))
              return std::make_pair(false, std::string("expected deficit at weight 2l+1 not present"));
          }
          return std::make_pair(true, std::string("agreement below 2l+1; first deficit witnessed by an "
                                                  "explicit ideal element"));
        });

  r.run("11b-decomposition", "ch W_l = sum_s ch L_{3Lam_s} theta_{3s}/eta to O(q^8), l = 1, 2", [&] {
    for (long ell : {1L, 2L}) {
      DecompositionReport rep = verify_decomposition(ell, 8);
      if (!rep.matched)
        return std::make_pair(false, "decomposition mismatch at l=" + std::to_string(ell) + ": " + rep.detail);
      if (!rep.inverse_ok || !rep.orthogonality_ok)
        return std::make_pair(false, "inverse/orthogonality failed at l=" + std::to_string(ell) + " " + rep.detail);
    }
    return std::make_pair(true,
                          std::string("both levels close to O(q^8); calibration: theta j>=0, det signs, "
                                      "charge z-grading, theta_{3s} indexing"));
  });

  r.run("11c-corollary", "corollary identity at roots of unity, l=1 (s=0,1), l=2 (s=0..3)", [&] {
    for (long ell : {1L, 2L})
      for (long s = 0; s < 2 * ell; ++s) {
        CorollaryReport rep = verify_corollary(ell, s, 8);
        if (!rep.matched)
          return std::make_pair(false, "corollary fails at l=" + std::to_string(ell) + ", s=" + std::to_string(s));
      }
    return std::make_pair(true, std::string("exact in cyclotomic arithmetic"));
  });

  r.run("12", "property suites, 1000 randomized cases each", [&] {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> nd(-3, 4);
    // grading + weak filtration
    for (int i = 0; i < 1000; ++i) {
      Monomial ma = random_mono(rng, eng, 3, 2), mb = random_mono(rng, eng, 3, 2);
      long n = nd(rng);
      FieldExpr p = eng.nth(FieldExpr::term(ma, rf(1)), FieldExpr::term(mb, rf(1)), n);
      if (!p.is_zero()) {
        if (!(bp.homogeneous_weight(p) == bp.weight(ma) + bp.weight(mb) - n - 1))
          return std::make_pair(false, std::string("grading: weight"));
        if (!(bp.homogeneous_charge(p) == bp.charge(ma) + bp.charge(mb)))
          return std::make_pair(false, std::string("grading: charge"));
      }
      if (bp.max_filtration_degree(p) > bp.filtration_degree(ma) + bp.filtration_degree(mb))
        return std::make_pair(false, std::string("weak filtration bound"));
    }
    // vacuum axioms + idempotence
    for (int i = 0; i < 1000; ++i) {
      Monomial m = random_mono(rng, eng, 3, 2);
      FieldExpr a = FieldExpr::term(m, rf(1));
      if (!(eng.nth(a, eng.vacuum(), -1) == a) || !(eng.nth(eng.vacuum(), a, -1) == a))
        return std::make_pair(false, std::string("vacuum axioms"));
      if (!eng.nth(a, eng.vacuum(), 1).is_zero()) return std::make_pair(false, std::string("a o_1 1 != 0"));
      if (!(eng.normalize_word(m.letters) == a))
        return std::make_pair(false, std::string("normalization idempotence"));
    }
    // Leibniz
    for (int i = 0; i < 1000; ++i) {
      Monomial ma = random_mono(rng, eng, 2, 1), mb = random_mono(rng, eng, 2, 1);
      long n = nd(rng);
      FieldExpr a = FieldExpr::term(ma, rf(1)), b = FieldExpr::term(mb, rf(1));
      if (!(eng.derivative(eng.nth(a, b, n)) ==
            eng.nth(eng.derivative(a), b, n) + eng.nth(a, eng.derivative(b), n)))
        return std::make_pair(false, std::string("Leibniz"));
    }
    // parse/print round-trip
    for (int i = 0; i < 1000; ++i) {
      FieldExpr e;
      for (int t = 0; t < 3; ++t) {
        std::uniform_int_distribution<int> cd(-6, 6);
        Rat c = rat(cd(rng), 1 + (i % 3));
        e.add(random_mono(rng, eng, 3, 2), RatFunc(c) * (rng() % 2 ? L : rf(1)));
      }
      if (!(parse_expression(eng, fieldexpr_str(bp, e)) == e))
        return std::make_pair(false, std::string("parse/print round-trip"));
    }
    return std::make_pair(true, std::string("grading, filtration, vacuum, idempotence, Leibniz, round-trip"));
  });

  return r.items;
}

}  // namespace vxa
