#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "vxa/acceptance.hpp"
#include "vxa/characters.hpp"
#include "vxa/mode_bracket.hpp"
#include "vxa/orbifold.hpp"
#include "vxa/parser.hpp"
#include "vxa/printer.hpp"
#include "vxa/report_json.hpp"

using nlohmann::json;
using namespace vxa;

namespace {

struct Common {
  std::string algebra = "bp";
  std::string ell = "symbolic";
  std::string format = "text";
  std::string cache_path;
  int threads = 1;
};

Algebra load_named_algebra(const std::string& name) {
  if (name == "bp") return bp_algebra();
  if (name == "bc") return bc_system();
  if (name == "bp*bc") return tensor(bp_algebra(), bc_system(), "bp_bc");
  return load_algebra_file(name);  // treat as a path to an .alg file
}

Algebra resolve_algebra(const Common& c) {
  Algebra a = load_named_algebra(c.algebra);
  if (c.ell != "symbolic") return specialize(a, rat_from_string(c.ell));
  return a;
}

std::string cache_file(const Common& c) {
  if (!c.cache_path.empty()) return c.cache_path;
  const char* env = std::getenv("VXA_CACHE");
  return env ? env : "";
}

void load_cache_if_any(Engine& eng, const Common& c) {
  std::string path = cache_file(c);
  if (path.empty()) return;
  std::ifstream f(path);
  if (f) eng.load_cache(f);
}

void save_cache_if_any(Engine& eng, const Common& c) {
  std::string path = cache_file(c);
  if (path.empty()) return;
  std::ofstream f(path);
  if (f) eng.save_cache(f);
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string series_str(const JacobiSeries& js, bool z_graded, std::size_t max_terms = 30) {
  if (!z_graded) return js.at_z1().str(max_terms);
  std::string out;
  for (const auto& [z, s] : js.components())
    out += "z^" + std::to_string(z) + ": " + s.str(max_terms) + "\n";
  return out;
}

json combo_json(const Algebra& alg, const GeneratorSet& gens,
                const std::vector<std::pair<GenWord, RatFunc>>& combo) {
  json arr = json::array();
  for (const auto& [word, c] : combo)
    arr.push_back({{"word", genword_str(gens, word)}, {"coefficient", ratfunc_str(c)}});
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact OPE and character calculator for Bershadsky-Polyakov style vertex algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--algebra", common.algebra, "bp, bc, bp*bc, or a path to an .alg file");
  app.add_option("--ell", common.ell, "'symbolic' or an exact rational value for l");
  app.add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache", common.cache_path, "computation cache file (or env VXA_CACHE)");
  app.add_option("--threads", common.threads, "parallel verification tasks");

  // --- ope / normal-order ---
  std::string expr_a, expr_b, expr_text;
  long nth_index = 0;
  auto* ope = app.add_subcommand("ope", "compute A o_n B for two expressions");
  ope->add_option("A", expr_a)->required();
  ope->add_option("B", expr_b)->required();
  ope->add_option("-n,--n", nth_index, "product index")->required();

  auto* normal = app.add_subcommand("normal-order", "normalize an expression");
  normal->add_option("expr", expr_text)->required();

  std::string relation_file;
  auto* verify_rel = app.add_subcommand("verify-relation", "check that an expression file normalizes to zero");
  verify_rel->add_option("--file", relation_file)->required();

  long cn_n = 1;
  bool telescoping = false;
  auto* cn = app.add_subcommand("cn-table", "C_{n,i} table of :U00 U1n: - :U0n U10:");
  cn->add_option("-n,--n", cn_n)->required();
  cn->add_flag("--telescoping", telescoping, "also print the four telescoping tables");

  long dec_n = 1;
  auto* dec = app.add_subcommand("solve-decoupling", "decoupling relation for U_{0,n+4}");
  dec->add_option("-n,--n", dec_n)->required();

  long corr_i = 0;
  auto* corr = app.add_subcommand("solve-correction", "commutant correction U^C_i");
  corr->add_option("-i,--i", corr_i)->required();

  std::string offset = "0";
  auto* mode = app.add_subcommand("mode-bracket", "[A_m, B_n] with polynomial coefficients");
  mode->add_option("A", expr_a)->required();
  mode->add_option("B", expr_b)->required();
  mode->add_option("--offset", offset, "mode-lattice offset of A (e.g. 1/2)");

  long order = 8;
  long ell_int = 1;
  bool z_graded = false;
  auto* character = app.add_subcommand("character", "character of the simple quotient");
  character->add_option("--order", order);
  character->add_flag("--z-power-grading", z_graded, "print per-z components");

  auto* vdec = app.add_subcommand("verify-decomposition", "Theorem: ch W = sum ch L theta/eta");
  vdec->add_option("--order", order);

  long sector = 0;
  bool all_sectors = false;
  auto* vcor = app.add_subcommand("verify-corollary", "character identity at roots of unity");
  vcor->add_option("--order", order);
  vcor->add_option("--s", sector);
  vcor->add_flag("--all", all_sectors, "verify every sector 0..2l-1");

  bool extended = false;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_flag("--extended", extended, "include the slow i=3,4 correction solves");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*character || *vdec || *vcor) {
      if (common.algebra != "bp")
        throw std::runtime_error("character commands are specific to the bp algebra");
      if (common.ell == "symbolic")
        throw std::runtime_error("character commands need an integer --ell");
      ell_int = to_long(rat_from_string(common.ell));
    }

    if (*ope || *normal || *verify_rel) {
      Algebra alg = resolve_algebra(common);
      Engine eng(alg);
      load_cache_if_any(eng, common);
      if (*ope) {
        FieldExpr r = eng.nth(parse_expression(eng, expr_a), parse_expression(eng, expr_b), nth_index);
        emit(common, {{"result", fieldexpr_str(alg, r)}}, fieldexpr_str(alg, r) + "\n");
      } else if (*normal) {
        FieldExpr r = parse_expression(eng, expr_text);
        emit(common, {{"result", fieldexpr_str(alg, r)}}, fieldexpr_str(alg, r) + "\n");
      } else {
        std::ifstream f(relation_file);
        if (!f) throw std::runtime_error("cannot open " + relation_file);
        std::stringstream ss;
        ss << f.rdbuf();
        FieldExpr r = parse_expression(eng, ss.str());
        bool zero = r.is_zero();
        emit(common, {{"zero", zero}, {"residual_terms", r.size()}},
             zero ? "relation holds: normal form is zero\n"
                  : "relation FAILS: " + std::to_string(r.size()) + " residual terms\n");
        save_cache_if_any(eng, common);
        return zero ? 0 : 1;
      }
      save_cache_if_any(eng, common);
      return 0;
    }

    if (*cn) {
      Algebra alg = resolve_algebra(common);
      Engine eng(alg);
      load_cache_if_any(eng, common);
      FieldExpr src = eng.wick(capital_u(alg, 0, 0), capital_u(alg, 1, cn_n)) -
                      eng.wick(capital_u(alg, 0, cn_n), capital_u(alg, 1, 0));
      CnTable t = cn_coefficients(eng, src, cn_n);
      json j{{"n", cn_n}, {"C_n", ratfunc_str(t.alternating_sum)}};
      std::string text = "C_" + std::to_string(cn_n) + " = " + ratfunc_str(t.alternating_sum) + "\n";
      json coeffs = json::array();
      for (long i = 0; i <= cn_n + 4; ++i) {
        coeffs.push_back(ratfunc_str(t.coeff[i]));
        text += "  C_{" + std::to_string(cn_n) + "," + std::to_string(i) + "} = " + ratfunc_str(t.coeff[i]) + "\n";
      }
      j["coefficients"] = coeffs;
      if (telescoping) {
        TelescopingTerms tt = telescoping_terms(eng, cn_n);
        json tables = json::array();
        for (int i = 0; i < 4; ++i) {
          json row = json::array();
          text += "  C^" + std::to_string(i + 1) + ":";
          for (long jx = 0; jx <= cn_n + 4; ++jx) {
            row.push_back(ratfunc_str(tt.tables[i].coeff[jx]));
            text += " " + ratfunc_str(tt.tables[i].coeff[jx]);
          }
          text += "\n";
          tables.push_back(row);
        }
        j["telescoping"] = tables;
      }
      emit(common, j, text);
      save_cache_if_any(eng, common);
      return 0;
    }

    if (*dec) {
      Algebra alg = resolve_algebra(common);
      Engine eng(alg);
      load_cache_if_any(eng, common);
      DecouplingResult r = solve_decoupling(eng, dec_n);
      json j{{"n", r.n},
             {"target", r.target},
             {"no_decoupling", r.no_decoupling},
             {"leading_coefficient", ratfunc_str(r.leading_coefficient)},
             {"verified", r.verified}};
      std::string text;
      if (r.no_decoupling) {
        text = "no decoupling relation: the canonical coefficient vanishes at this level\n";
      } else {
        j["remainder"] = combo_json(alg, r.gens, r.remainder);
        text = ":U_{0,0} U_{1," + std::to_string(r.n) + "}: - :U_{0," + std::to_string(r.n) +
               "} U_{1,0}: = (" + ratfunc_str(r.leading_coefficient) + ") " + r.target + " + remainder\n";
        text += "remainder over {J, T, U_{0,0..4}} (" + std::to_string(r.remainder.size()) + " words):\n";
        for (const auto& [word, c] : r.remainder)
          text += "  " + ratfunc_str(c) + " * " + genword_str(r.gens, word) + "\n";
        text += r.verified ? "verified: substitution reproduces the source exactly\n"
                           : "WARNING: verification failed\n";
      }
      emit(common, j, text);
      save_cache_if_any(eng, common);
      return r.no_decoupling || r.verified ? 0 : 1;
    }

    if (*corr) {
      Algebra alg = resolve_algebra(common);
      Engine eng(alg);
      load_cache_if_any(eng, common);
      CorrectionResult r = solve_correction(eng, corr_i);
      json j{{"i", r.i}, {"unique", r.unique}, {"within_catalog", r.factors_within_catalog}};
      json factors = json::array();
      std::string text = "U^C_" + std::to_string(r.i) + " = U_{0," + std::to_string(r.i) + "} + omega,  omega = " +
                         fieldexpr_str(alg, r.omega) + "\n";
      text += std::string("unique: ") + (r.unique ? "yes" : "no") + "\n";
      text += "denominator factors:";
      for (const auto& f : r.denominator_factors) {
        factors.push_back(poly_str(f));
        text += "  (" + poly_str(f) + ")";
      }
      text += r.factors_within_catalog ? "\nall factors divide l * (the eight catalog quadratics)\n"
                                       : "\nWARNING: factor outside the catalog\n";
      j["denominator_factors"] = factors;
      j["omega"] = fieldexpr_str(alg, r.omega);
      emit(common, j, text);
      save_cache_if_any(eng, common);
      return 0;
    }

    if (*mode) {
      Algebra alg = resolve_algebra(common);
      Engine eng(alg);
      load_cache_if_any(eng, common);
      ModeBracket br = mode_bracket(eng, parse_expression(eng, expr_a), parse_expression(eng, expr_b),
                                    rat_from_string(offset));
      std::string text = mode_bracket_str(eng, br) + "\n";
      emit(common, {{"bracket", mode_bracket_str(eng, br)}}, text);
      save_cache_if_any(eng, common);
      return 0;
    }

    if (*character) {
      BpCalibration calib;
      JacobiSeries ch = bp_character_normalized(ell_int, Rat(order), &calib);
      json j{{"ell", ell_int},
             {"order", order},
             {"calibration",
              {{"theta_product_from", calib.theta_from_zero ? 0 : 1},
               {"weyl_signs", calib.weyl_signs ? "det" : "none"},
               {"q_shift", rat_str(calib.q_shift)},
               {"leading_scale", rat_str(calib.leading_scale)}}},
             {"series", series_str(ch, z_graded)}};
      emit(common, j, series_str(ch, z_graded) + "\n");
      return 0;
    }

    if (*vdec) {
      DecompositionReport rep = verify_decomposition(ell_int, Rat(order));
      json j = to_json(rep);
      std::string text = "decomposition at l=" + std::to_string(rep.ell) + ": " +
                         (rep.matched ? "MATCHES" : "MISMATCH") + " to O(q^" + rat_str(rep.order) + ")\n" +
                         "inverse formula: " + (rep.inverse_ok ? "ok" : "FAILED") +
                         ", orthogonality kernel: " + (rep.orthogonality_ok ? "ok" : "FAILED") + "\n";
      emit(common, j, text);
      return rep.matched && rep.inverse_ok && rep.orthogonality_ok ? 0 : 1;
    }

    if (*vcor) {
      std::vector<long> sectors;
      if (all_sectors)
        for (long s = 0; s < 2 * ell_int; ++s) sectors.push_back(s);
      else
        sectors.push_back(sector);
      std::vector<std::future<CorollaryReport>> futures;
      for (long s : sectors)
        futures.push_back(std::async(common.threads > 1 ? std::launch::async : std::launch::deferred,
                                     [=] { return verify_corollary(ell_int, s, Rat(order)); }));
      bool all_ok = true;
      json arr = json::array();
      std::string text;
      for (auto& f : futures) {
        CorollaryReport rep = f.get();
        all_ok = all_ok && rep.matched;
        arr.push_back(to_json(rep));
        text += "corollary at l=" + std::to_string(rep.ell) + ", s=" + std::to_string(rep.s) + ": " +
                (rep.matched ? "MATCHES" : "MISMATCH") + " to O(q^" + rat_str(rep.order) + ")\n";
      }
      emit(common, arr, text);
      return all_ok ? 0 : 1;
    }

    if (*selftest) {
      AcceptanceOptions opts;
      opts.extended = extended;
      opts.threads = common.threads;
      opts.data_dir = default_data_dir();
      auto items = run_acceptance(opts, common.format == "text" ? &std::cout : nullptr);
      if (common.format == "json") {
        json arr = json::array();
        for (const auto& it : items)
          arr.push_back({{"id", it.id},
                         {"name", it.name},
                         {"pass", it.pass},
                         {"expected_fail", it.expected_fail},
                         {"seconds", it.seconds},
                         {"detail", it.detail}});
        std::cout << arr.dump(2) << "\n";
      }
      for (const auto& it : items)
        if (!it.pass && !it.expected_fail) return 1;
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
