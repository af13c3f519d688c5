#include <doctest.h>

#include "test_util.hpp"
#include "vxa/catalog.hpp"
#include "vxa/mode_bracket.hpp"

using namespace vxa;

namespace {

const RatFunc L = RatFunc::ell();

SymPoly c1(RatFunc v) { return SymPoly::constant(1, std::move(v)); }
SymPoly m_sym() { return SymPoly::symbol(1, 0); }

}  // namespace

TEST_CASE("[J_m, G^pm_n] = pm G^pm_{m+n}") {
  Algebra alg = bp_algebra();
  Engine eng(alg);
  ModeBracket plus = mode_bracket(eng, eng.gen_field("J"), eng.gen_field("G+"));
  REQUIRE(plus.fields.size() == 1);
  CHECK(plus.fields.begin()->first == Monomial::single(alg.gen_index("G+"), 0));
  CHECK(plus.fields.begin()->second == c1(RatFunc(1)));
  CHECK(plus.central.is_zero());
  ModeBracket minus = mode_bracket(eng, eng.gen_field("J"), eng.gen_field("G-"));
  CHECK(minus.fields.begin()->second == c1(RatFunc(-1)));
}

TEST_CASE("[J_m, J_n] = (2l/3) m delta_{m+n,0}") {
  Algebra alg = bp_algebra();
  Engine eng(alg);
  ModeBracket br = mode_bracket(eng, eng.gen_field("J"), eng.gen_field("J"));
  CHECK(br.fields.empty());
  CHECK(br.central == (RatFunc(2) * L / 3) * m_sym());
}

TEST_CASE("[T_m, J_n] decomposition") {
  Algebra alg = bp_algebra();
  Engine eng(alg);
  ModeBracket br = mode_bracket(eng, eng.gen_field("T"), eng.gen_field("J"));
  // sum binom(m+1, j)(T o_j J): dJ + (m+1) J at mode m+n
  CHECK(br.fields.at(Monomial::single(alg.gen_index("J"), 1)) == c1(RatFunc(1)));
  CHECK(br.fields.at(Monomial::single(alg.gen_index("J"), 0)) == m_sym() + c1(RatFunc(1)));
  CHECK(br.central.is_zero());
}

TEST_CASE("[G+_m, G-_n] matches the coset-split bracket") {
  Algebra alg = bp_algebra();
  Engine eng(alg);
  FieldExpr gp = eng.gen_field("G+"), gm = eng.gen_field("G-");
  ModeBracket br = mode_bracket(eng, gp, gm);

  // T-content is -(l+3/2) T_{m+n}; rewriting T = T^C + (3/(4l)):JJ: shifts the
  // :JJ: coefficient to (9/(4l))(l - 1/2)
  Monomial tmono = Monomial::single(alg.gen_index("T"), 0);
  Monomial jj({Letter{static_cast<std::uint16_t>(alg.gen_index("J")), 0},
               Letter{static_cast<std::uint16_t>(alg.gen_index("J")), 0}});
  SymPoly t_coeff = br.fields.at(tmono);
  CHECK(t_coeff == c1(-(L + rat(3, 2))));
  RatFunc jj_direct = br.fields.at(jj).terms().begin()->second;
  RatFunc tc_coeff = -(L + rat(3, 2));
  RatFunc jj_after = jj_direct + tc_coeff * (RatFunc(3) / (RatFunc(4) * L));
  CHECK(jj_after == (RatFunc(9) / (RatFunc(4) * L)) * (L - rat(1, 2)));

  // central: l(l-1/2)(m^2 - 1/4) in the half-integer convention
  SymPoly m = m_sym();
  RatFunc pref = L * (L - rat(1, 2));
  CHECK(br.central == pref * (m * m - c1(RatFunc(rat(1, 4)))));

  // integer-moded (shifted) convention: l(l-1/2) m(m+1)
  ModeBracket shifted = mode_bracket(eng, gp, gm, rat(1, 2));
  CHECK(shifted.central == pref * (m * m + m));
}

TEST_CASE("mode bracket rejects non-homogeneous left arguments") {
  Algebra alg = bp_algebra();
  Engine eng(alg);
  FieldExpr bad = eng.gen_field("J") + eng.gen_field("T");
  CHECK_THROWS_AS(mode_bracket(eng, bad, eng.gen_field("J")), std::invalid_argument);
}

TEST_CASE("Jacobi identity on all generator mode triples") {
  Algebra bp = bp_algebra();
  Engine eng(bp);
  std::vector<FieldExpr> gens;
  for (std::size_t g = 0; g < bp.gens.size(); ++g) gens.push_back(eng.gen_field(static_cast<int>(g)));
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& c : gens) CHECK(jacobi_check(eng, a, b, c) == "");
}

TEST_CASE("Jacobi identity for the bc system (odd parities)") {
  Algebra bc = bc_system();
  Engine eng(bc);
  FieldExpr b = eng.gen_field("b"), c = eng.gen_field("c");
  for (const auto& x : {b, c})
    for (const auto& y : {b, c})
      for (const auto& z : {b, c}) CHECK(jacobi_check(eng, x, y, z) == "");
}
