#include <doctest.h>

#include "test_util.hpp"
#include "vxa/catalog.hpp"
#include "vxa/printer.hpp"

using namespace vxa;

namespace {

const RatFunc L = RatFunc::ell();

struct Fixture {
  Algebra alg = bp_algebra();
  Engine eng{alg};
  FieldExpr T = eng.gen_field("T");
  FieldExpr J = eng.gen_field("J");
  FieldExpr Gp = eng.gen_field("G+");
  FieldExpr Gm = eng.gen_field("G-");
};

FieldExpr mono(const Algebra& alg, std::initializer_list<std::pair<const char*, int>> letters) {
  std::vector<Letter> ls;
  for (auto& [name, der] : letters)
    ls.push_back(Letter{static_cast<std::uint16_t>(alg.gen_index(name)), static_cast<std::uint16_t>(der)});
  return FieldExpr::term(Monomial(std::move(ls)), RatFunc(1));
}

}  // namespace

TEST_CASE("defining OPE products of the BP presentation") {
  Fixture f;
  CHECK(f.eng.nth(f.J, f.J, 1) == FieldExpr::vacuum(RatFunc(2) * L / 3));
  CHECK(f.eng.nth(f.J, f.J, 0).is_zero());
  for (long n = 0; n <= 4; ++n) {
    CHECK(f.eng.nth(f.Gp, f.Gp, n).is_zero());
    CHECK(f.eng.nth(f.Gm, f.Gm, n).is_zero());
  }
  FieldExpr expect = RatFunc(3) * mono(f.alg, {{"J", 0}, {"J", 0}}) +
                     (RatFunc(rat(3, 4)) * (RatFunc(2) * L - 1)) * mono(f.alg, {{"J", 1}}) -
                     (L + rat(3, 2)) * mono(f.alg, {{"T", 0}});
  CHECK(f.eng.nth(f.Gp, f.Gm, 0) == expect);
  CHECK(f.eng.nth(f.Gp, f.Gm, 2) == FieldExpr::vacuum(L * (RatFunc(2) * L - 1)));
  CHECK(f.eng.nth(f.T, f.T, 3) ==
        FieldExpr::vacuum(-(L * (RatFunc(6) * L - 7)) / (RatFunc(2) * L + 3)));
  CHECK(f.eng.nth(f.T, f.Gp, 1) == rat(3, 2) * f.Gp);
}

TEST_CASE("nth product against a composite: J o_1 :JJ: = (4l/3) J") {
  Fixture f;
  FieldExpr jj = f.eng.wick(f.J, f.J);
  CHECK(jj == mono(f.alg, {{"J", 0}, {"J", 0}}));
  CHECK(f.eng.nth(f.J, jj, 1) == (RatFunc(4) * L / 3) * f.J);
}

TEST_CASE("vacuum axioms") {
  Fixture f;
  FieldExpr one = f.eng.vacuum();
  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    Monomial m = testutil::random_monomial(rng, f.eng);
    FieldExpr a = FieldExpr::term(m, RatFunc(1));
    CHECK(f.eng.nth(a, one, -1) == a);
    CHECK(f.eng.nth(one, a, -1) == a);
    for (long n = 0; n <= 3; ++n) CHECK(f.eng.nth(a, one, n).is_zero());
  }
}

TEST_CASE("derivative basics and U_{i,j} relations") {
  Fixture f;
  CHECK(f.eng.derivative(f.eng.vacuum()).is_zero());
  CHECK(f.eng.derivative(f.J) == mono(f.alg, {{"J", 1}}));
  FieldExpr u00 = capital_u(f.alg, 0, 0);
  FieldExpr u01 = capital_u(f.alg, 0, 1);
  FieldExpr u10 = capital_u(f.alg, 1, 0);
  FieldExpr u02 = capital_u(f.alg, 0, 2);
  FieldExpr u11 = capital_u(f.alg, 1, 1);
  CHECK(f.eng.derivative(u00) == u10 + u01);
  CHECK(u11 == f.eng.derivative(u01) - u02);  // U_{1,1} = d U_{0,1} - U_{0,2}
}

TEST_CASE("wick products of composites stay canonical") {
  Fixture f;
  FieldExpr jj = f.eng.wick(f.J, f.J);
  FieldExpr jjj = f.eng.wick(jj, f.J);
  // cross-check against the skew-symmetry route
  CHECK(jjj == f.eng.nth_via_skew(f.J, jj, -1));
  CHECK(f.eng.wick(f.Gm, f.Gp) == f.eng.nth_via_skew(f.Gp, f.Gm, -1));
}

TEST_CASE("grading: weight and charge of products") {
  Fixture f;
  std::mt19937 rng(17);
  for (int i = 0; i < 120; ++i) {
    Monomial ma = testutil::random_monomial(rng, f.eng);
    Monomial mb = testutil::random_monomial(rng, f.eng);
    std::uniform_int_distribution<long> nd(-3, 4);
    long n = nd(rng);
    FieldExpr p = f.eng.nth(FieldExpr::term(ma, RatFunc(1)), FieldExpr::term(mb, RatFunc(1)), n);
    if (p.is_zero()) continue;
    Rat w = f.alg.weight(ma) + f.alg.weight(mb) - n - 1;
    Rat q = f.alg.charge(ma) + f.alg.charge(mb);
    CHECK(f.alg.homogeneous_weight(p) == w);
    CHECK(f.alg.homogeneous_charge(p) == q);
  }
}

TEST_CASE("skew-symmetry holds as a theorem of the engine") {
  Fixture f;
  std::mt19937 rng(23);
  int done = 0;
  while (done < 40) {
    Monomial ma = testutil::random_monomial(rng, f.eng);
    Monomial mb = testutil::random_monomial(rng, f.eng);
    if (f.alg.weight(ma) + f.alg.weight(mb) > 6) continue;
    ++done;
    FieldExpr a = FieldExpr::term(ma, RatFunc(1)), b = FieldExpr::term(mb, RatFunc(1));
    std::uniform_int_distribution<long> nd(-2, 3);
    long n = nd(rng);
    CHECK(f.eng.nth(b, a, n) == f.eng.nth_via_skew(a, b, n));
  }
}

TEST_CASE("commutator identity on randomized triples") {
  Fixture f;
  std::mt19937 rng(29);
  int done = 0;
  while (done < 25) {
    Monomial ma = testutil::random_monomial(rng, f.eng, 2, 1);
    Monomial mb = testutil::random_monomial(rng, f.eng, 2, 1);
    Monomial mc = testutil::random_monomial(rng, f.eng, 2, 1);
    if (f.alg.weight(ma) + f.alg.weight(mb) + f.alg.weight(mc) > 5) continue;
    ++done;
    FieldExpr a = FieldExpr::term(ma, RatFunc(1)), b = FieldExpr::term(mb, RatFunc(1)),
              c = FieldExpr::term(mc, RatFunc(1));
    int sign = (f.alg.odd(ma) && f.alg.odd(mb)) ? -1 : 1;
    std::uniform_int_distribution<long> nd(0, 2);
    long m = nd(rng), n = nd(rng);
    FieldExpr lhs = f.eng.nth(a, f.eng.nth(b, c, n), m) -
                    RatFunc(sign) * f.eng.nth(b, f.eng.nth(a, c, m), n);
    FieldExpr rhs;
    for (long j = 0; j <= m; ++j) {
      FieldExpr t = f.eng.nth(a, b, j);
      if (t.is_zero()) continue;
      rhs += RatFunc(binom(m, j)) * f.eng.nth(t, c, m + n - j);
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Leibniz rule") {
  Fixture f;
  std::mt19937 rng(31);
  for (int i = 0; i < 40; ++i) {
    Monomial ma = testutil::random_monomial(rng, f.eng, 2, 1);
    Monomial mb = testutil::random_monomial(rng, f.eng, 2, 1);
    FieldExpr a = FieldExpr::term(ma, RatFunc(1)), b = FieldExpr::term(mb, RatFunc(1));
    std::uniform_int_distribution<long> nd(-2, 2);
    long n = nd(rng);
    CHECK(f.eng.derivative(f.eng.nth(a, b, n)) ==
          f.eng.nth(f.eng.derivative(a), b, n) + f.eng.nth(a, f.eng.derivative(b), n));
  }
}

TEST_CASE("weak filtration degree bound") {
  Fixture f;
  std::mt19937 rng(37);
  for (int i = 0; i < 60; ++i) {
    Monomial ma = testutil::random_monomial(rng, f.eng);
    Monomial mb = testutil::random_monomial(rng, f.eng);
    std::uniform_int_distribution<long> nd(-2, 3);
    long n = nd(rng);
    FieldExpr p = f.eng.nth(FieldExpr::term(ma, RatFunc(1)), FieldExpr::term(mb, RatFunc(1)), n);
    CHECK(f.alg.max_filtration_degree(p) <=
          f.alg.filtration_degree(ma) + f.alg.filtration_degree(mb));
  }
  // contraction of G+ with G- drops the degree to 0 for n >= 0
  for (long n = 0; n <= 2; ++n) CHECK(f.alg.max_filtration_degree(f.eng.nth(f.Gp, f.Gm, n)) == 0);
}

TEST_CASE("normalization is idempotent on normal monomials") {
  Fixture f;
  std::mt19937 rng(41);
  for (int i = 0; i < 50; ++i) {
    Monomial m = testutil::random_monomial(rng, f.eng);
    CHECK(f.eng.normalize_word(m.letters) == FieldExpr::term(m, RatFunc(1)));
  }
}

TEST_CASE("memoization does not alter results") {
  Fixture fresh;
  Fixture warm;
  // warm the second engine on related products first
  warm.eng.nth(warm.Gp, warm.eng.wick(warm.Gm, warm.Gp), 0);
  FieldExpr a = fresh.eng.nth(fresh.eng.wick(fresh.Gp, fresh.Gm), fresh.eng.wick(fresh.Gm, fresh.Gp), 1);
  FieldExpr b = warm.eng.nth(warm.eng.wick(warm.Gp, warm.Gm), warm.eng.wick(warm.Gm, warm.Gp), 1);
  CHECK(a == b);
  CHECK(fresh.eng.cache_size() > 0);
}
