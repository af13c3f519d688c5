#include <doctest.h>

#include "test_util.hpp"
#include "vxa/ratfunc.hpp"

using namespace vxa;

namespace {
const RatFunc L = RatFunc::ell();
}

TEST_CASE("rational function arithmetic basics") {
  RatFunc twol3 = RatFunc(2) * L / RatFunc(3);
  CHECK(twol3 + twol3 == RatFunc(4) * L / RatFunc(3));
  CHECK(L * (RatFunc(2) * L - 1) / (RatFunc(2) * L - 1) == L);
  CHECK((RatFunc(1) / L).is_zero() == false);
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), std::domain_error);
}

TEST_CASE("central charge identity from the OPE data") {
  // -2 l(6l-7)/(2l+3) - 1 == -3 (2l-1)^2 / (2l+3)
  RatFunc tt = -(L * (RatFunc(6) * L - 7)) / (RatFunc(2) * L + 3);
  RatFunc lhs = RatFunc(2) * tt - 1;
  RatFunc rhs = RatFunc(-3) * (RatFunc(2) * L - 1).pow(2) / (RatFunc(2) * L + 3);
  CHECK(lhs == rhs);
}

TEST_CASE("specialization") {
  RatFunc twol3 = RatFunc(2) * L / RatFunc(3);
  CHECK(twol3.specialize(1) == rat(2, 3));
  RatFunc f = (RatFunc(2) * L + 1).pow(2) / RatFunc(2);
  CHECK(f.specialize(1) == rat(9, 2));
  CHECK_THROWS_AS((RatFunc(1) / L).specialize(0), PoleError);
  try {
    (RatFunc(1) / L).specialize(0);
  } catch (const PoleError& e) {
    CHECK(e.offending_factor == "l - (0)");
  }
}

TEST_CASE("canonical form") {
  // denominator integer-primitive with positive leading coefficient
  RatFunc f(Poly(std::vector<Rat>{0, 2}), Poly(std::vector<Rat>{0, 0, -4}));
  CHECK(f.den().leading() > 0);
  CHECK(f == RatFunc(-1) / (RatFunc(2) * L));
  CHECK(ratfunc_str(RatFunc(2) * L / RatFunc(3)) == "(2*l)/3");
}

TEST_CASE("field axioms on randomized triples") {
  std::mt19937 rng(12345);
  for (int i = 0; i < 300; ++i) {
    RatFunc a = testutil::random_ratfunc(rng), b = testutil::random_ratfunc(rng),
            c = testutil::random_ratfunc(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == RatFunc(0));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("specialization commutes with arithmetic") {
  std::mt19937 rng(777);
  for (int i = 0; i < 200; ++i) {
    RatFunc a = testutil::random_ratfunc(rng), b = testutil::random_ratfunc(rng);
    Rat v = testutil::random_rat(rng);
    auto sa = a.try_specialize(v), sb = b.try_specialize(v), sp = (a * b).try_specialize(v),
         ss = (a + b).try_specialize(v);
    if (sa && sb) {
      REQUIRE(sp.has_value());
      REQUIRE(ss.has_value());
      CHECK(*sp == *sa * *sb);
      CHECK(*ss == *sa + *sb);
    }
  }
}

TEST_CASE("scalar print/parse round-trip") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 200; ++i) {
    RatFunc a = testutil::random_ratfunc(rng);
    CHECK(parse_ratfunc(ratfunc_str(a)) == a);
  }
  CHECK(parse_ratfunc("(2*l)/3") == RatFunc(2) * L / RatFunc(3));
  CHECK(parse_ratfunc("l*(2*l-1)") == L * (RatFunc(2) * L - 1));
  CHECK(parse_ratfunc("l^2 - 1/4") == L * L - RatFunc(rat(1, 4)));
  CHECK_THROWS(parse_ratfunc("2*"));
}
