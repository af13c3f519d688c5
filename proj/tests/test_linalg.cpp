#include <doctest.h>

#include "test_util.hpp"
#include "vxa/linalg.hpp"

using namespace vxa;

namespace {

const RatFunc L = RatFunc::ell();

RatVec apply(const RatMat& A, const RatVec& x) {
  RatVec r(A.rows());
  for (long i = 0; i < A.rows(); ++i) {
    RatFunc acc(0);
    for (long j = 0; j < A.cols(); ++j) acc += A(i, j) * x(j);
    r(i) = acc;
  }
  return r;
}

bool equal_vec(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (long i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

}  // namespace

TEST_CASE("identity system returns rhs") {
  RatMat A(3, 3);
  RatVec b(3);
  for (long i = 0; i < 3; ++i) {
    for (long j = 0; j < 3; ++j) A(i, j) = RatFunc(i == j ? 1 : 0);
    b(i) = RatFunc(i + 1) * L;
  }
  auto s = solve_linear(A, b, SolveMethod::Bareiss);
  REQUIRE(s.consistent);
  CHECK(s.rank == 3);
  CHECK(equal_vec(s.particular, b));
  CHECK(s.nullspace.empty());
}

TEST_CASE("1x1 system (2l-1)x = l(2l-1)") {
  RatMat A(1, 1);
  RatVec b(1);
  A(0, 0) = RatFunc(2) * L - 1;
  b(0) = L * (RatFunc(2) * L - 1);
  auto s = solve_linear(A, b);
  REQUIRE(s.consistent);
  CHECK(s.particular(0) == L);
}

TEST_CASE("random square systems round-trip") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    long n = 2 + trial % 4;
    RatMat A(n, n);
    RatVec x(n);
    for (long i = 0; i < n; ++i) {
      x(i) = testutil::random_ratfunc(rng, 2);
      for (long j = 0; j < n; ++j) A(i, j) = RatFunc(testutil::random_poly(rng, 2));
    }
    RatVec b = apply(A, x);
    auto s = solve_linear(A, b, SolveMethod::Bareiss);
    REQUIRE(s.consistent);
    CHECK(equal_vec(apply(A, s.particular), b));
    for (const auto& v : s.nullspace) {
      RatVec zero = apply(A, v);
      for (long i = 0; i < n; ++i) CHECK(zero(i).is_zero());
    }
  }
}

TEST_CASE("underdetermined system: particular plus nullspace basis") {
  // x + y = l has a one-dimensional solution space
  RatMat A(1, 2);
  RatVec b(1);
  A(0, 0) = RatFunc(1);
  A(0, 1) = RatFunc(1);
  b(0) = L;
  auto s = solve_linear(A, b);
  REQUIRE(s.consistent);
  CHECK(s.rank == 1);
  REQUIRE(s.nullspace.size() == 1);
  CHECK(equal_vec(apply(A, s.particular), b));
  CHECK(apply(A, s.nullspace[0])(0).is_zero());
}

TEST_CASE("inconsistent system yields a witness") {
  // x = 1 and x = l cannot both hold
  RatMat A(2, 1);
  RatVec b(2);
  A(0, 0) = RatFunc(1);
  A(1, 0) = RatFunc(1);
  b(0) = RatFunc(1);
  b(1) = L;
  auto s = solve_linear(A, b);
  REQUIRE(!s.consistent);
  REQUIRE(s.infeasibility_witness.size() == 2);
  RatFunc ya(0), yb(0);
  for (long i = 0; i < 2; ++i) {
    ya += s.infeasibility_witness(i) * A(i, 0);
    yb += s.infeasibility_witness(i) * b(i);
  }
  CHECK(ya.is_zero());
  CHECK(yb == RatFunc(1));
}

TEST_CASE("interpolation path agrees with Bareiss") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 8; ++trial) {
    long rows = 4, cols = 3;
    RatMat A(rows, cols);
    RatVec x(cols);
    for (long j = 0; j < cols; ++j) x(j) = testutil::random_ratfunc(rng, 2);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) A(i, j) = RatFunc(testutil::random_poly(rng, 2));
    RatVec b = apply(A, x);
    auto s1 = solve_linear(A, b, SolveMethod::Bareiss);
    auto s2 = solve_linear(A, b, SolveMethod::Interpolate);
    REQUIRE(s1.consistent);
    REQUIRE(s2.consistent);
    CHECK(s1.rank == s2.rank);
    CHECK(equal_vec(apply(A, s2.particular), b));
    CHECK(s2.nullspace.size() == s1.nullspace.size());
  }
}

TEST_CASE("rational reconstruction recovers a rational function") {
  RatFunc f = (L * L - 1) / (RatFunc(3) * L + 2);
  std::vector<Rat> pts, vals;
  for (int t = 2; t < 12; ++t) {
    pts.push_back(t);
    vals.push_back(f.specialize(t));
  }
  CHECK(reconstruct_ratfunc(pts, vals) == f);
}
