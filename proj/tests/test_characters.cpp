#include <doctest.h>

#include "test_util.hpp"
#include "vxa/characters.hpp"
#include "vxa/weight_basis.hpp"
#include "vxa/catalog.hpp"

using namespace vxa;

namespace {

// independent partition-counting oracle
long partitions(long n) {
  static std::vector<std::vector<long>> memo;  // memo[n][k]: partitions of n into parts <= k
  std::size_t size = static_cast<std::size_t>(n + 1);
  if (memo.size() < size) {
    memo.assign(size, std::vector<long>(size, -1));
  }
  std::function<long(long, long)> p = [&](long m, long k) -> long {
    if (m == 0) return 1;
    if (k == 0) return 0;
    long& slot = memo[m][k];
    if (slot >= 0) return slot;
    long total = p(m, k - 1) + (m >= k ? p(m - k, k) : 0);
    return slot = total;
  };
  return p(n, n);
}

}  // namespace

TEST_CASE("eta series and its inverse against the partition oracle") {
  QSeries eta = eta_series(6);
  CHECK(eta.leading_exponent() == rat(1, 24));
  QSeries inv = eta.inverse();
  // strip q^{-1/24}: coefficient of q^{n - 1/24} is p(n)
  for (long n = 0; n <= 5; ++n) CHECK(inv.coeff(Rat(n) - rat(1, 24)) == partitions(n));
  QSeries prod = eta * inv;
  CHECK(prod.coeff(0) == 1);
  CHECK(QSeries::first_mismatch(prod, QSeries::one(prod.trunc()), prod.trunc()) == std::nullopt);
}

TEST_CASE("series arithmetic is associative on randomized truncations") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> ed(0, 12), cd(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    QSeries a(6), b(6), c(6);
    for (int i = 0; i < 6; ++i) {
      a.add(Rat(ed(rng)) / 3, cd(rng));
      b.add(Rat(ed(rng)) / 3, cd(rng));
      c.add(Rat(ed(rng)) / 3, cd(rng));
    }
    QSeries left = (a * b) * c, right = a * (b * c);
    Rat bound = std::min(left.trunc(), right.trunc());
    CHECK(QSeries::first_mismatch(left, right, bound) == std::nullopt);
  }
}

TEST_CASE("jacobi theta against a direct product-expansion oracle") {
  // oracle: multiply the finitely many contributing factors on a dense grid
  auto oracle = [](const Rat& N, bool from_zero) {
    std::map<std::pair<Rat, long>, Rat> acc{{{Rat(0), 0}, Rat(1)}};
    auto mulfactor = [&](const Rat& e, long z) {
      std::map<std::pair<Rat, long>, Rat> next = acc;
      for (const auto& [key, c] : acc) {
        Rat e2 = key.first + e;
        if (e2 >= N) continue;
        next[{e2, key.second + z}] -= c;
      }
      acc = std::move(next);
    };
    for (long i = 1; Rat(i) < N; ++i) mulfactor(Rat(i), 0);
    for (long j = from_zero ? 0 : 1; rat(1, 2) + j < N; ++j) {
      mulfactor(rat(1, 2) + j, 1);
      mulfactor(rat(1, 2) + j, -1);
    }
    return acc;
  };
  for (bool from_zero : {false, true}) {
    JacobiSeries theta = jacobi_theta(4, from_zero);
    auto ref = oracle(4, from_zero);
    for (const auto& [key, c] : ref) {
      if (c == 0) continue;
      CHECK(theta.component(key.second).coeff(key.first) == c);
    }
    // z <-> z^{-1} symmetry
    for (const auto& [z, s] : theta.components())
      for (const auto& [e, c] : s.terms()) CHECK(theta.component(-z).coeff(e) == c);
  }
  // literal flag: z-degree-0 part below q^{5/2} is (1-q)(1-q^2); the first
  // z-charged factor enters at q^{3/2}
  JacobiSeries lit = jacobi_theta(rat(5, 2), false);
  CHECK(lit.component(0).coeff(0) == 1);
  CHECK(lit.component(0).coeff(1) == -1);
  CHECK(lit.component(0).coeff(2) == -1);
  CHECK(lit.component(1).coeff(rat(1, 2)) == 0);
  CHECK(lit.component(1).coeff(rat(3, 2)) == -1);
  // j >= 0 flag brings in the factor (1 - z q^{1/2})
  JacobiSeries full = jacobi_theta(rat(5, 2), true);
  CHECK(full.component(1).coeff(rat(1, 2)) == -1);
}

TEST_CASE("lattice theta examples") {
  JacobiSeries t0 = lattice_theta(1, 0, 12);
  QSeries z1 = t0.at_z1();
  CHECK(z1.coeff(0) == 1);
  CHECK(z1.coeff(3) == 2);
  CHECK(z1.coeff(1) == 0);
  CHECK(z1.coeff(2) == 0);
  // theta_{s+6l} is theta_s reindexed by n -> n+1: identical in the charge
  // convention (z tracks the J_0 eigenvalue), an overall z^{3l} shift in the
  // literal convention
  JacobiSeries t6 = lattice_theta(1, 6, 12);
  for (const auto& [z, s] : t0.components())
    for (const auto& [e, c] : s.terms()) CHECK(t6.component(z).coeff(e) == c);
  JacobiSeries p0 = lattice_theta(1, 0, 12, ThetaZExp::Paper);
  JacobiSeries p6 = lattice_theta(1, 6, 12, ThetaZExp::Paper);
  for (const auto& [z, s] : p0.components())
    for (const auto& [e, c] : s.terms()) CHECK(p6.component(z + 3).coeff(e) == c);
  // l=1, s=3: leading exponent 3/4 (n = 0 and n = -1 tie)
  JacobiSeries t3 = lattice_theta(1, 3, 12);
  CHECK(t3.at_z1().leading_exponent() == rat(3, 4));
  CHECK(t3.at_z1().coeff(rat(3, 4)) == 2);
}

TEST_CASE("Jacobi series inverse and root-of-unity evaluation") {
  JacobiSeries theta = jacobi_theta(6, true);
  JacobiSeries inv = theta.inverse();
  JacobiSeries prod = theta * inv;
  Rat bound = prod.trunc();
  JacobiSeries one(bound);
  one.add(0, 0, 1);
  CHECK(JacobiSeries::first_mismatch(prod, one, bound) == std::nullopt);
  // z -> -1 (order 2 root) equals the alternating z-sum
  CycloSeries at = theta.at_root(2, 1);
  CHECK(at.first_irrational() == std::nullopt);  // zeta_2 = -1 is rational
  QSeries manual(theta.trunc());
  for (const auto& [z, s] : theta.components())
    for (const auto& [e, c] : s.terms()) manual.add(e, (z % 2 == 0) ? c : -c);
  CHECK(QSeries::first_mismatch(at.rational_part(), manual, theta.trunc()) == std::nullopt);
}

TEST_CASE("W(sl_2) minimal series at p=3 is the (3,5) Virasoro minimal model") {
  // vacuum: (r,s) = (1,1); the simple current L_{3 Lambda_1}: h = 3/4 -> (2,1)
  QSeries vac = w_minimal_character(2, 0, 8);
  QSeries vac_oracle = virasoro_minimal_character(3, 5, 1, 1, 8);
  CHECK(QSeries::first_mismatch(vac, vac_oracle, 8) == std::nullopt);
  QSeries cur = w_minimal_character(2, 1, 8);
  QSeries cur_oracle = virasoro_minimal_character(3, 5, 2, 1, 8);
  CHECK(QSeries::first_mismatch(cur, cur_oracle, 8) == std::nullopt);
  // c = -3/5: vacuum leading exponent -c/24 = 1/40
  CHECK(vac.leading_exponent() == rat(1, 40));
  // vacuum module of a minimal model: no weight-1 state
  CHECK(vac.coeff(rat(1, 40) + 1) == 0);
  CHECK(vac.coeff(rat(1, 40) + 2) == 1);
}

TEST_CASE("lowest conformal exponents of the simple currents") {
  for (long ell : {1L, 2L}) {
    QSeries vac = w_minimal_character(2 * ell, 0, 6);
    REQUIRE(vac.leading_exponent());
    for (long s = 1; s <= ell; ++s) {
      QSeries cur = w_minimal_character(2 * ell, s, 6);
      REQUIRE(cur.leading_exponent());
      Rat gap = *cur.leading_exponent() - *vac.leading_exponent();
      CHECK(gap == Rat(3 * s) / 2 - Rat(3 * s * s) / (4 * ell));
    }
  }
}

TEST_CASE("bp character vs the weight-basis oracle (l=1)") {
  BpCalibration calib;
  JacobiSeries ch = bp_character_normalized(1, rat(9, 2), &calib);
  Algebra bp1 = specialize(bp_algebra(), 1);
  Engine eng(bp1);
  // The maximal ideal is generated in weight 9/2 by (G^pm)^3 but reaches down
  // to weight 2l+1 = 3 through high modes: (G-)^3 o_5 (G+)^3 is a nonzero
  // charge-0 weight-3 ideal element. The simple character therefore matches
  // free counting strictly below weight 3, and the deficits above equal the
  // graded dimensions of the ideal.
  FieldExpr gp3 = power_field(eng, "G+", 3);
  FieldExpr gm3 = power_field(eng, "G-", 3);
  FieldExpr low = eng.nth(gm3, gp3, 5);
  CHECK(!low.is_zero());
  CHECK(bp1.homogeneous_weight(low) == Rat(3));
  CHECK(bp1.homogeneous_charge(low) == Rat(0));
  for (long twice_w = 0; twice_w < 6; ++twice_w) {
    Rat w = Rat(twice_w) / 2;
    for (long q = -3; q <= 3; ++q) {
      long expected = static_cast<long>(weight_basis(bp1, w, Rat(q)).size());
      CHECK(ch.component(q).coeff(w) == expected);
    }
  }
  // first deviation: exactly one ideal state at (3, 0), none at (3, +-2)
  CHECK(ch.component(0).coeff(3) == weight_basis(bp1, 3, 0).size() - 1);
  CHECK(ch.component(2).coeff(3) == weight_basis(bp1, 3, 2).size());
  CHECK(eng.nth(eng.gen_field("G-"), gp3, 2).is_zero());
  // z = 1 expansion starts 1 + q + 2 q^{3/2} + 3 q^2
  QSeries z1 = ch.at_z1();
  CHECK(z1.coeff(0) == 1);
  CHECK(z1.coeff(1) == 1);
  CHECK(z1.coeff(rat(3, 2)) == 2);
  CHECK(z1.coeff(2) == 3);
}

TEST_CASE("decomposition of ch W_1 into W(sl_2) x lattice characters") {
  DecompositionReport rep = verify_decomposition(1, 8);
  CHECK(rep.matched);
  CHECK(rep.inverse_ok);
  CHECK(rep.orthogonality_ok);
  CHECK(!rep.first_mismatch.has_value());
}

TEST_CASE("corollary identity at roots of unity (l=1)") {
  for (long s : {0L, 1L}) {
    CorollaryReport rep = verify_corollary(1, s, 8);
    CHECK(rep.matched);
  }
}

TEST_CASE("affine sl_2 translation parity oracle") {
  // in the affine Weyl group of sl_2, t_{m alpha} has even length: BFS over
  // reduced words in s_0, s_1 acting on the line
  auto apply = [](int gen, const Rat& x) { return gen == 0 ? Rat(2) - x : Rat(-x); };
  std::map<Rat, int> best_len;  // image of a generic point 1/3 -> min word length
  std::vector<std::pair<Rat, int>> frontier{{rat(1, 3), 0}};
  best_len[rat(1, 3)] = 0;
  for (int depth = 0; depth < 10; ++depth) {
    std::vector<std::pair<Rat, int>> next;
    for (auto& [x, len] : frontier)
      for (int g : {0, 1}) {
        Rat y = apply(g, x);
        if (best_len.count(y)) continue;
        best_len[y] = len + 1;
        next.emplace_back(y, len + 1);
      }
    frontier = std::move(next);
  }
  // translation by 2m maps 1/3 to 1/3 + 2m; its parity must be even
  for (long m = -2; m <= 2; ++m) {
    Rat target = rat(1, 3) + Rat(2 * m);
    REQUIRE(best_len.count(target));
    CHECK(best_len[target] % 2 == 0);
  }
}
