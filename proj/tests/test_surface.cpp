#include <doctest.h>

#include <set>

#include "fermatball/error.hpp"
#include "fermatball/surface.hpp"

using namespace fermatball;
using namespace fermatball::surface;

TEST_CASE("del pezzo lattice") {
  const auto dp = del_pezzo_lattice();
  const auto& lat = dp.lattice;
  CHECK(lat.self(lat.canonical()) == 5);
  CHECK(dp.minus_one_curves.size() == 10);
  DivisorClass sum = DivisorClass::zero(5);
  for (const auto& e : dp.minus_one_curves) {
    CHECK(lat.self(e) == -1);
    CHECK(lat.pair(lat.canonical(), e) == -1);
    sum += e;
  }
  CHECK(sum == Rational(-2) * lat.canonical());
  // Petersen incidence: curves meet iff their labels are disjoint pairs.
  int meetings = 0;
  for (std::size_t a = 0; a < 10; ++a)
    for (std::size_t b = a + 1; b < 10; ++b) {
      const auto [i, j] = dp.labels[a];
      const auto [s, t] = dp.labels[b];
      const bool disjoint = i != s && i != t && j != s && j != t;
      CHECK(lat.pair(dp.minus_one_curves[a], dp.minus_one_curves[b]) == (disjoint ? 1 : 0));
      meetings += disjoint;
    }
  CHECK(meetings == 15);
  std::set<std::pair<int, int>> labels(dp.labels.begin(), dp.labels.end());
  CHECK(labels.size() == 10);
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(IntersectionLattice(IntMatrix{{1, 2}, {0, 1}}, DivisorClass::from_ints({0, 0})), Error);
  CHECK_THROWS_AS(IntersectionLattice(IntMatrix{{1}}, DivisorClass::from_ints({0, 0})), Error);
}

TEST_CASE("configuration euler") {
  CurveConfig ten;
  ten.curve_euler.assign(10, 2);
  for (int k = 0; k < 15; ++k) ten.points.push_back({k % 10, (k + 3) % 10});
  CHECK(config_euler(ten) == 5);
  CurveConfig single{{Integer(-4)}, {}};
  CHECK(config_euler(single) == -4);
  CurveConfig thirty;
  thirty.curve_euler.assign(30, 0);
  for (int k = 0; k < 135; ++k) thirty.points.push_back({k % 30, (k + 7) % 30});
  CHECK(config_euler(thirty) == -135);
}

TEST_CASE("stratified euler") {
  std::vector<Stratum> s{{2, 81}, {-10, 27}, {15, 9}};
  CHECK(stratified_euler(s) == 27);
  std::vector<Stratum> h3{{2, 243}, {-10, 81}, {15, 27}};
  CHECK(stratified_euler(h3) == 81);
  // chi(X) from the S-side total.
  std::vector<Stratum> known{{-10, 27}, {15, 9}};
  CHECK(solve_stratum(27, known, 81) == 2);
  CHECK(solve_stratum(27, known, 81) + 5 == 7);
  CHECK(quotient_curve_euler(0, 9, 3, 3) == 2);
  std::vector<Integer> ram{3, 3, 3};
  // Nine-sheeted cover of P^1 with three points of ramification index 3.
  CHECK(riemann_hurwitz_euler(9, 2, ram) == 0);
  CHECK_THROWS_AS(solve_stratum(27, known, 0), Error);
}

TEST_CASE("branched canonical") {
  const auto dp = del_pezzo_lattice();
  std::vector<WeightedDivisor> branch;
  for (const auto& e : dp.minus_one_curves) branch.push_back({e, 3});
  CHECK(branched_canonical(dp.lattice, branch, 81) == 45);
  CHECK(branched_canonical(dp.lattice, branch, 243) == 135);
  CHECK(branched_canonical(dp.lattice, {}, 1) == 5);
}

TEST_CASE("log chern numbers") {
  const auto s = log_chern(45, 36, -36, 27, 0);
  CHECK(s.c1_squared == 81);
  CHECK(s.c2 == 27);
  CHECK(s.equality);
  const auto h3 = log_chern(135, 108, -108, 81, 0);
  CHECK(h3.c1_squared == 243);
  CHECK(h3.c2 == 81);
  CHECK(h3.equality);
  const auto plain = log_chern(5, 0, 0, 7, 0);
  CHECK(plain.c1_squared == 5);
  CHECK(plain.c2 == 7);
  CHECK(plain.satisfies_inequality);
  CHECK_FALSE(plain.equality);
}

TEST_CASE("hirzebruch family") {
  CHECK(hirzebruch_invariants(5) == ChernPair{5625, 1875});
  CHECK(hirzebruch_invariants(3) == ChernPair{135, 81});
  CHECK(hirzebruch_invariants(2) == ChernPair{0, 24});
  for (long n = 2; n <= 12; ++n) {
    const auto c = hirzebruch_invariants(n);
    // Closed forms 5 n^3 (n-2)^2 and n^3 (2n^2 - 10n + 15).
    CHECK(c.c1_squared == 5 * n * n * n * (n - 2) * (n - 2));
    CHECK(c.c2 == n * n * n * (2 * n * n - 10 * n + 15));
    CHECK((c.c1_squared == 3 * c.c2) == (n == 5));
  }
  CHECK_THROWS_AS(hirzebruch_invariants(1), Error);
}
