#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fermatball/error.hpp"
#include "fermatball/namba.hpp"

using namespace fermatball;
using namespace fermatball::namba;
using algebra::Integer;
using algebra::Rational;

namespace {

bool in_kernel(const BranchArrangement& arr, const std::vector<Integer>& a) {
  const std::size_t r = arr.lattice.rank();
  for (std::size_t c = 0; c < r; ++c) {
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      s += Rational(a[k], arr.branches[k].weight) * arr.branches[k].divisor.coeffs()[c];
    s.canonicalize();
    if (s.get_den() != 1) return false;
  }
  return true;
}

// Number of coefficient tuples (a_k mod e_k) whose fractional divisor is integral.
Integer brute_order(const BranchArrangement& arr) {
  const auto w = arr.weights();
  std::vector<Integer> a(w.size(), 0);
  Integer count = 0;
  for (;;) {
    if (in_kernel(arr, a)) ++count;
    std::size_t k = 0;
    while (k < a.size() && ++a[k] == w[k]) a[k++] = 0;
    if (k == a.size()) break;
  }
  return count;
}

BranchArrangement random_arrangement(std::mt19937& rng) {
  std::uniform_int_distribution<int> rank_d(1, 3), count_d(1, 6), coef(-2, 3), weight(2, 4);
  const int r = rank_d(rng);
  std::ostringstream os;
  os << "rank " << r << "\ngram\n";
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) os << (i == j ? (i == 0 ? 1 : -1) : 0) << ' ';
    os << '\n';
  }
  os << "canonical";
  for (int i = 0; i < r; ++i) os << ' ' << (i == 0 ? -3 : 1);
  os << '\n';
  const int s = count_d(rng);
  for (int k = 0; k < s; ++k) {
    os << "branch";
    for (int i = 0; i < r; ++i) os << ' ' << coef(rng);
    os << " weight " << weight(rng) << '\n';
  }
  return parse_arrangement(os.str());
}

}  // namespace

TEST_CASE("bundled arrangements") {
  const auto p2 = p2_quadrilateral();
  CHECK(p2.lattice.rank() == 1);
  CHECK(p2.branches.size() == 6);
  const auto dp5 = dp5_ten_curves();
  CHECK(dp5.lattice.rank() == 5);
  CHECK(dp5.branches.size() == 10);
  CHECK(parse_arrangement(format_arrangement(dp5)).branches.size() == 10);
}

TEST_CASE("bundled data files match the built-in arrangements") {
  for (const auto& [file, arr] : {std::pair{"p2-quadrilateral.arr", p2_quadrilateral()},
                                  std::pair{"dp5-ten-curves.arr", dp5_ten_curves()}}) {
    const auto loaded = load_arrangement(std::filesystem::path(FERMATBALL_DATA_DIR) / file);
    CHECK(format_arrangement(loaded) == format_arrangement(arr));
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_arrangement(""), Error);
  CHECK_THROWS_AS(parse_arrangement("rank 2\ngram\n1 1\n0 1\ncanonical 0 0\n"), Error);
  try {
    parse_arrangement("rank 1\ngram\n1\ncanonical -3\nbranch 1 weight x\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
  CHECK_THROWS_AS(load_arrangement("/nonexistent/file.arr"), Error);
}

TEST_CASE("cover groups of the bundled arrangements") {
  const auto p2 = p2_quadrilateral();
  const auto g = divisor_cover_group(p2);
  CHECK(g.str() == "(Z/3)^5");
  CHECK(brute_order(p2) == 243);
  for (const auto& gen : g.generators) CHECK(in_kernel(p2, gen));
  const auto dp5 = dp5_ten_curves();
  const auto h = divisor_cover_group(dp5);
  CHECK(h.str() == "(Z/3)^5");
  for (const auto& gen : h.generators) CHECK(in_kernel(dp5, gen));
}

TEST_CASE("single line with weight two") {
  const auto arr = parse_arrangement("rank 1\ngram\n1\ncanonical -3\nbranch 1 weight 2\n");
  CHECK(divisor_cover_group(arr).is_trivial());
  CHECK(brute_order(arr) == 1);
}

TEST_CASE("cover group agrees with brute force on random arrangements") {
  std::mt19937 rng(31337);
  for (int t = 0; t < 150; ++t) {
    const auto arr = random_arrangement(rng);
    const auto g = divisor_cover_group(arr);
    CHECK(g.order() == brute_order(arr));
    for (const auto& gen : g.generators) CHECK(in_kernel(arr, gen));
  }
}

TEST_CASE("subgroup census") {
  const algebra::FiniteAbelianGroup five({3, 3, 3, 3, 3});
  const auto c = subgroup_census(five, 3);
  CHECK(c.count == 121);
  CHECK(c.representatives.size() == 121);
  CHECK(subgroup_census(five, 1).count == 1);
  CHECK(subgroup_census(algebra::FiniteAbelianGroup({3, 3}), 3).count == 4);
  CHECK_THROWS_AS(subgroup_census(five, 2), Error);
}

TEST_CASE("factorization and etale checks") {
  const auto amb = divisor_cover_group(dp5_ten_curves());
  const auto full = CoverGroup::full(amb);
  const auto hyper = subgroup_census(amb, 3).representatives;
  for (const auto& h : hyper) {
    const auto f = factorization_exists(h, full);
    CHECK(f.exists);
    CHECK(f.degree == 3);
    CHECK_FALSE(factorization_exists(full, h).exists);
  }
  CHECK_FALSE(factorization_exists(hyper[0], hyper[1]).exists);
  const auto same = factorization_exists(full, full);
  CHECK(same.exists);
  CHECK(same.degree == 1);

  const std::vector<Integer> threes(10, 3);
  std::vector<Integer> mixed = threes;
  mixed[0] = 1;
  CHECK(etale_check(threes, threes));
  CHECK_FALSE(etale_check(threes, mixed));
}
