#include <doctest.h>

#include <random>

#include "fermatball/algebra.hpp"
#include "fermatball/error.hpp"

using namespace fermatball;
using namespace fermatball::algebra;

namespace {

// Exhaustive count of x in F_p^cols with M x = 0.
std::size_t brute_kernel_size(const IntMatrix& m, int p) {
  const std::size_t n = m.cols();
  std::vector<int> x(n, 0);
  std::size_t count = 0;
  for (;;) {
    bool zero = true;
    for (std::size_t r = 0; r < m.rows() && zero; ++r) {
      Integer s = 0;
      for (std::size_t c = 0; c < n; ++c) s += m(r, c) * x[c];
      Integer red;
      mpz_fdiv_r_ui(red.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(p));
      zero = red == 0;
    }
    if (zero) ++count;
    std::size_t k = 0;
    while (k < n && ++x[k] == p) x[k++] = 0;
    if (k == n) break;
  }
  return count;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("eisenstein arithmetic") {
  const auto w = EisensteinInt::omega();
  CHECK(w * w == EisensteinInt(-1, -1));
  CHECK(EisensteinInt::lambda().norm() == 3);
  CHECK(EisensteinInt(2, 1).conj() == EisensteinInt(1, -1));
  CHECK(w * w * w == EisensteinInt(1));
  CHECK(EisensteinInt::omega_pow(-1) == w * w);
  CHECK((w * w.conj()) == EisensteinInt(1));
}

TEST_CASE("norm is multiplicative") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int t = 0; t < 300; ++t) {
    EisensteinInt x(d(rng), d(rng)), y(d(rng), d(rng));
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK((x * y).conj() == x.conj() * y.conj());
    if (!y.is_zero()) {
      auto q = (x * y).divide_exact(y);
      REQUIRE(q);
      CHECK(*q == x);
    }
  }
}

TEST_CASE("lambda valuation") {
  CHECK_FALSE(lambda_valuation(EisensteinInt(0)).has_value());
  CHECK(*lambda_valuation(EisensteinInt(3)) == 2);
  CHECK(*lambda_valuation(EisensteinInt::lambda()) == 1);
  CHECK(*lambda_valuation(EisensteinInt(1)) == 0);
  CHECK(*lambda_valuation(EisensteinInt(9) * EisensteinInt::lambda()) == 5);
  // Valuation is additive; checked against norm divisibility by 3.
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-30, 30);
  for (int t = 0; t < 200; ++t) {
    EisensteinInt x(d(rng), d(rng));
    if (x.is_zero()) continue;
    Integer n = x.norm();
    unsigned v3 = 0;
    while (n % 3 == 0) {
      n /= 3;
      ++v3;
    }
    CHECK(*lambda_valuation(x) == v3);
  }
}

TEST_CASE("token round trip") {
  for (const char* s : {"0", "1", "-1", "w", "-w", "2-3w", "-4+w", "7"}) {
    const auto x = EisensteinInt::parse(s);
    CHECK(EisensteinInt::parse(x.str()) == x);
  }
  CHECK(EisensteinInt::parse("1-w") == EisensteinInt::lambda());
  CHECK_THROWS_AS(EisensteinInt::parse("1+x"), Error);
  CHECK_THROWS_AS(EisensteinInt::parse(""), Error);
}

TEST_CASE("smith normal form examples") {
  auto id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.D == IntMatrix::identity(3));
  auto three = smith_normal_form(IntMatrix{{3}});
  CHECK(three.D == IntMatrix{{3}});
  auto row = smith_normal_form(IntMatrix{{1, 1, 1, 1, 1, 1}});
  CHECK(row.diagonal() == std::vector<Integer>{1});
  auto m = smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(m.diagonal() == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("smith normal form reconstructs 200 random matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int t = 0; t < 200; ++t) {
    const auto m = random_matrix(rng, dim(rng), dim(rng), t % 3 == 0 ? 40 : 5);
    const auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.U * s.U_inv == IntMatrix::identity(m.rows()));
    CHECK(s.V * s.V_inv == IntMatrix::identity(m.cols()));
    CHECK(is_smith_form(s.D));
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    if (m.rows() == m.cols()) {
      Integer prod = 1;
      for (std::size_t k = 0; k < m.rows(); ++k) prod *= s.D(k, k);
      CHECK(abs(determinant(m)) == prod);
    }
  }
}

TEST_CASE("kernel mod p") {
  CHECK(kernel_mod_p(IntMatrix{{1, 1, 1, 1, 1, 1}}, 3).size() == 5);
  CHECK(kernel_mod_p(IntMatrix::identity(3), 3).empty());
  IntMatrix dp5{{0, 0, 0, 0, 1, 1, 1, 1, 1, 1},
                {-1, 0, 0, 0, 1, 1, 1, 0, 0, 0},
                {0, -1, 0, 0, 1, 0, 0, 1, 1, 0},
                {0, 0, -1, 0, 0, 1, 0, 1, 0, 1},
                {0, 0, 0, -1, 0, 0, 1, 0, 1, 1}};
  CHECK(kernel_mod_p(dp5, 3).size() == 5);
  CHECK_THROWS_AS(kernel_mod_p(dp5, 4), Error);
}

TEST_CASE("kernel dimension agrees with brute force over F2, F3, F5") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int p : {2, 3, 5}) {
    for (int t = 0; t < 40; ++t) {
      const auto m = random_matrix(rng, dim(rng), dim(rng) + (p == 5 ? 0 : 2), 6);
      const auto ker = kernel_mod_p(m, p);
      std::size_t expected = 1;
      for (std::size_t k = 0; k < ker.size(); ++k) expected *= static_cast<std::size_t>(p);
      CHECK(brute_kernel_size(m, p) == expected);
      CHECK(rank_mod_p(m, p) + ker.size() == m.cols());
      for (const auto& v : ker)
        for (std::size_t r = 0; r < m.rows(); ++r) {
          Integer s = 0;
          for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
          CHECK(s % p == 0);
        }
    }
  }
}

TEST_CASE("finite abelian groups") {
  FiniteAbelianGroup g({3, 3, 3, 3, 3});
  CHECK(g.str() == "(Z/3)^5");
  CHECK(g.order() == 243);
  CHECK(*g.elementary_prime() == 3);
  FiniteAbelianGroup h({4, 6});
  CHECK(h.invariant_factors() == std::vector<Integer>{2, 12});
  CHECK(h.exponent() == 12);
  CHECK_FALSE(h.elementary_prime().has_value());
  CHECK(FiniteAbelianGroup({1, 1}).is_trivial());
  CHECK(FiniteAbelianGroup({1}).str() == "1");
}
