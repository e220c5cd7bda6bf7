#include <doctest.h>

#include <algorithm>
#include <random>

#include "fermatball/error.hpp"
#include "fermatball/lattice.hpp"

using namespace fermatball;
using namespace fermatball::lattice;
using algebra::EisensteinInt;

namespace {

const Vector3 kE1{1, 0, 0};
const Vector3 kE2{0, 1, 0};
const Vector3 kOnes{1, 1, 1};

UnitaryMatrix power(const UnitaryMatrix& t, int n) {
  UnitaryMatrix r = UnitaryMatrix::identity();
  for (int k = 0; k < n; ++k) r = r * t;
  return r;
}

// Random words in height-1 reflections and diagonal units.
UnitaryMatrix random_word(std::mt19937& rng, int length) {
  static const auto gens = [] {
    auto g = height1_reflections();
    g.push_back(reflection(kOnes));
    for (const auto& d : diagonal_units()) g.push_back(d);
    return g;
  }();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  UnitaryMatrix t = UnitaryMatrix::identity();
  for (int k = 0; k < length; ++k) t = t * gens[pick(rng)];
  return t;
}

}  // namespace

TEST_CASE("unitarity and membership examples") {
  CHECK(is_unitary(UnitaryMatrix::identity()));
  CHECK(is_unitary(UnitaryMatrix::diagonal(1, 1, 1)));
  CHECK(is_unitary(UnitaryMatrix::permutation(0, 1)));
  CHECK_FALSE(is_unitary(UnitaryMatrix::permutation(0, 2)));
  CHECK(in_gamma(UnitaryMatrix::identity()));
  CHECK(in_gamma(UnitaryMatrix::diagonal(1, 0, 0)));
  CHECK_FALSE(in_gamma(UnitaryMatrix::permutation(0, 1)));
}

TEST_CASE("matrix text round trip") {
  const auto r = reflection(kOnes);
  CHECK(UnitaryMatrix::parse(r.str()) == r);
  CHECK(UnitaryMatrix::parse("[[1,0,0];[0,1,0];[0,0,1]]") == UnitaryMatrix::identity());
  CHECK_THROWS_AS(UnitaryMatrix::parse("1 0 0 0 1 0 0 0"), Error);
}

TEST_CASE("reflections") {
  CHECK(reflection(kE1) == UnitaryMatrix::diagonal(1, 0, 0));
  const auto r = reflection(kOnes);
  CHECK(in_gamma(r));
  CHECK_FALSE(r(0, 1).is_zero());
  for (const auto& v : {kE1, kE2, kOnes}) {
    const auto t = reflection(v);
    CHECK(power(t, 3) == UnitaryMatrix::identity());
    CHECK_FALSE(t == UnitaryMatrix::identity());
    CHECK(t.determinant() == EisensteinInt::omega());
    CHECK(in_gamma(t));
  }
  CHECK(r.height() == 7);
  CHECK_THROWS_AS(reflection(Vector3{1, 1, 0}), Error);
  for (const auto& t : height1_reflections()) {
    CHECK(power(t, 3) == UnitaryMatrix::identity());
    CHECK(t.determinant() == EisensteinInt::omega());
  }
}

TEST_CASE("inverse") {
  std::mt19937 rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto t = random_word(rng, 6);
    CHECK(in_gamma(t));
    CHECK(t * inverse(t) == UnitaryMatrix::identity());
    CHECK(inverse(t) == [&] {
      // For unitary T: T^-1 = H T^* H.
      const auto h = UnitaryMatrix(std::array<EisensteinInt, 9>{1, 0, 0, 0, 1, 0, 0, 0, -1});
      return h * t.conj_transpose() * h;
    }());
  }
}

TEST_CASE("height one enumeration") {
  const auto g1 = enumerate_gamma(1);
  CHECK(g1.size() == 27);
  auto diag = diagonal_units();
  std::sort(diag.begin(), diag.end());
  CHECK(g1 == diag);
  for (const auto& t : g1) {
    CHECK(in_gamma(t));
    CHECK(in_gamma(inverse(t)));
    for (const auto& u : g1) CHECK(in_gamma(t * u));
  }
  CHECK(std::is_sorted(g1.begin(), g1.end()));
}

TEST_CASE("enumeration is independent of the worker count") {
  const auto a = enumerate_gamma(7, 1);
  const auto b = enumerate_gamma(7, 4);
  CHECK(a == b);
  CHECK(std::find(a.begin(), a.end(), reflection(kOnes)) != a.end());
  for (const auto& t : a) {
    CHECK(in_gamma(t));
    CHECK(t.height() <= 7);
    CHECK(std::find(a.begin(), a.end(), inverse(t)) != a.end());
  }
}

TEST_CASE("commutators") {
  const auto c0 = commutator(UnitaryMatrix::diagonal(1, 0, 0), UnitaryMatrix::diagonal(0, 1, 0));
  CHECK(c0.value == UnitaryMatrix::identity());
  CHECK_FALSE(c0.level.has_value());
  const auto c = commutator(reflection(kE1), reflection(kOnes));
  CHECK_FALSE(c.value == UnitaryMatrix::identity());
  REQUIRE(c.level.has_value());
  CHECK(*c.level >= 2);
  CHECK_FALSE(congruence_level(UnitaryMatrix::identity()).has_value());
  CHECK_THROWS_AS(commutator(UnitaryMatrix::permutation(0, 1), UnitaryMatrix::identity()), Error);

  std::mt19937 rng(77);
  for (int k = 0; k < 500; ++k) {
    const auto cm = commutator(random_word(rng, 4), random_word(rng, 4));
    CHECK(in_gamma(cm.value));
    if (cm.level) CHECK(*cm.level >= 2);
  }
}

TEST_CASE("residue rings") {
  for (unsigned k = 1; k <= 6; ++k) {
    const ResidueRing ring(k);
    CHECK(ring.size() == static_cast<std::uint32_t>(std::pow(3, k)));
    CHECK(ring.encode(0) == 0);
    CHECK(ring.encode(1) == ring.one());
    // lambda^k is zero, lambda^(k-1) is not.
    EisensteinInt lk = 1;
    for (unsigned m = 0; m + 1 < k; ++m) lk = lk * EisensteinInt::lambda();
    CHECK(ring.encode(lk) != 0);
    CHECK(ring.encode(lk * EisensteinInt::lambda()) == 0);
    std::mt19937 rng(k);
    std::uniform_int_distribution<int> d(-40, 40);
    for (int t = 0; t < 300; ++t) {
      EisensteinInt x(d(rng), d(rng)), y(d(rng), d(rng));
      CHECK(ring.encode(x + y) == ring.add(ring.encode(x), ring.encode(y)));
      CHECK(ring.encode(x * y) == ring.mul(ring.encode(x), ring.encode(y)));
      CHECK(ring.encode(ring.representative(ring.encode(x))) == ring.encode(x));
    }
  }
  CHECK_THROWS_AS(ResidueRing(0), Error);
  CHECK_THROWS_AS(ResidueRing(9), Error);
}

TEST_CASE("reduction is a homomorphism for k <= 4") {
  std::mt19937 rng(123);
  for (unsigned k = 1; k <= 4; ++k) {
    const ResidueRing ring(k);
    for (int t = 0; t < 60; ++t) {
      const auto a = random_word(rng, 5), b = random_word(rng, 5);
      CHECK(reduce_mod(a * b, ring) == residue_product(reduce_mod(a, ring), reduce_mod(b, ring), ring));
      if (k == 1) CHECK(reduce_mod(a, ring) == residue_identity());
    }
  }
}

TEST_CASE("finite quotients") {
  auto gens = height1_reflections();
  const auto q1 = finite_group_analysis(gens, 1);
  CHECK(q1.image_order == 1);
  const auto q2 = finite_group_analysis(gens, 2);
  CHECK(q2.derived_order == 1);
  CHECK(q2.abelianization.order() == q2.image_order);
  CHECK_THROWS_AS(finite_group_analysis(gens, 3, 10), Error);
}

TEST_CASE("ball action") {
  const BallPoint z{{0.3, 0.1}, {-0.2, 0.4}};
  const auto id = ball_act(UnitaryMatrix::identity(), z);
  CHECK(std::abs(id.point.z1 - z.z1) < 1e-15);
  CHECK(std::abs(id.point.z2 - z.z2) < 1e-15);
  const auto rot = ball_act(UnitaryMatrix::diagonal(1, 0, 0), BallPoint{{0.5, 0.0}, {0.0, 0.0}});
  CHECK(std::abs(rot.point.z1 - 0.5 * to_complex(EisensteinInt::omega())) < 1e-15);
  CHECK_THROWS_AS(ball_act(UnitaryMatrix::identity(), BallPoint{{1.0, 0.0}, {0.5, 0.0}}), Error);

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  double worst = 0.0, worst_action = 0.0;
  for (int done = 0; done < 1000;) {
    BallPoint p{{u(rng), u(rng)}, {u(rng), u(rng)}};
    if (p.form() >= -1e-3) continue;
    ++done;
    const auto t = random_word(rng, 4), s = random_word(rng, 4);
    const auto img = ball_act(t, p);
    worst = std::max(worst, img.form_drift);
    CHECK(img.point.form() < 0.0);
    const auto lhs = ball_act(t * s, p).point;
    const auto rhs = ball_act(t, ball_act(s, p).point).point;
    worst_action = std::max({worst_action, std::abs(lhs.z1 - rhs.z1), std::abs(lhs.z2 - rhs.z2)});
  }
  CHECK(worst < 1e-10);
  CHECK(worst_action < 1e-9);
}
