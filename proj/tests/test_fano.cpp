#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fermatball/algebra.hpp"
#include "fermatball/error.hpp"
#include "fermatball/fano.hpp"

using namespace fermatball;
using namespace fermatball::fano;
using algebra::EisensteinInt;

namespace {

// Vertex model: E_ij^b <-> cone vertex e_i - w^b e_j in C^5; g = diag(w^t)
// acts linearly, and the image vertex is read back after scaling coordinate i to 1.
using Vertex = std::array<EisensteinInt, 5>;

Vertex vertex(const CurveLabel& c) {
  Vertex v{};
  v[c.i - 1] = 1;
  v[c.j - 1] = -EisensteinInt::omega_pow(c.beta);
  return v;
}

CurveLabel read_vertex(const Vertex& v, int i, int j) {
  const auto ratio = (-v[j - 1]).divide_exact(v[i - 1]);
  REQUIRE(ratio);
  for (int b = 0; b < 3; ++b)
    if (*ratio == EisensteinInt::omega_pow(b)) return {i, j, b};
  FAIL("vertex ratio is not a cube root of unity");
  return {};
}

CurveLabel oracle_act(const TorsionAut& g, const CurveLabel& c) {
  Vertex v = vertex(c);
  for (int k = 0; k < 5; ++k) v[k] = v[k] * EisensteinInt::omega_pow(g.t[k]);
  return read_vertex(v, c.i, c.j);
}

int oracle_pairing(const CurveLabel& a, const CurveLabel& b) {
  if (a == b) return -3;
  std::set<int> ia{a.i, a.j}, ib{b.i, b.j};
  std::vector<int> common;
  std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(common));
  return common.empty() ? 1 : 0;
}

}  // namespace

TEST_CASE("labels and counts") {
  CHECK(all_curves().size() == 30);
  CHECK(all_points().size() == 135);
  CHECK(all_group_elements().size() == 81);
  for (std::size_t k = 0; k < all_curves().size(); ++k) CHECK(curve_index(all_curves()[k]) == static_cast<int>(k));
  for (std::size_t k = 0; k < all_points().size(); ++k) CHECK(point_index(all_points()[k]) == static_cast<int>(k));
  CHECK(CurveLabel{1, 2, 1}.str() == "E12^1");
  CHECK_THROWS_AS(TorsionAut::make({1, 0, 0, 0, 0}), Error);
  CHECK_THROWS_AS(PointLabel::make({1, 2, 0}, {1, 3, 0}), Error);
}

TEST_CASE("pairing examples") {
  CHECK(intersection_number({1, 2, 1}, {3, 4, 1}) == 1);
  CHECK(intersection_number({1, 2, 1}, {1, 2, 1}) == -3);
  CHECK(intersection_number({1, 2, 1}, {1, 3, 1}) == 0);
  CHECK(intersection_number({1, 2, 0}, {1, 2, 2}) == 0);
}

TEST_CASE("gram matrix against case formula") {
  const auto gram = curve_gram_matrix();
  const auto& cs = all_curves();
  std::size_t ones = 0;
  for (std::size_t a = 0; a < 30; ++a)
    for (std::size_t b = 0; b < 30; ++b) {
      CHECK(gram(a, b) == oracle_pairing(cs[a], cs[b]));
      CHECK(gram(a, b) == gram(b, a));
      if (gram(a, b) == 1) ++ones;
    }
  CHECK(ones / 2 == 135);
}

TEST_CASE("action matches vertex model exhaustively") {
  CHECK(act_on_curve(TorsionAut::make({1, 2, 0, 0, 0}), {1, 2, 0}) == CurveLabel{1, 2, 1});
  for (const auto& g : all_group_elements())
    for (const auto& c : all_curves()) CHECK(act_on_curve(g, c) == oracle_act(g, c));
}

TEST_CASE("action is a group action preserving incidence") {
  const auto& gs = all_group_elements();
  for (std::size_t x = 0; x < gs.size(); x += 7)
    for (std::size_t y = 0; y < gs.size(); y += 5)
      for (const auto& c : all_curves())
        CHECK(act_on_curve(gs[x] * gs[y], c) == act_on_curve(gs[x], act_on_curve(gs[y], c)));
  for (const auto& g : gs) {
    CHECK((g * g.inverse()).is_identity());
    for (const auto& a : all_curves())
      for (const auto& b : all_curves())
        if (a < b) CHECK(intersection_number(act_on_curve(g, a), act_on_curve(g, b)) == intersection_number(a, b));
    for (const auto& p : all_points()) {
      const auto q = act_on_point(g, p);
      CHECK(q.first.disjoint_from(q.second));
    }
  }
}

TEST_CASE("stabilizers") {
  for (const auto& c : all_curves()) {
    const auto s = stabilizer(c);
    CHECK(s.setwise.size() == 27);
    CHECK(s.pointwise.size() == 3);
    for (const auto& g : s.pointwise) CHECK(fixes_curve_pointwise(g, c));
    CHECK(orbit(c).size() == 3);
  }
  for (const auto& p : all_points()) {
    const auto s = stabilizer(p);
    CHECK(s.size() == 9);
    CHECK(orbit(p).size() == 9);
    // Exponent 3 and abelian: (Z/3)^2.
    for (const auto& g : s) CHECK((g * g * g).is_identity());
  }
}

TEST_CASE("tangent representation is the full diagonal mu_3^2") {
  CHECK(tangent_eigenvalues(TorsionAut::identity(), all_points().front()) == std::pair{0, 0});
  for (const auto& p : all_points()) {
    std::set<std::pair<int, int>> image;
    for (const auto& g : stabilizer(p)) image.insert(tangent_eigenvalues(g, p));
    CHECK(image.size() == 9);
  }
  const PointLabel p = PointLabel::make({1, 2, 0}, {3, 4, 0});
  CHECK_THROWS_AS(tangent_eigenvalues(TorsionAut::make({1, 0, 2, 0, 0}), p), Error);
}

TEST_CASE("isolated fixed points and eigenvalues") {
  CHECK_THROWS_AS(fixed_locus(TorsionAut::identity()), Error);
  for (const auto& g : all_group_elements()) {
    if (g.is_identity()) continue;
    const auto fix = fixed_locus(g);
    for (const auto& p : all_points()) {
      const auto s = stabilizer(p);
      if (std::find(s.begin(), s.end(), g) == s.end()) continue;
      const auto [a, b] = tangent_eigenvalues(g, p);
      const bool isolated = std::find(fix.isolated.begin(), fix.isolated.end(), p) != fix.isolated.end();
      CHECK(isolated == (a != 0 && b != 0));
    }
  }
}

TEST_CASE("orbit census and quotient configuration") {
  const auto census = orbit_census();
  CHECK(census.curve_orbits.size() == 10);
  CHECK(census.point_orbits.size() == 15);
  CHECK(census.ramification_on_curves == 3);
  CHECK(census.ramification_at_points == 9);
  for (const auto& pb : census.pullbacks) {
    CHECK(pb.size() == 30);
    CHECK(std::count(pb.begin(), pb.end(), 0) == 27);
  }
  int meetings = 0;
  for (std::size_t a = 0; a < 10; ++a)
    for (std::size_t b = a + 1; b < 10; ++b)
      meetings += quotient_pairing(census.quotient_labels[a], census.quotient_labels[b]);
  CHECK(meetings == 15);
  for (const auto& lab : census.quotient_labels) CHECK(quotient_pairing(lab, lab) == -1);
}
