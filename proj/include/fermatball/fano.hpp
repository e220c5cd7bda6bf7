#pragma once

// Combinatorial model of the 30 elliptic curves E_ij^beta on the Fano surface
// of the Fermat cubic threefold, their 135 intersection points, and the
// action of the diagonal group A(3,3,5) = {diag(w^t1..w^t5) : sum t = 0 mod 3}.
//
// Curve E_ij^beta is identified with the cone vertex e_i - w^beta e_j. A
// group element acts by E_ij^beta -> E_ij^(beta + t_j - t_i).

#include <array>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "fermatball/algebra.hpp"

namespace fermatball::fano {

constexpr int kCurveCount = 30;
constexpr int kPointCount = 135;
constexpr int kGroupOrder = 81;

struct CurveLabel {
  int i = 1;     // 1 <= i < j <= 5
  int j = 2;
  int beta = 0;  // exponent of w, in {0,1,2}

  auto operator<=>(const CurveLabel&) const = default;
  bool disjoint_from(const CurveLabel& o) const {
    return i != o.i && i != o.j && j != o.i && j != o.j;
  }
  std::string str() const;  // "E12^0"
};

// Unordered pair of curves with disjoint index pairs; stored with
// (first.i, first.j) < (second.i, second.j).
struct PointLabel {
  CurveLabel first;
  CurveLabel second;

  static PointLabel make(const CurveLabel& a, const CurveLabel& b);
  auto operator<=>(const PointLabel&) const = default;
  bool lies_on(const CurveLabel& c) const { return c == first || c == second; }
  std::string str() const;
};

struct TorsionAut {
  std::array<int, 5> t{0, 0, 0, 0, 0};

  static TorsionAut make(std::array<int, 5> exps);  // validates sum = 0 mod 3
  static TorsionAut identity() { return {}; }
  bool is_identity() const { return t == std::array<int, 5>{0, 0, 0, 0, 0}; }
  int exp(int index) const { return t[index - 1]; }  // 1-based

  TorsionAut operator*(const TorsionAut& o) const;
  TorsionAut inverse() const;
  auto operator<=>(const TorsionAut&) const = default;
  std::string str() const;
};

const std::vector<CurveLabel>& all_curves();
const std::vector<PointLabel>& all_points();
const std::vector<TorsionAut>& all_group_elements();

int curve_index(const CurveLabel& c);
int point_index(const PointLabel& p);

int intersection_number(const CurveLabel& a, const CurveLabel& b);
algebra::IntMatrix curve_gram_matrix();

CurveLabel act_on_curve(const TorsionAut& g, const CurveLabel& c);
PointLabel act_on_point(const TorsionAut& g, const PointLabel& p);

struct CurveStabilizer {
  std::vector<TorsionAut> setwise;    // 27 elements: t_i = t_j
  std::vector<TorsionAut> pointwise;  // 3 elements fixing the curve pointwise
};

CurveStabilizer stabilizer(const CurveLabel& c);
std::vector<TorsionAut> stabilizer(const PointLabel& p);
bool fixes_curve_pointwise(const TorsionAut& g, const CurveLabel& c);

// Eigenvalue exponents (k1, k2) meaning (w^k1, w^k2) on the two cone vertices
// spanning the plane of p. Throws if g does not stabilize p.
std::pair<int, int> tangent_eigenvalues(const TorsionAut& g, const PointLabel& p);

struct FixedLocus {
  std::vector<CurveLabel> curves;   // pointwise fixed
  std::vector<PointLabel> isolated;
};

// Isolated points are stabilized points on no pointwise-fixed curve of g.
FixedLocus fixed_locus(const TorsionAut& g);

template <class T>
std::vector<T> orbit(const T& x);

struct OrbitCensus {
  std::vector<std::vector<CurveLabel>> curve_orbits;
  std::vector<std::vector<PointLabel>> point_orbits;
  // Pair labels (i, j) of the quotient curves X_ij, in curve-orbit order.
  std::vector<std::pair<int, int>> quotient_labels;
  // Pullback of X_ij as coefficients on the 30 curves (3 on each E_ij^beta).
  std::vector<std::vector<int>> pullbacks;
  int ramification_on_curves = 0;  // |pointwise fixer|
  int ramification_at_points = 0;  // |point stabilizer|
};

OrbitCensus orbit_census();

// X_ij . X_st on the quotient: 1 if disjoint, -1 if equal, 0 otherwise.
int quotient_pairing(std::pair<int, int> a, std::pair<int, int> b);

}  // namespace fermatball::fano
