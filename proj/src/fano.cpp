#include "fermatball/fano.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fermatball/error.hpp"

namespace fermatball::fano {

namespace {

int mod3(int x) { return ((x % 3) + 3) % 3; }

}  // namespace

std::string CurveLabel::str() const {
  return "E" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(beta);
}

PointLabel PointLabel::make(const CurveLabel& a, const CurveLabel& b) {
  if (!a.disjoint_from(b)) fail(ErrorCode::InvalidArgument, a.str() + " and " + b.str() + " do not meet");
  if (std::pair(a.i, a.j) < std::pair(b.i, b.j)) return {a, b};
  return {b, a};
}

std::string PointLabel::str() const { return first.str() + "." + second.str(); }

TorsionAut TorsionAut::make(std::array<int, 5> exps) {
  int s = 0;
  for (auto& e : exps) {
    e = mod3(e);
    s += e;
  }
  if (s % 3 != 0) fail(ErrorCode::InvalidArgument, "exponents must sum to 0 mod 3");
  return TorsionAut{exps};
}

TorsionAut TorsionAut::operator*(const TorsionAut& o) const {
  TorsionAut r;
  for (int k = 0; k < 5; ++k) r.t[k] = mod3(t[k] + o.t[k]);
  return r;
}

TorsionAut TorsionAut::inverse() const {
  TorsionAut r;
  for (int k = 0; k < 5; ++k) r.t[k] = mod3(-t[k]);
  return r;
}

std::string TorsionAut::str() const {
  std::string s = "(";
  for (int k = 0; k < 5; ++k) s += (k ? "," : "") + std::to_string(t[k]);
  return s + ")";
}

const std::vector<CurveLabel>& all_curves() {
  static const std::vector<CurveLabel> curves = [] {
    std::vector<CurveLabel> out;
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j)
        for (int b = 0; b < 3; ++b) out.push_back({i, j, b});
    return out;
  }();
  return curves;
}

const std::vector<PointLabel>& all_points() {
  static const std::vector<PointLabel> points = [] {
    std::vector<PointLabel> out;
    const auto& cs = all_curves();
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (std::size_t b = a + 1; b < cs.size(); ++b)
        if (cs[a].disjoint_from(cs[b])) out.push_back(PointLabel::make(cs[a], cs[b]));
    std::sort(out.begin(), out.end());
    return out;
  }();
  return points;
}

const std::vector<TorsionAut>& all_group_elements() {
  static const std::vector<TorsionAut> group = [] {
    std::vector<TorsionAut> out;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) out.push_back(TorsionAut{{a, b, c, d, mod3(-(a + b + c + d))}});
    return out;
  }();
  return group;
}

int curve_index(const CurveLabel& c) {
  const auto& cs = all_curves();
  auto it = std::lower_bound(cs.begin(), cs.end(), c);
  if (it == cs.end() || *it != c) fail(ErrorCode::InvalidArgument, "not a curve label: " + c.str());
  return static_cast<int>(it - cs.begin());
}

int point_index(const PointLabel& p) {
  const auto& ps = all_points();
  auto it = std::lower_bound(ps.begin(), ps.end(), p);
  if (it == ps.end() || *it != p) fail(ErrorCode::InvalidArgument, "not a point label: " + p.str());
  return static_cast<int>(it - ps.begin());
}

int intersection_number(const CurveLabel& a, const CurveLabel& b) {
  if (a == b) return -3;
  return a.disjoint_from(b) ? 1 : 0;
}

algebra::IntMatrix curve_gram_matrix() {
  const auto& cs = all_curves();
  algebra::IntMatrix g(cs.size(), cs.size());
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = 0; b < cs.size(); ++b) g(a, b) = intersection_number(cs[a], cs[b]);
  return g;
}

CurveLabel act_on_curve(const TorsionAut& g, const CurveLabel& c) {
  return {c.i, c.j, mod3(c.beta + g.exp(c.j) - g.exp(c.i))};
}

PointLabel act_on_point(const TorsionAut& g, const PointLabel& p) {
  return PointLabel::make(act_on_curve(g, p.first), act_on_curve(g, p.second));
}

// The curve is the base of a cone over the plane cubic in the three remaining
// coordinates; g fixes every line of the cone iff it fixes the vertex and acts
// as a scalar on the remaining coordinates.
bool fixes_curve_pointwise(const TorsionAut& g, const CurveLabel& c) {
  if (g.exp(c.i) != g.exp(c.j)) return false;
  std::vector<int> rest;
  for (int k = 1; k <= 5; ++k)
    if (k != c.i && k != c.j) rest.push_back(g.exp(k));
  return rest[0] == rest[1] && rest[1] == rest[2];
}

CurveStabilizer stabilizer(const CurveLabel& c) {
  CurveStabilizer s;
  for (const auto& g : all_group_elements()) {
    if (act_on_curve(g, c) != c) continue;
    s.setwise.push_back(g);
    if (fixes_curve_pointwise(g, c)) s.pointwise.push_back(g);
  }
  return s;
}

std::vector<TorsionAut> stabilizer(const PointLabel& p) {
  std::vector<TorsionAut> s;
  for (const auto& g : all_group_elements())
    if (act_on_point(g, p) == p) s.push_back(g);
  return s;
}

std::pair<int, int> tangent_eigenvalues(const TorsionAut& g, const PointLabel& p) {
  if (act_on_point(g, p) != p)
    fail(ErrorCode::Domain, "element " + g.str() + " does not stabilize " + p.str());
  // On a stabilized point t_i = t_j and t_s = t_t, so each vertex is an eigenvector.
  return {g.exp(p.first.i), g.exp(p.second.i)};
}

FixedLocus fixed_locus(const TorsionAut& g) {
  if (g.is_identity()) fail(ErrorCode::Domain, "the identity fixes the whole surface");
  FixedLocus f;
  for (const auto& c : all_curves())
    if (fixes_curve_pointwise(g, c)) f.curves.push_back(c);
  for (const auto& p : all_points()) {
    if (act_on_point(g, p) != p) continue;
    bool on_fixed_curve = std::any_of(f.curves.begin(), f.curves.end(),
                                      [&](const CurveLabel& c) { return p.lies_on(c); });
    if (!on_fixed_curve) f.isolated.push_back(p);
  }
  return f;
}

template <class T>
std::vector<T> orbit(const T& x) {
  std::set<T> seen;
  for (const auto& g : all_group_elements()) {
    if constexpr (std::is_same_v<T, CurveLabel>)
      seen.insert(act_on_curve(g, x));
    else
      seen.insert(act_on_point(g, x));
  }
  return {seen.begin(), seen.end()};
}

template std::vector<CurveLabel> orbit(const CurveLabel&);
template std::vector<PointLabel> orbit(const PointLabel&);

OrbitCensus orbit_census() {
  OrbitCensus census;
  std::set<CurveLabel> seen_curves;
  for (const auto& c : all_curves()) {
    if (seen_curves.count(c)) continue;
    auto orb = orbit(c);
    seen_curves.insert(orb.begin(), orb.end());
    census.quotient_labels.emplace_back(c.i, c.j);
    std::vector<int> pullback(kCurveCount, 0);
    for (const auto& e : orb) pullback[curve_index(e)] = static_cast<int>(stabilizer(e).pointwise.size());
    census.pullbacks.push_back(std::move(pullback));
    census.curve_orbits.push_back(std::move(orb));
  }
  std::set<PointLabel> seen_points;
  for (const auto& p : all_points()) {
    if (seen_points.count(p)) continue;
    auto orb = orbit(p);
    seen_points.insert(orb.begin(), orb.end());
    census.point_orbits.push_back(std::move(orb));
  }
  census.ramification_on_curves = static_cast<int>(stabilizer(all_curves().front()).pointwise.size());
  census.ramification_at_points = static_cast<int>(stabilizer(all_points().front()).size());
  return census;
}

int quotient_pairing(std::pair<int, int> a, std::pair<int, int> b) {
  if (a == b) return -1;
  bool disjoint = a.first != b.first && a.first != b.second && a.second != b.first && a.second != b.second;
  return disjoint ? 1 : 0;
}

}  // namespace fermatball::fano
