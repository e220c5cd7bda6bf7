#include "fermatball/surface.hpp"

#include <functional>

#include "fermatball/error.hpp"

namespace fermatball::surface {

DivisorClass DivisorClass::from_ints(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return DivisorClass(std::move(v));
}

bool DivisorClass::is_integral() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.rank() != rank()) fail(ErrorCode::InvalidArgument, "divisor classes of different rank");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

DivisorClass operator-(DivisorClass x, const DivisorClass& y) {
  x += Rational(-1) * y;
  return x;
}

DivisorClass operator*(const Rational& k, DivisorClass x) {
  for (auto& c : x.coeffs_) c *= k;
  return x;
}

std::string DivisorClass::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? "," : "") + algebra::to_string(coeffs_[i]);
  return s + ")";
}

IntersectionLattice::IntersectionLattice(IntMatrix gram, DivisorClass canonical)
    : gram_(std::move(gram)), canonical_(std::move(canonical)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols())
    fail(ErrorCode::InvalidArgument, "gram matrix must be square and non-empty");
  for (std::size_t r = 0; r < gram_.rows(); ++r)
    for (std::size_t c = r + 1; c < gram_.cols(); ++c)
      if (gram_(r, c) != gram_(c, r)) fail(ErrorCode::InvalidArgument, "gram matrix is not symmetric");
  if (canonical_.rank() != rank()) fail(ErrorCode::InvalidArgument, "canonical class has wrong rank");
}

Rational IntersectionLattice::pair(const DivisorClass& x, const DivisorClass& y) const {
  if (x.rank() != rank() || y.rank() != rank())
    fail(ErrorCode::InvalidArgument, "divisor class does not live in this lattice");
  Rational s = 0;
  for (std::size_t r = 0; r < rank(); ++r) {
    if (x.coeffs()[r] == 0) continue;
    Rational row = 0;
    for (std::size_t c = 0; c < rank(); ++c) row += Rational(gram_(r, c)) * y.coeffs()[c];
    s += x.coeffs()[r] * row;
  }
  return s;
}

DelPezzo5 del_pezzo_lattice() {
  IntMatrix gram(5, 5);
  gram(0, 0) = 1;
  for (int k = 1; k < 5; ++k) gram(k, k) = -1;
  IntersectionLattice lat(gram, DivisorClass::from_ints({-3, 1, 1, 1, 1}));

  std::vector<DivisorClass> curves;
  std::vector<std::string> names;
  for (int a = 1; a <= 4; ++a) {
    std::vector<Rational> v(5, 0);
    v[a] = 1;
    curves.emplace_back(std::move(v));
    names.push_back("E" + std::to_string(a));
  }
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) {
      std::vector<Rational> v{1, 0, 0, 0, 0};
      v[a] = -1;
      v[b] = -1;
      curves.emplace_back(std::move(v));
      names.push_back("L-E" + std::to_string(a) + "-E" + std::to_string(b));
    }

  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) pairs.emplace_back(i, j);

  auto petersen = [](std::pair<int, int> a, std::pair<int, int> b) -> long {
    if (a == b) return -1;
    return (a.first != b.first && a.first != b.second && a.second != b.first && a.second != b.second) ? 1 : 0;
  };

  std::vector<std::vector<Rational>> g(10, std::vector<Rational>(10));
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b) g[a][b] = lat.pair(curves[a], curves[b]);

  std::vector<int> assigned(10, -1);
  std::vector<bool> used(10, false);
  std::function<bool(int)> search = [&](int k) -> bool {
    if (k == 10) return true;
    for (int p = 0; p < 10; ++p) {
      if (used[p]) continue;
      bool ok = g[k][k] == petersen(pairs[p], pairs[p]);
      for (int m = 0; m < k && ok; ++m) ok = g[k][m] == petersen(pairs[p], pairs[assigned[m]]);
      if (!ok) continue;
      used[p] = true;
      assigned[k] = p;
      if (search(k + 1)) return true;
      used[p] = false;
    }
    return false;
  };
  if (!search(0)) fail(ErrorCode::Internal, "no Petersen labeling of the (-1)-curves");

  std::vector<std::pair<int, int>> labels;
  for (int k = 0; k < 10; ++k) labels.push_back(pairs[assigned[k]]);
  return DelPezzo5{std::move(lat), std::move(curves), std::move(names), std::move(labels)};
}

Integer config_euler(const CurveConfig& cfg) {
  Integer chi = 0;
  for (const auto& e : cfg.curve_euler) chi += e;
  for (const auto& p : cfg.points) {
    if (p.size() < 2) fail(ErrorCode::InvalidArgument, "a configuration point must lie on at least two curves");
    for (int c : p)
      if (c < 0 || static_cast<std::size_t>(c) >= cfg.curve_euler.size())
        fail(ErrorCode::InvalidArgument, "point references an unknown curve");
    chi -= static_cast<long>(p.size()) - 1;
  }
  return chi;
}

Integer stratified_euler(std::span<const Stratum> strata) {
  Integer chi = 0;
  for (const auto& s : strata) chi += s.degree * s.euler;
  return chi;
}

Rational solve_stratum(const Integer& total, std::span<const Stratum> known, const Integer& degree) {
  if (degree <= 0) fail(ErrorCode::InvalidArgument, "stratum degree must be positive");
  Rational r(total - stratified_euler(known), degree);
  r.canonicalize();
  return r;
}

Rational quotient_curve_euler(const Integer& cover_euler, const Integer& degree, const Integer& branch_points,
                              const Integer& ramification) {
  if (degree <= 0 || ramification <= 0) fail(ErrorCode::InvalidArgument, "degree and ramification must be positive");
  Rational fiber(degree, ramification);
  fiber.canonicalize();
  Rational r = (Rational(cover_euler) - Rational(branch_points) * fiber) / Rational(degree) + Rational(branch_points);
  r.canonicalize();
  return r;
}

Integer riemann_hurwitz_euler(const Integer& degree, const Integer& base_euler, std::span<const Integer> ramification) {
  Integer chi = degree * base_euler;
  for (const auto& e : ramification) {
    if (e <= 0 || degree % e != 0) fail(ErrorCode::InvalidArgument, "ramification index must divide the degree");
    chi -= degree - degree / e;
  }
  return chi;
}

Rational branched_canonical(const IntersectionLattice& base, std::span<const WeightedDivisor> branch,
                            const Integer& degree) {
  if (degree <= 0) fail(ErrorCode::InvalidArgument, "cover degree must be positive");
  DivisorClass k = base.canonical();
  for (const auto& b : branch) {
    if (b.weight < 2) fail(ErrorCode::InvalidArgument, "branch weights must be at least 2");
    if (b.divisor.rank() != base.rank()) fail(ErrorCode::InvalidArgument, "branch class not in the base lattice");
    Rational coeff = Rational(1) - Rational(1, 1) / Rational(b.weight);
    k += coeff * b.divisor;
  }
  Rational c1 = Rational(degree) * base.self(k);
  c1.canonicalize();
  return c1;
}

LogChern log_chern(const Integer& k_squared, const Integer& k_dot_d, const Integer& d_squared,
                   const Integer& euler_surface, const Integer& euler_divisor) {
  LogChern out;
  out.c1_squared = k_squared + 2 * k_dot_d + d_squared;
  out.c2 = euler_surface - euler_divisor;
  out.satisfies_inequality = out.c1_squared <= 3 * out.c2;
  out.equality = out.c1_squared == 3 * out.c2;
  return out;
}

ChernPair hirzebruch_invariants(long n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "cover order n must be at least 2");
  const Integer N = n;
  const DelPezzo5 dp = del_pezzo_lattice();

  // Strata of the base: complement of the ten curves, the curves minus the 15
  // double points, and the double points.
  CurveConfig cfg;
  cfg.curve_euler.assign(10, 2);
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b)
      if (dp.lattice.pair(dp.minus_one_curves[a], dp.minus_one_curves[b]) == 1) cfg.points.push_back({a, b});
  const Integer chi_curves = config_euler(cfg);
  const Integer chi_points = static_cast<long>(cfg.points.size());
  const Integer chi_base = 3 + 4;  // blow-up of P^2 at four points
  const Integer n3 = N * N * N;
  const std::vector<Stratum> strata{
      {chi_base - chi_curves, n3 * N * N}, {chi_curves - chi_points, n3 * N}, {chi_points, n3}};

  std::vector<WeightedDivisor> branch;
  for (const auto& c : dp.minus_one_curves) branch.push_back({c, N});
  const Rational c1 = branched_canonical(dp.lattice, branch, n3 * N * N);
  if (c1.get_den() != 1) fail(ErrorCode::Internal, "non-integral c1^2 for a smooth cover");
  return {c1.get_num(), stratified_euler(strata)};
}

}  // namespace fermatball::surface
