#include "fermatball/namba.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fermatball/error.hpp"

namespace fermatball::namba {

using algebra::IntMatrix;
using algebra::Rational;
using surface::DivisorClass;
using surface::IntersectionLattice;

std::vector<Integer> BranchArrangement::weights() const {
  std::vector<Integer> w;
  for (const auto& b : branches) w.push_back(b.weight);
  return w;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
  fail(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  is.imbue(std::locale::classic());
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

bool is_integer_token(const std::string& s) {
  std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (k == s.size()) return false;
  for (; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') return false;
  return true;
}

Integer parse_int(const std::string& s, std::size_t line) {
  if (!is_integer_token(s)) parse_error(line, "expected an integer, got '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

BranchArrangement parse_arrangement(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;

  long rank = -1;
  std::vector<std::vector<Integer>> gram_rows;
  bool in_gram = false;
  std::vector<Integer> canonical;
  std::vector<BranchDivisor> branches;
  std::size_t gram_line = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto words = split_words(raw);
    if (words.empty()) continue;

    if (in_gram) {
      if (static_cast<long>(words.size()) != rank)
        parse_error(lineno, "gram row needs " + std::to_string(rank) + " integers");
      std::vector<Integer> row;
      for (const auto& w : words) row.push_back(parse_int(w, lineno));
      gram_rows.push_back(std::move(row));
      if (static_cast<long>(gram_rows.size()) == rank) in_gram = false;
      continue;
    }

    const std::string& key = words[0];
    if (key == "rank") {
      if (rank >= 0) parse_error(lineno, "duplicate 'rank'");
      if (words.size() != 2) parse_error(lineno, "'rank' takes one integer");
      Integer r = parse_int(words[1], lineno);
      if (r < 1 || r > 64) parse_error(lineno, "rank must be between 1 and 64");
      rank = r.get_si();
    } else if (key == "gram") {
      if (rank < 0) parse_error(lineno, "'gram' before 'rank'");
      if (!gram_rows.empty()) parse_error(lineno, "duplicate 'gram'");
      if (words.size() != 1) parse_error(lineno, "'gram' takes no arguments");
      in_gram = true;
      gram_line = lineno;
    } else if (key == "canonical") {
      if (rank < 0) parse_error(lineno, "'canonical' before 'rank'");
      if (!canonical.empty()) parse_error(lineno, "duplicate 'canonical'");
      if (static_cast<long>(words.size()) != rank + 1)
        parse_error(lineno, "'canonical' needs " + std::to_string(rank) + " integers");
      for (std::size_t k = 1; k < words.size(); ++k) canonical.push_back(parse_int(words[k], lineno));
    } else if (key == "branch") {
      if (rank < 0) parse_error(lineno, "'branch' before 'rank'");
      const std::size_t n = static_cast<std::size_t>(rank);
      if (words.size() < n + 3 || words.size() > n + 4 || words[n + 1] != "weight")
        parse_error(lineno, "expected 'branch c1 .. c" + std::to_string(rank) + " weight e [label]'");
      std::vector<Rational> coeffs;
      for (std::size_t k = 1; k <= n; ++k) coeffs.emplace_back(parse_int(words[k], lineno));
      Integer e = parse_int(words[n + 2], lineno);
      if (e < 2) parse_error(lineno, "branch weight must be at least 2");
      std::string label = words.size() == n + 4 ? words[n + 3] : "D" + std::to_string(branches.size() + 1);
      branches.push_back({DivisorClass(std::move(coeffs)), e, label});
    } else {
      parse_error(lineno, "unknown directive '" + key + "'");
    }
  }

  if (rank < 0) fail(ErrorCode::Parse, "missing 'rank'");
  if (in_gram || static_cast<long>(gram_rows.size()) != rank)
    fail(ErrorCode::Parse, "incomplete or missing 'gram' block");
  if (canonical.empty()) fail(ErrorCode::Parse, "missing 'canonical'");

  IntMatrix gram(rank, rank);
  for (long r = 0; r < rank; ++r)
    for (long c = 0; c < rank; ++c) gram(r, c) = gram_rows[r][c];
  for (long r = 0; r < rank; ++r)
    for (long c = r + 1; c < rank; ++c)
      if (gram(r, c) != gram(c, r)) parse_error(gram_line, "gram matrix is not symmetric");

  std::vector<Rational> k;
  for (const auto& c : canonical) k.emplace_back(c);
  return BranchArrangement{IntersectionLattice(std::move(gram), DivisorClass(std::move(k))), std::move(branches)};
}

BranchArrangement load_arrangement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open arrangement file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_arrangement(buf.str());
}

std::string format_arrangement(const BranchArrangement& arr) {
  std::ostringstream os;
  const auto& g = arr.lattice.gram();
  os << "rank " << arr.lattice.rank() << "\ngram\n";
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) os << (c ? " " : "") << g(r, c).get_str();
    os << "\n";
  }
  os << "canonical";
  for (const auto& c : arr.lattice.canonical().coeffs()) os << " " << algebra::to_string(c);
  os << "\n";
  for (const auto& b : arr.branches) {
    os << "branch";
    for (const auto& c : b.divisor.coeffs()) os << " " << algebra::to_string(c);
    os << " weight " << b.weight.get_str() << " " << b.label << "\n";
  }
  return os.str();
}

BranchArrangement p2_quadrilateral() {
  return parse_arrangement(
      "# Complete quadrilateral: six lines through four general points of P^2.\n"
      "rank 1\n"
      "gram\n"
      "1\n"
      "canonical -3\n"
      "branch 1 weight 3 L12\n"
      "branch 1 weight 3 L13\n"
      "branch 1 weight 3 L14\n"
      "branch 1 weight 3 L23\n"
      "branch 1 weight 3 L24\n"
      "branch 1 weight 3 L34\n");
}

BranchArrangement dp5_ten_curves() {
  return parse_arrangement(
      "# Degree 5 del Pezzo surface, basis L E1 E2 E3 E4, with its ten (-1)-curves.\n"
      "rank 5\n"
      "gram\n"
      "1 0 0 0 0\n"
      "0 -1 0 0 0\n"
      "0 0 -1 0 0\n"
      "0 0 0 -1 0\n"
      "0 0 0 0 -1\n"
      "canonical -3 1 1 1 1\n"
      "branch 0 1 0 0 0 weight 3 E1\n"
      "branch 0 0 1 0 0 weight 3 E2\n"
      "branch 0 0 0 1 0 weight 3 E3\n"
      "branch 0 0 0 0 1 weight 3 E4\n"
      "branch 1 -1 -1 0 0 weight 3 L-E1-E2\n"
      "branch 1 -1 0 -1 0 weight 3 L-E1-E3\n"
      "branch 1 -1 0 0 -1 weight 3 L-E1-E4\n"
      "branch 1 0 -1 -1 0 weight 3 L-E2-E3\n"
      "branch 1 0 -1 0 -1 weight 3 L-E2-E4\n"
      "branch 1 0 0 -1 -1 weight 3 L-E3-E4\n");
}

// ---------------------------------------------------------------------------
// Cover classifying group

namespace {

Integer lcm_of(const std::vector<Integer>& xs) {
  Integer m = 1;
  for (const auto& x : xs) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), x.get_mpz_t());
  return m;
}

void check_arrangement(const BranchArrangement& arr) {
  if (arr.branches.empty()) fail(ErrorCode::InvalidArgument, "arrangement has no branch divisors");
  for (const auto& b : arr.branches) {
    if (b.divisor.rank() != arr.lattice.rank() || !b.divisor.is_integral())
      fail(ErrorCode::InvalidArgument, "branch divisor " + b.label + " is not an integral class of the lattice");
    if (b.weight < 2) fail(ErrorCode::InvalidArgument, "branch weight below 2 for " + b.label);
  }
}

}  // namespace

FiniteAbelianGroup divisor_cover_group(const BranchArrangement& arr) {
  check_arrangement(arr);
  const std::size_t s = arr.branches.size();
  const std::size_t n = arr.lattice.rank();
  const std::vector<Integer> e = arr.weights();
  const Integer m = lcm_of(e);

  // Lattice K = {x in Z^s : sum x_i (m/e_i) D_i = 0 mod m} as the projection of
  // the integer kernel of [A | m I].
  IntMatrix big(n, s + n);
  for (std::size_t i = 0; i < s; ++i) {
    const Integer scale = m / e[i];
    for (std::size_t r = 0; r < n; ++r) big(r, i) = scale * arr.branches[i].divisor.coeffs()[r].get_num();
  }
  for (std::size_t r = 0; r < n; ++r) big(r, s + r) = m;
  const auto snf = algebra::smith_normal_form(big);
  const std::size_t r = snf.rank();

  IntMatrix gens(s, s + n - r);
  for (std::size_t k = r; k < s + n; ++k)
    for (std::size_t i = 0; i < s; ++i) gens(i, k - r) = snf.V(i, k);

  // Basis B of K from the Smith form of its generating set.
  const auto snf_k = algebra::smith_normal_form(gens);
  if (snf_k.rank() != s) fail(ErrorCode::Internal, "cover lattice is not of full rank");
  const auto dk = snf_k.diagonal();
  IntMatrix basis(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) basis(i, k) = snf_k.U_inv(i, k) * dk[k];

  // Relations diag(e) expressed in the basis: C = diag(1/d) U diag(e).
  IntMatrix rel(s, s);
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t j = 0; j < s; ++j) {
      Integer v = snf_k.U(k, j) * e[j];
      if (!mpz_divisible_p(v.get_mpz_t(), dk[k].get_mpz_t()))
        fail(ErrorCode::Internal, "weight lattice not contained in the cover lattice");
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), dk[k].get_mpz_t());
      rel(k, j) = v;
    }
  const auto snf_rel = algebra::smith_normal_form(rel);
  const IntMatrix new_basis = basis * snf_rel.U_inv;

  std::vector<Integer> orders;
  std::vector<std::vector<Integer>> generators;
  for (std::size_t k = 0; k < s; ++k) {
    const Integer& d = snf_rel.D(k, k);
    if (d <= 1) continue;
    orders.push_back(d);
    std::vector<Integer> g(s);
    for (std::size_t i = 0; i < s; ++i) mpz_fdiv_r(g[i].get_mpz_t(), new_basis(i, k).get_mpz_t(), e[i].get_mpz_t());
    generators.push_back(std::move(g));
  }
  FiniteAbelianGroup group(orders);
  group.generators = std::move(generators);
  group.moduli = e;
  return group;
}

// ---------------------------------------------------------------------------
// Subgroups of elementary abelian groups

namespace {

int mod(long x, int p) { return static_cast<int>(((x % p) + p) % p); }

int inv_mod(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  fail(ErrorCode::Internal, "no inverse mod p");
}

int ambient_prime(const FiniteAbelianGroup& ambient) {
  auto p = ambient.elementary_prime();
  if (!p) fail(ErrorCode::Domain, "subgroup computations need an elementary abelian group, got " + ambient.str());
  for (const auto& m : ambient.moduli)
    if (m != *p) fail(ErrorCode::Domain, "branch weights must all equal the exponent " + std::to_string(*p));
  return static_cast<int>(*p);
}

std::vector<std::vector<int>> ambient_rows(const FiniteAbelianGroup& ambient, int p) {
  std::vector<std::vector<int>> rows;
  if (ambient.generators.empty()) {
    // No embedding recorded: use the invariant-factor coordinates.
    const std::size_t r = ambient.invariant_factors().size();
    for (std::size_t k = 0; k < r; ++k) {
      rows.emplace_back(r, 0);
      rows.back()[k] = 1;
    }
    return rows;
  }
  for (const auto& g : ambient.generators) {
    std::vector<int> v;
    for (const auto& x : g) v.push_back(mod(x.get_si(), p));
    rows.push_back(std::move(v));
  }
  return rows;
}

}  // namespace

std::vector<std::vector<int>> echelon_basis(std::vector<std::vector<int>> rows, int p) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  for (auto& r : rows)
    for (auto& x : r) x = mod(x, p);
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[lead], rows[piv]);
    const int inv = inv_mod(rows[lead][c], p);
    for (auto& x : rows[lead]) x = (x * inv) % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][c] == 0) continue;
      const int f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = mod(rows[r][k] - f * rows[lead][k], p);
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

CoverGroup CoverGroup::full(const FiniteAbelianGroup& ambient) {
  const int p = ambient_prime(ambient);
  auto amb = echelon_basis(ambient_rows(ambient, p), p);
  return CoverGroup(p, amb, amb);
}

CoverGroup CoverGroup::generated(const FiniteAbelianGroup& ambient, const std::vector<std::vector<int>>& gens) {
  const int p = ambient_prime(ambient);
  auto amb = echelon_basis(ambient_rows(ambient, p), p);
  CoverGroup full_group(p, amb, amb);
  for (const auto& g : gens) {
    if (g.size() != ambient.moduli.size()) fail(ErrorCode::InvalidArgument, "generator has the wrong length");
    if (!full_group.contains(g)) fail(ErrorCode::InvalidArgument, "generator does not lie in the ambient group");
  }
  return CoverGroup(p, std::move(amb), echelon_basis(gens, p));
}

Integer CoverGroup::order() const {
  Integer o;
  mpz_ui_pow_ui(o.get_mpz_t(), static_cast<unsigned long>(p_), basis_.size());
  return o;
}

bool CoverGroup::contains(const std::vector<int>& v) const {
  auto rows = basis_;
  rows.push_back(v);
  return echelon_basis(std::move(rows), p_).size() == basis_.size();
}

bool CoverGroup::is_subgroup_of(const CoverGroup& other) const {
  if (p_ != other.p_ || ambient_ != other.ambient_) fail(ErrorCode::InvalidArgument, "cover groups have different ambients");
  return std::all_of(basis_.begin(), basis_.end(), [&](const auto& v) { return other.contains(v); });
}

bool CoverGroup::surjects_on_each_coordinate() const {
  if (basis_.empty()) return false;
  for (std::size_t c = 0; c < basis_.front().size(); ++c)
    if (std::none_of(basis_.begin(), basis_.end(), [&](const auto& v) { return v[c] != 0; })) return false;
  return true;
}

std::string CoverGroup::str() const {
  std::string s = "<";
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    s += k ? " " : "";
    for (int x : basis_[k]) s += std::to_string(x);
  }
  return s + ">";
}

Factorization factorization_exists(const CoverGroup& g1, const CoverGroup& g2) {
  Factorization f;
  f.exists = g1.is_subgroup_of(g2);
  if (f.exists) f.degree = g2.order() / g1.order();
  return f;
}

bool etale_check(const std::vector<Integer>& orders1, const std::vector<Integer>& orders2) {
  if (orders1.size() != orders2.size()) fail(ErrorCode::InvalidArgument, "branch order lists differ in length");
  return orders1 == orders2;
}

SubgroupCensus subgroup_census(const FiniteAbelianGroup& ambient, const Integer& index) {
  SubgroupCensus census;
  if (ambient.is_trivial()) {
    if (index != 1) fail(ErrorCode::InvalidArgument, "the trivial group has only index 1");
    census.count = 1;
    return census;
  }
  const int p = ambient_prime(ambient);
  const std::size_t r = ambient.invariant_factors().size();
  std::size_t codim = 0;
  Integer rest = index;
  while (rest > 1 && rest % p == 0) {
    rest /= p;
    ++codim;
  }
  if (rest != 1 || codim > r)
    fail(ErrorCode::InvalidArgument, "index " + index.get_str() + " is not a power of " + std::to_string(p) +
                                         " dividing the group order");
  const std::size_t dim = r - codim;
  const auto amb = ambient_rows(ambient, p);
  const auto amb_echelon = echelon_basis(amb, p);

  // Walk every reduced echelon matrix of size dim x r over F_p, one per subspace.
  std::vector<std::size_t> pivots(dim);
  std::iota(pivots.begin(), pivots.end(), 0);
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t row = 0; row < dim; ++row)
      for (std::size_t c = pivots[row] + 1; c < r; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(row, c);
    std::vector<int> digits(free.size(), 0);
    for (;;) {
      std::vector<std::vector<int>> gens;
      for (std::size_t row = 0; row < dim; ++row) {
        std::vector<int> coeff(r, 0);
        coeff[pivots[row]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f)
          if (free[f].first == row) coeff[free[f].second] = digits[f];
        std::vector<int> v(amb.front().size(), 0);
        for (std::size_t k = 0; k < r; ++k)
          for (std::size_t c = 0; c < v.size(); ++c) v[c] = (v[c] + coeff[k] * amb[k][c]) % p;
        gens.push_back(std::move(v));
      }
      CoverGroup g(p, amb_echelon, echelon_basis(gens, p));
      if (g.surjects_on_each_coordinate()) ++census.surjective_count;
      census.representatives.push_back(std::move(g));

      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    // Next pivot set in lexicographic order.
    std::size_t i = dim;
    while (i > 0 && pivots[i - 1] == r - dim + i - 1) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  std::sort(census.representatives.begin(), census.representatives.end());
  census.count = census.representatives.size();
  return census;
}

}  // namespace fermatball::namba
