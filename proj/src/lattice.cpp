#include "fermatball/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

#include "fermatball/error.hpp"

namespace fermatball::lattice {

using algebra::lambda_valuation;

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix UnitaryMatrix::identity() { return diagonal(0, 0, 0); }

UnitaryMatrix UnitaryMatrix::diagonal(long a, long b, long c) {
  UnitaryMatrix m;
  m(0, 0) = EisensteinInt::omega_pow(a);
  m(1, 1) = EisensteinInt::omega_pow(b);
  m(2, 2) = EisensteinInt::omega_pow(c);
  return m;
}

UnitaryMatrix UnitaryMatrix::permutation(int i, int j) {
  std::array<int, 3> perm{0, 1, 2};
  std::swap(perm[i], perm[j]);
  UnitaryMatrix m;
  for (int r = 0; r < 3; ++r) m(r, perm[r]) = 1;
  return m;
}

UnitaryMatrix UnitaryMatrix::conj_transpose() const {
  UnitaryMatrix m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r).conj();
  return m;
}

EisensteinInt UnitaryMatrix::determinant() const {
  const auto& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Integer UnitaryMatrix::height() const {
  Integer h = 0;
  for (const auto& x : e_) h = std::max(h, x.norm());
  return h;
}

UnitaryMatrix operator*(const UnitaryMatrix& x, const UnitaryMatrix& y) {
  UnitaryMatrix out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      EisensteinInt s;
      for (int k = 0; k < 3; ++k) s += x(r, k) * y(k, c);
      out(r, c) = std::move(s);
    }
  return out;
}

Vector3 operator*(const UnitaryMatrix& x, const Vector3& v) {
  Vector3 out;
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) out[r] += x(r, k) * v[k];
  return out;
}

bool operator<(const UnitaryMatrix& x, const UnitaryMatrix& y) {
  const Integer hx = x.height(), hy = y.height();
  if (hx != hy) return hx < hy;
  return x.e_ < y.e_;
}

std::string UnitaryMatrix::str() const {
  std::string s;
  for (std::size_t k = 0; k < 9; ++k) s += (k ? " " : "") + e_[k].str();
  return s;
}

UnitaryMatrix UnitaryMatrix::parse(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(cur);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ';' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '[' || ch == ']')
      flush();
    else
      cur += ch;
  }
  flush();
  if (tokens.size() != 9)
    fail(ErrorCode::Parse, "a 3x3 matrix needs nine entries, got " + std::to_string(tokens.size()));
  std::array<EisensteinInt, 9> e;
  for (std::size_t k = 0; k < 9; ++k) e[k] = EisensteinInt::parse(tokens[k]);
  return UnitaryMatrix(std::move(e));
}

// ---------------------------------------------------------------------------
// Form, membership, inverse

EisensteinInt hermitian_product(const Vector3& x, const Vector3& y) {
  EisensteinInt s;
  for (int k = 0; k < 3; ++k) {
    EisensteinInt term = x[k] * y[k].conj();
    if (kForm[k] < 0)
      s -= term;
    else
      s += term;
  }
  return s;
}

bool is_unitary(const UnitaryMatrix& t) {
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      // (T^* H T)_{ab} = <col_b, col_a>
      Vector3 ca{t(0, a), t(1, a), t(2, a)}, cb{t(0, b), t(1, b), t(2, b)};
      EisensteinInt v = hermitian_product(cb, ca);
      EisensteinInt expected = a == b ? EisensteinInt(kForm[a]) : EisensteinInt(0);
      if (!(v == expected)) return false;
    }
  return true;
}

bool in_gamma(const UnitaryMatrix& t) {
  if (!is_unitary(t)) return false;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      EisensteinInt d = t(r, c) - EisensteinInt(r == c ? 1 : 0);
      if (!d.divisible_by_lambda()) return false;
    }
  return true;
}

UnitaryMatrix inverse(const UnitaryMatrix& t) {
  const EisensteinInt det = t.determinant();
  if (!det.is_unit()) fail(ErrorCode::Domain, "matrix is not invertible over Z[w]");
  const EisensteinInt det_inv = det.conj();  // units have norm 1
  UnitaryMatrix adj;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const int r1 = (c + 1) % 3, r2 = (c + 2) % 3, c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      adj(r, c) = (t(r1, c1) * t(r2, c2) - t(r1, c2) * t(r2, c1)) * det_inv;
    }
  return adj;
}

std::optional<unsigned> congruence_level(const UnitaryMatrix& t) {
  std::optional<unsigned> level;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      auto v = lambda_valuation(t(r, c) - EisensteinInt(r == c ? 1 : 0));
      if (v && (!level || *v < *level)) level = v;
    }
  return level;
}

// ---------------------------------------------------------------------------
// Reflections

UnitaryMatrix reflection(const Vector3& v) {
  if (!(hermitian_product(v, v) == EisensteinInt(1)))
    fail(ErrorCode::InvalidArgument, "reflection vector must have <v,v> = 1");
  const EisensteinInt lam = EisensteinInt::lambda();
  UnitaryMatrix r;
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      EisensteinInt term = lam * v[a] * v[c].conj();
      if (kForm[c] < 0) term = -term;
      r(a, c) = EisensteinInt(a == c ? 1 : 0) - term;
    }
  return r;
}

namespace {

std::vector<EisensteinInt> elements_up_to_norm(long max_norm) {
  std::vector<EisensteinInt> out;
  const long bound = static_cast<long>(std::sqrt(4.0 * static_cast<double>(max_norm) / 3.0)) + 1;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b) {
      EisensteinInt x(a, b);
      if (x.norm() <= max_norm) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical representative of v up to multiplication by the six units: the
// lexicographically smallest of the six scalings.
Vector3 unit_normalize(const Vector3& v) {
  Vector3 best = v;
  for (int k = 0; k < 6; ++k) {
    EisensteinInt u = EisensteinInt::omega_pow(k);
    if (k >= 3) u = -u;
    Vector3 w{u * v[0], u * v[1], u * v[2]};
    if (w < best) best = w;
  }
  return best;
}

}  // namespace

std::vector<Vector3> reflection_vectors(long max_norm) {
  const auto elems = elements_up_to_norm(max_norm);
  std::set<Vector3> seen;
  for (const auto& a : elems)
    for (const auto& b : elems)
      for (const auto& c : elems) {
        Vector3 v{a, b, c};
        if (hermitian_product(v, v) == EisensteinInt(1)) seen.insert(unit_normalize(v));
      }
  return {seen.begin(), seen.end()};
}

std::vector<UnitaryMatrix> height1_reflections() {
  std::vector<UnitaryMatrix> out;
  for (const auto& v : reflection_vectors(1)) out.push_back(reflection(v));
  return out;
}

std::vector<UnitaryMatrix> diagonal_units() {
  std::vector<UnitaryMatrix> out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) out.push_back(UnitaryMatrix::diagonal(a, b, c));
  std::sort(out.begin(), out.end());
  return out;
}

Commutator commutator(const UnitaryMatrix& t, const UnitaryMatrix& u) {
  if (!in_gamma(t) || !in_gamma(u)) fail(ErrorCode::Domain, "commutator arguments must lie in Gamma");
  UnitaryMatrix c = t * u * inverse(t) * inverse(u);
  auto level = congruence_level(c);
  return {std::move(c), level};
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<UnitaryMatrix> enumerate_gamma(long height, unsigned workers) {
  if (height < 1) fail(ErrorCode::InvalidArgument, "height must be at least 1");
  const auto elems = elements_up_to_norm(height);
  std::vector<EisensteinInt> zero_class, one_class;
  for (const auto& x : elems) {
    if (x.divisible_by_lambda()) zero_class.push_back(x);
    if ((x - EisensteinInt(1)).divisible_by_lambda()) one_class.push_back(x);
  }

  // Column k is congruent to e_k and has <c, c> = H_kk.
  std::array<std::vector<Vector3>, 3> columns;
  for (int k = 0; k < 3; ++k) {
    const auto& e0 = k == 0 ? one_class : zero_class;
    const auto& e1 = k == 1 ? one_class : zero_class;
    const auto& e2 = k == 2 ? one_class : zero_class;
    for (const auto& a : e0)
      for (const auto& b : e1)
        for (const auto& c : e2) {
          Vector3 v{a, b, c};
          if (hermitian_product(v, v) == EisensteinInt(kForm[k])) columns[k].push_back(v);
        }
  }

  const EisensteinInt zero(0);
  auto search = [&](std::size_t begin, std::size_t end, std::vector<UnitaryMatrix>& out) {
    for (std::size_t i = begin; i < end; ++i) {
      const Vector3& c0 = columns[0][i];
      for (const auto& c1 : columns[1]) {
        if (!(hermitian_product(c1, c0) == zero)) continue;
        for (const auto& c2 : columns[2]) {
          if (!(hermitian_product(c2, c0) == zero) || !(hermitian_product(c2, c1) == zero)) continue;
          UnitaryMatrix t(std::array<EisensteinInt, 9>{c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]});
          out.push_back(std::move(t));
        }
      }
    }
  };

  const std::size_t n = columns[0].size();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::vector<UnitaryMatrix>> parts(workers);
  if (workers == 1) {
    search(0, n, parts[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back(search, n * w / workers, n * (w + 1) / workers, std::ref(parts[w]));
    for (auto& th : threads) th.join();
  }

  std::vector<UnitaryMatrix> out;
  for (auto& p : parts)
    for (auto& t : p) out.push_back(std::move(t));
  std::sort(out.begin(), out.end());
  for (const auto& t : out)
    if (!in_gamma(t)) fail(ErrorCode::Internal, "enumerated matrix failed membership: " + t.str());
  return out;
}

// ---------------------------------------------------------------------------
// Residue rings

ResidueRing::ResidueRing(unsigned k) : k_(k) {
  if (k < 1 || k > 8) fail(ErrorCode::InvalidArgument, "residue level must be between 1 and 8");
  size_ = 1;
  for (unsigned i = 0; i < k; ++i) size_ *= 3;
  modulus_ = 1;
  for (unsigned i = 0; i < (k + 1) / 2; ++i) modulus_ *= 3;

  // lambda^i as (a, b) pairs.
  std::vector<std::pair<long long, long long>> lam_pow{{1, 0}};
  for (unsigned i = 1; i < k; ++i) {
    auto [a, b] = lam_pow.back();
    // (a + bw)(1 - w) = (a + b) + (2b - a) w ... using w^2 = -1 - w
    lam_pow.emplace_back(a + b, 2 * b - a);
  }
  reps_.resize(size_);
  for (std::uint32_t code = 0; code < size_; ++code) {
    long long a = 0, b = 0;
    std::uint32_t rest = code;
    for (unsigned i = 0; i < k; ++i) {
      const long long digit = rest % 3;
      rest /= 3;
      a += digit * lam_pow[i].first;
      b += digit * lam_pow[i].second;
    }
    reps_[code] = {a, b};
  }
  if (size_ <= 729) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    mul_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t x = 0; x < size_; ++x)
      for (std::uint32_t y = 0; y < size_; ++y) {
        const auto [a, b] = reps_[x];
        const auto [c, d] = reps_[y];
        add_table_[x * size_ + y] = static_cast<std::uint16_t>(encode_small(a + c, b + d));
        mul_table_[x * size_ + y] = static_cast<std::uint16_t>(encode_small(a * c - b * d, a * d + b * c - b * d));
      }
  }
}

std::uint32_t ResidueRing::encode_small(long long a, long long b) const {
  a %= modulus_;
  b %= modulus_;
  std::uint32_t code = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    long long digit = ((a + b) % 3 + 3) % 3;
    a -= digit;
    // (a + bw) / (1 - w) = ((2a - b) + (a + b) w) / 3
    const long long na = (2 * a - b) / 3;
    const long long nb = (a + b) / 3;
    a = na;
    b = nb;
    code += static_cast<std::uint32_t>(digit) * place;
    place *= 3;
  }
  return code;
}

std::uint32_t ResidueRing::encode(const EisensteinInt& x) const {
  Integer a, b;
  const Integer m = static_cast<long>(modulus_);
  mpz_fdiv_r(a.get_mpz_t(), x.re().get_mpz_t(), m.get_mpz_t());
  mpz_fdiv_r(b.get_mpz_t(), x.im().get_mpz_t(), m.get_mpz_t());
  return encode_small(a.get_si(), b.get_si());
}

EisensteinInt ResidueRing::representative(std::uint32_t code) const {
  const auto& [a, b] = reps_.at(code);
  return EisensteinInt(Integer(static_cast<long>(a)), Integer(static_cast<long>(b)));
}

std::uint32_t ResidueRing::add(std::uint32_t x, std::uint32_t y) const {
  if (!add_table_.empty()) return add_table_[x * size_ + y];
  const auto [a, b] = reps_[x];
  const auto [c, d] = reps_[y];
  return encode_small(a + c, b + d);
}

std::uint32_t ResidueRing::mul(std::uint32_t x, std::uint32_t y) const {
  if (!mul_table_.empty()) return mul_table_[x * size_ + y];
  const auto [a, b] = reps_[x];
  const auto [c, d] = reps_[y];
  return encode_small(a * c - b * d, a * d + b * c - b * d);
}

ResidueMatrix reduce_mod(const UnitaryMatrix& t, const ResidueRing& ring) {
  ResidueMatrix out{};
  for (std::size_t k = 0; k < 9; ++k) out[k] = static_cast<std::uint16_t>(ring.encode(t.entries()[k]));
  return out;
}

ResidueMatrix residue_product(const ResidueMatrix& x, const ResidueMatrix& y, const ResidueRing& ring) {
  ResidueMatrix out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      std::uint32_t s = 0;
      for (int k = 0; k < 3; ++k) s = ring.add(s, ring.mul(x[3 * r + k], y[3 * k + c]));
      out[3 * r + c] = static_cast<std::uint16_t>(s);
    }
  return out;
}

ResidueMatrix residue_identity() { return ResidueMatrix{1, 0, 0, 0, 1, 0, 0, 0, 1}; }

// ---------------------------------------------------------------------------
// Finite group analysis

namespace {

struct ResidueHash {
  std::size_t operator()(const ResidueMatrix& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : m) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using ElementSet = std::unordered_set<ResidueMatrix, ResidueHash>;

ElementSet closure(const std::vector<ResidueMatrix>& gens, const ResidueRing& ring, std::size_t budget) {
  ElementSet seen{residue_identity()};
  std::vector<ResidueMatrix> frontier{residue_identity()};
  while (!frontier.empty()) {
    std::vector<ResidueMatrix> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        ResidueMatrix y = residue_product(x, g, ring);
        if (seen.insert(y).second) {
          if (seen.size() > budget)
            fail(ErrorCode::Budget, "finite closure exceeded the element budget of " + std::to_string(budget));
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

ResidueMatrix power(ResidueMatrix x, Integer e, const ResidueRing& ring) {
  ResidueMatrix r = residue_identity();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = residue_product(r, x, ring);
    x = residue_product(x, x, ring);
    e /= 2;
  }
  return r;
}

std::vector<std::pair<long, unsigned>> factorize(std::size_t n) {
  std::vector<std::pair<long, unsigned>> out;
  for (long p = 2; static_cast<std::size_t>(p * p) <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(static_cast<long>(n), 1);
  return out;
}

}  // namespace

FiniteQuotient finite_group_analysis(const std::vector<UnitaryMatrix>& generators, unsigned level, std::size_t budget) {
  const ResidueRing ring(level);
  std::vector<ResidueMatrix> gens, gens_inv;
  for (const auto& g : generators) {
    gens.push_back(reduce_mod(g, ring));
    gens_inv.push_back(reduce_mod(inverse(g), ring));
  }

  FiniteQuotient out;
  out.level = level;
  const ElementSet group = closure(gens, ring, budget);
  out.image_order = group.size();

  // Derived subgroup: normal closure of the commutators of the generators.
  std::vector<ResidueMatrix> normal_gens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      ResidueMatrix c = residue_product(residue_product(gens[i], gens[j], ring),
                                        residue_product(gens_inv[i], gens_inv[j], ring), ring);
      if (c != residue_identity()) normal_gens.push_back(c);
    }
  ElementSet derived = closure(normal_gens, ring, budget);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<ResidueMatrix> current = normal_gens;
    for (const auto& n : current)
      for (std::size_t g = 0; g < gens.size(); ++g) {
        ResidueMatrix c = residue_product(residue_product(gens[g], n, ring), gens_inv[g], ring);
        if (!derived.count(c)) {
          normal_gens.push_back(c);
          derived = closure(normal_gens, ring, budget);
          grew = true;
        }
      }
  }
  out.derived_order = derived.size();

  // Abelianization A = G / G': for each prime p, |A[p^j]| counts cosets of
  // elements whose p^j-th power lies in G'.
  const std::size_t ab_order = out.image_order / out.derived_order;
  std::vector<Integer> cyclic;
  for (auto [p, e] : factorize(ab_order)) {
    std::vector<std::size_t> torsion{1};  // |A[p^0]|
    Integer pj = 1;
    while (torsion.size() <= e) {
      pj *= p;
      std::size_t count = 0;
      for (const auto& g : group)
        if (derived.count(power(g, pj, ring))) ++count;
      torsion.push_back(count / out.derived_order);
      if (torsion.back() == torsion[torsion.size() - 2]) break;
    }
    // Number of cyclic factors of order >= p^j is log_p(|A[p^j]| / |A[p^(j-1)]|).
    std::vector<unsigned> at_least;
    for (std::size_t j = 1; j < torsion.size(); ++j) {
      std::size_t ratio = torsion[j] / torsion[j - 1];
      unsigned c = 0;
      while (ratio > 1) {
        ratio /= static_cast<std::size_t>(p);
        ++c;
      }
      at_least.push_back(c);
    }
    for (std::size_t j = 0; j < at_least.size(); ++j) {
      const unsigned exactly = at_least[j] - (j + 1 < at_least.size() ? at_least[j + 1] : 0);
      Integer order;
      mpz_ui_pow_ui(order.get_mpz_t(), static_cast<unsigned long>(p), j + 1);
      for (unsigned c = 0; c < exactly; ++c) cyclic.push_back(order);
    }
  }
  out.abelianization = algebra::FiniteAbelianGroup(cyclic);
  return out;
}

// ---------------------------------------------------------------------------
// Ball

std::complex<double> to_complex(const EisensteinInt& x) {
  const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
  return x.re().get_d() + x.im().get_d() * w;
}

BallImage ball_act(const UnitaryMatrix& t, const BallPoint& z) {
  if (!(z.form() < 0.0)) fail(ErrorCode::Domain, "point is not inside the unit ball");
  const std::array<std::complex<double>, 3> v{z.z1, z.z2, 1.0};
  std::array<std::complex<double>, 3> w{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) w[r] += to_complex(t(r, c)) * v[c];
  if (std::abs(w[2]) == 0.0) fail(ErrorCode::Internal, "third coordinate vanished under a form-preserving map");
  const double before = z.form();
  const double after = std::norm(w[0]) + std::norm(w[1]) - std::norm(w[2]);
  const double scale = std::max({1.0, std::abs(before), std::norm(w[2])});
  return {{w[0] / w[2], w[1] / w[2]}, std::abs(after - before) / scale};
}

}  // namespace fermatball::lattice
