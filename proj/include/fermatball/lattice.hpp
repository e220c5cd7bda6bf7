#pragma once

// The congruence group
//
//   Gamma = { T in GL_3(Z[w]) : T = I mod lambda,  T^* H T = H },  H = diag(1, 1, -1),
//
// with lambda = 1 - w. Provides exact membership, complex reflections,
// bounded element enumeration, commutators with their lambda-adic congruence
// level, finite quotients modulo lambda^k, and the action on the unit 2-ball.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fermatball/algebra.hpp"

namespace fermatball::lattice {

using algebra::EisensteinInt;
using algebra::Integer;

using Vector3 = std::array<EisensteinInt, 3>;

// Diagonal entries of the Hermitian form.
inline constexpr std::array<int, 3> kForm{1, 1, -1};

// 3x3 matrix over Z[w]. Whether it preserves the form is a separate check.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  explicit UnitaryMatrix(std::array<EisensteinInt, 9> entries) : e_(std::move(entries)) {}

  static UnitaryMatrix identity();
  // diag(w^a, w^b, w^c)
  static UnitaryMatrix diagonal(long a, long b, long c);
  // Swap of two coordinates.
  static UnitaryMatrix permutation(int i, int j);

  EisensteinInt& operator()(int r, int c) { return e_[3 * r + c]; }
  const EisensteinInt& operator()(int r, int c) const { return e_[3 * r + c]; }
  const std::array<EisensteinInt, 9>& entries() const { return e_; }

  UnitaryMatrix conj_transpose() const;
  EisensteinInt determinant() const;
  // Largest entry norm.
  Integer height() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& x, const UnitaryMatrix& y);
  friend Vector3 operator*(const UnitaryMatrix& x, const Vector3& v);
  friend bool operator==(const UnitaryMatrix& x, const UnitaryMatrix& y) { return x.e_ == y.e_; }
  // Canonical order: height, then entries row-major.
  friend bool operator<(const UnitaryMatrix& x, const UnitaryMatrix& y);

  // Nine "a+bw" tokens, row-major, separated by single spaces.
  std::string str() const;
  // Accepts nine tokens separated by spaces, commas or semicolons; brackets ignored.
  static UnitaryMatrix parse(const std::string& text);

 private:
  std::array<EisensteinInt, 9> e_{};
};

// <x, y>_H = sum_k H_k x_k conj(y_k)
EisensteinInt hermitian_product(const Vector3& x, const Vector3& y);

bool is_unitary(const UnitaryMatrix& t);
bool in_gamma(const UnitaryMatrix& t);

// Exact inverse via the adjugate; throws unless the determinant is a unit.
UnitaryMatrix inverse(const UnitaryMatrix& t);

// Minimum lambda-valuation of the entries of T - I; nullopt for T = I.
std::optional<unsigned> congruence_level(const UnitaryMatrix& t);

// R_v : x -> x - lambda <x, v> v, for <v, v> = 1. Order 3, determinant w.
UnitaryMatrix reflection(const Vector3& v);

// Vectors with <v,v> = 1 and every entry of norm <= max_norm, one per
// unit-scalar class (the reflection only depends on that class).
std::vector<Vector3> reflection_vectors(long max_norm);
std::vector<UnitaryMatrix> height1_reflections();
std::vector<UnitaryMatrix> diagonal_units();

struct Commutator {
  UnitaryMatrix value;
  std::optional<unsigned> level;  // nullopt = infinity (trivial commutator)
};

// T U T^-1 U^-1; both arguments must lie in Gamma.
Commutator commutator(const UnitaryMatrix& t, const UnitaryMatrix& u);

// Every T in Gamma with max entry norm <= height, in canonical order. The
// search is split over `workers` threads; output does not depend on it.
std::vector<UnitaryMatrix> enumerate_gamma(long height, unsigned workers = 1);

// ---------------------------------------------------------------------------
// Finite quotients Z[w] / lambda^k

class ResidueRing {
 public:
  explicit ResidueRing(unsigned k);  // 1 <= k <= 8

  unsigned level() const { return k_; }
  std::uint32_t size() const { return size_; }

  // Residues are coded by their lambda-adic digits c_0 + c_1 lambda + ...,
  // c_i in {0,1,2}, read as a base-3 number.
  std::uint32_t encode(const EisensteinInt& x) const;
  EisensteinInt representative(std::uint32_t code) const;
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t one() const { return 1; }

 private:
  std::uint32_t encode_small(long long a, long long b) const;

  unsigned k_;
  std::uint32_t size_;
  long long modulus_;  // 3^ceil(k/2); lambda^k divides it
  std::vector<std::pair<long long, long long>> reps_;
  std::vector<std::uint16_t> add_table_, mul_table_;  // filled when size <= 729
};

using ResidueMatrix = std::array<std::uint16_t, 9>;

ResidueMatrix reduce_mod(const UnitaryMatrix& t, const ResidueRing& ring);
ResidueMatrix residue_product(const ResidueMatrix& x, const ResidueMatrix& y, const ResidueRing& ring);
ResidueMatrix residue_identity();

struct FiniteQuotient {
  unsigned level = 0;
  std::size_t image_order = 0;
  std::size_t derived_order = 0;
  algebra::FiniteAbelianGroup abelianization;
};

// Image of the group generated by `generators` in GL_3(Z[w]/lambda^k), its
// derived subgroup and abelianization. Throws Error(Budget) when a closure
// grows beyond `budget` elements.
FiniteQuotient finite_group_analysis(const std::vector<UnitaryMatrix>& generators, unsigned level,
                                     std::size_t budget = 10'000'000);

// ---------------------------------------------------------------------------
// Ball action

struct BallPoint {
  std::complex<double> z1, z2;
  double form() const { return std::norm(z1) + std::norm(z2) - 1.0; }  // < 0 inside
};

struct BallImage {
  BallPoint point;
  double form_drift;  // |<Tz,Tz> - <z,z>| / max(1, |<z,z>|) before rescaling
};

BallImage ball_act(const UnitaryMatrix& t, const BallPoint& z);

std::complex<double> to_complex(const EisensteinInt& x);

}  // namespace fermatball::lattice
