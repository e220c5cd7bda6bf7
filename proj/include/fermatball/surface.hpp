#pragma once

// Divisor lattices and characteristic-number bookkeeping for surfaces and
// their branched covers. All quantities are exact; linear and numerical
// equivalence are identified.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fermatball/algebra.hpp"

namespace fermatball::surface {

using algebra::Integer;
using algebra::IntMatrix;
using algebra::Rational;

class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}
  static DivisorClass from_ints(std::initializer_list<long> c);
  static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Rational>(rank, 0)); }

  std::size_t rank() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_integral() const;

  DivisorClass& operator+=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass x, const DivisorClass& y) { return x += y; }
  friend DivisorClass operator-(DivisorClass x, const DivisorClass& y);
  friend DivisorClass operator*(const Rational& k, DivisorClass x);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  std::string str() const;

 private:
  std::vector<Rational> coeffs_;
};

class IntersectionLattice {
 public:
  IntersectionLattice(IntMatrix gram, DivisorClass canonical);

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const DivisorClass& canonical() const { return canonical_; }

  Rational pair(const DivisorClass& x, const DivisorClass& y) const;
  Rational self(const DivisorClass& x) const { return pair(x, x); }

 private:
  IntMatrix gram_;
  DivisorClass canonical_;
};

struct DelPezzo5 {
  IntersectionLattice lattice;                 // basis L, E1..E4
  std::vector<DivisorClass> minus_one_curves;  // E1..E4, then L-Ea-Eb
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> labels;     // pair {i,j} in 1..5 per curve
};

// Blow-up of P^2 at four general points with a labeling of the ten
// (-1)-curves by pairs {i,j} realizing the Petersen intersection pattern.
DelPezzo5 del_pezzo_lattice();

struct CurveConfig {
  std::vector<Integer> curve_euler;          // topological Euler characteristic per curve
  std::vector<std::vector<int>> points;      // curve indices through each point
};

// Euler characteristic of the union: sum chi(C_i) - sum_p (mult_p - 1).
Integer config_euler(const CurveConfig& cfg);

struct Stratum {
  Integer euler;
  Integer degree;  // number of preimages of a point of the stratum
};

Integer stratified_euler(std::span<const Stratum> strata);

// Solves total = degree * chi + sum(known) for chi.
Rational solve_stratum(const Integer& total, std::span<const Stratum> known, const Integer& degree);

// Euler characteristic of the base curve of a Galois cover C -> B of the given
// degree, branched at `branch_points` points with ramification index e:
// chi(C) = degree * (chi(B) - b) + b * degree / e.
Rational quotient_curve_euler(const Integer& cover_euler, const Integer& degree, const Integer& branch_points,
                              const Integer& ramification);

// chi of a cover from Riemann-Hurwitz, one ramification index per branch point.
Integer riemann_hurwitz_euler(const Integer& degree, const Integer& base_euler,
                              std::span<const Integer> ramification);

struct WeightedDivisor {
  DivisorClass divisor;
  Integer weight;
};

// c1^2 of a Galois cover of the given degree branched with the given weights:
// degree * (K + sum (1 - 1/e_i) D_i)^2.
Rational branched_canonical(const IntersectionLattice& base, std::span<const WeightedDivisor> branch,
                            const Integer& degree);

struct LogChern {
  Integer c1_squared;
  Integer c2;
  bool satisfies_inequality = false;  // c1^2 <= 3 c2
  bool equality = false;
};

LogChern log_chern(const Integer& k_squared, const Integer& k_dot_d, const Integer& d_squared,
                   const Integer& euler_surface, const Integer& euler_divisor);

struct ChernPair {
  Integer c1_squared;
  Integer c2;
  friend bool operator==(const ChernPair&, const ChernPair&) = default;
};

// Invariants of the degree n^5 abelian cover of the degree 5 del Pezzo surface
// branched with order n over its ten (-1)-curves.
ChernPair hirzebruch_invariants(long n);

}  // namespace fermatball::surface
