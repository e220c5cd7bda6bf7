#pragma once

// Exact arithmetic: Eisenstein integers Z[w] (w^2 + w + 1 = 0), integer
// matrices with Smith normal form, kernels over prime fields, and finite
// abelian groups given by invariant factors.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fermatball::algebra {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

// a + b*w
class EisensteinInt {
 public:
  EisensteinInt() = default;
  EisensteinInt(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  EisensteinInt(Integer a, Integer b = 0) : a_(std::move(a)), b_(std::move(b)) {}

  static EisensteinInt omega() { return {0, 1}; }
  // lambda = 1 - w, the prime above 3.
  static EisensteinInt lambda() { return {1, -1}; }
  // w^k for any integer k.
  static EisensteinInt omega_pow(long k);

  const Integer& re() const { return a_; }
  const Integer& im() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_unit() const { return norm() == 1; }

  Integer norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
  // conj(a + bw) = (a - b) - bw
  EisensteinInt conj() const { return {a_ - b_, -b_}; }

  EisensteinInt operator-() const { return {-a_, -b_}; }
  EisensteinInt& operator+=(const EisensteinInt& o);
  EisensteinInt& operator-=(const EisensteinInt& o);
  EisensteinInt& operator*=(const EisensteinInt& o);

  friend EisensteinInt operator+(EisensteinInt x, const EisensteinInt& y) { return x += y; }
  friend EisensteinInt operator-(EisensteinInt x, const EisensteinInt& y) { return x -= y; }
  friend EisensteinInt operator*(EisensteinInt x, const EisensteinInt& y) { return x *= y; }
  friend bool operator==(const EisensteinInt& x, const EisensteinInt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  // Lexicographic on (a, b); used only for canonical orderings.
  friend bool operator<(const EisensteinInt& x, const EisensteinInt& y) {
    return x.a_ < y.a_ || (x.a_ == y.a_ && x.b_ < y.b_);
  }

  // Exact quotient x / y if y divides x in Z[w].
  std::optional<EisensteinInt> divide_exact(const EisensteinInt& y) const;
  bool divisible_by_lambda() const;

  // Canonical "a+bw" token, e.g. "2+0w", "-1-1w".
  std::string str() const;
  static EisensteinInt parse(const std::string& token);

 private:
  Integer a_{0};
  Integer b_{0};
};

// Largest k with lambda^k | x, computed by repeated exact division.
// std::nullopt stands for infinity (x == 0).
std::optional<unsigned> lambda_valuation(const EisensteinInt& x);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += k * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& k);
  void add_col_multiple(std::size_t i, std::size_t j, const Integer& k);
  void negate_row(std::size_t i);

  bool is_diagonal() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Determinant via fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U;      // rows x rows, unimodular
  IntMatrix D;      // rows x cols, diagonal with d1 | d2 | ...
  IntMatrix V;      // cols x cols, unimodular
  IntMatrix U_inv;
  IntMatrix V_inv;

  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

// U * M * V = D. Pivot: smallest nonzero |entry| in the active block, ties
// broken by row-major position; the diagonal is made nonnegative.
SmithForm smith_normal_form(const IntMatrix& m);

bool is_smith_form(const IntMatrix& d);

// Echelonized (RREF) basis of {x in F_p^cols : M x = 0}, one vector per free
// column, in increasing order of free column.
std::vector<std::vector<int>> kernel_mod_p(const IntMatrix& m, int p);
std::size_t rank_mod_p(const IntMatrix& m, int p);

bool is_prime(long n);

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  // Normalizes any list of cyclic orders into invariant factors (drops 1s).
  explicit FiniteAbelianGroup(const std::vector<Integer>& cyclic_orders);

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  Integer order() const;
  Integer exponent() const;
  bool is_trivial() const { return factors_.empty(); }
  // Elementary abelian (Z/p)^r, r >= 1.
  std::optional<long> elementary_prime() const;

  // "(Z/3)^5", "Z/2 x Z/4", "1" for trivial.
  std::string str() const;

  friend bool operator==(const FiniteAbelianGroup& x, const FiniteAbelianGroup& y) {
    return x.factors_ == y.factors_;
  }

  // Optional coordinate model: generators as residue vectors in some ambient
  // coordinates, with their orders.
  std::vector<std::vector<Integer>> generators;
  std::vector<Integer> moduli;  // modulus of each coordinate

 private:
  std::vector<Integer> factors_;
};

}  // namespace fermatball::algebra
