#pragma once

// Hypergeometric data attached to a 5-tuple mu of rationals in (0,1) with
// sum 2: the integrality condition on pairs, enumeration of tuples passing it,
// and the periods
//
//     w_ij = integral from x_i to x_j of prod_k (z - x_k)^(-mu_k) dz
//
// together with a numerical rank check on their span.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fermatball/algebra.hpp"

namespace fermatball::dm {

using algebra::Integer;
using algebra::Rational;
using Complex = std::complex<double>;

struct MuTuple {
  std::array<Rational, 5> mu;
  Integer d;                 // lcm of the denominators
  std::array<Integer, 5> n;  // n_i / d = mu_i

  std::string str() const;   // "1/3,1/3,1/3,1/3,2/3"
  std::array<double, 5> as_double() const;
};

MuTuple validate_mu(const std::array<Rational, 5>& mu);
// Five comma-separated "p/q" (or integer) tokens.
MuTuple parse_mu(const std::string& text);

struct PairCertificate {
  int i = 0, j = 0;            // 0-based, i < j
  Rational sum;                // mu_i + mu_j
  bool exempt = false;         // sum >= 1
  Rational value;              // (1 - mu_i - mu_j)^-1 when not exempt
  bool integral = false;
};

struct IntResult {
  bool holds = false;          // INT
  bool sigma_int = false;      // half-integers allowed for pairs with mu_i = mu_j
  std::vector<PairCertificate> pairs;
};

IntResult int_condition(const MuTuple& mu);

// Sorted tuples with common denominator <= max_denominator passing INT,
// ordered by denominator and then lexicographically.
std::vector<MuTuple> enumerate_int(int max_denominator);

struct PointConfig {
  std::array<Complex, 5> x;
};

PointConfig make_config(const std::array<Complex, 5>& x);
// Five comma-separated complex literals "re+imI".
PointConfig parse_config(const std::string& text);
Complex parse_complex(const std::string& token);
std::string format_complex(Complex z, int precision = 12);

// Arguments fixing the determination of each factor (z - x_k)^(-mu_k) along
// the segment [x_i, x_j]: for k != i, j the argument of (m - x_k) at the
// midpoint m, for k = i the argument of (x_j - x_i), for k = j that of (x_i - x_j).
struct SegmentBranch {
  std::array<double, 5> arg{};
};

SegmentBranch principal_branch(const PointConfig& x, int i, int j);
// Continues `base` (defined for `from`) along the straight-line deformation to `to`.
SegmentBranch continue_branch(const SegmentBranch& base, const PointConfig& from, const PointConfig& to, int i, int j);

// Distance from the other three points to the segment [x_i, x_j].
double segment_clearance(const PointConfig& x, int i, int j);

struct PeriodResult {
  Complex value;
  double error_estimate = 0.0;
  int evaluations = 0;
};

PeriodResult period(const PointConfig& x, int i, int j, const MuTuple& mu,
                    const std::optional<SegmentBranch>& branch = std::nullopt, double rel_tol = 1e-12);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1 - s)^alpha (1 + s)^beta.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

struct RankResult {
  int rank = 0;
  bool degenerate = false;     // fewer than 6 samples
  std::vector<double> singular_values;
  std::vector<std::array<Complex, 10>> columns;  // periods per sample, pairs in (i<j) order
};

// Periods over `samples` perturbations of x (the first is x itself) and the
// numerical rank of the resulting 10 x samples matrix.
RankResult period_rank(const PointConfig& x, const MuTuple& mu, int samples, unsigned long seed = 1,
                       double threshold = 1e-6);

}  // namespace fermatball::dm
