#include "fermatball/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "fermatball/error.hpp"

namespace fermatball::algebra {

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_str();
}

// ---------------------------------------------------------------------------
// EisensteinInt

EisensteinInt EisensteinInt::omega_pow(long k) {
  switch (((k % 3) + 3) % 3) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    default:
      return {-1, -1};
  }
}

EisensteinInt& EisensteinInt::operator+=(const EisensteinInt& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

EisensteinInt& EisensteinInt::operator-=(const EisensteinInt& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

// (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd) w, using w^2 = -1 - w.
EisensteinInt& EisensteinInt::operator*=(const EisensteinInt& o) {
  Integer bd = b_ * o.b_;
  Integer re = a_ * o.a_ - bd;
  Integer im = a_ * o.b_ + b_ * o.a_ - bd;
  a_ = std::move(re);
  b_ = std::move(im);
  return *this;
}

std::optional<EisensteinInt> EisensteinInt::divide_exact(const EisensteinInt& y) const {
  if (y.is_zero()) return std::nullopt;
  const Integer n = y.norm();
  EisensteinInt num = *this * y.conj();
  if (!mpz_divisible_p(num.a_.get_mpz_t(), n.get_mpz_t()) ||
      !mpz_divisible_p(num.b_.get_mpz_t(), n.get_mpz_t())) {
    return std::nullopt;
  }
  Integer qa, qb;
  mpz_divexact(qa.get_mpz_t(), num.a_.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(qb.get_mpz_t(), num.b_.get_mpz_t(), n.get_mpz_t());
  return EisensteinInt(qa, qb);
}

// w = 1 mod lambda, so a + bw = a + b mod lambda, and Z[w]/lambda = F_3.
bool EisensteinInt::divisible_by_lambda() const {
  Integer s = a_ + b_;
  return mpz_divisible_ui_p(s.get_mpz_t(), 3) != 0;
}

std::string EisensteinInt::str() const {
  std::string out = a_.get_str();
  if (b_ < 0) {
    out += "-";
    out += Integer(-b_).get_str();
  } else {
    out += "+";
    out += b_.get_str();
  }
  out += "w";
  return out;
}

EisensteinInt EisensteinInt::parse(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorCode::Parse, "empty Eisenstein integer token");

  Integer a = 0, b = 0;
  std::size_t pos = 0;
  bool seen_any = false;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (seen_any) {
      fail(ErrorCode::Parse, "malformed Eisenstein integer token '" + token + "'");
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string digits = s.substr(start, pos - start);
    bool is_w = pos < s.size() && (s[pos] == 'w' || s[pos] == 'W');
    if (is_w) ++pos;
    if (digits.empty() && !is_w)
      fail(ErrorCode::Parse, "malformed Eisenstein integer token '" + token + "'");
    Integer v = digits.empty() ? Integer(1) : Integer(digits);
    if (sign < 0) v = -v;
    (is_w ? b : a) += v;
    seen_any = true;
  }
  return {a, b};
}

std::optional<unsigned> lambda_valuation(const EisensteinInt& x) {
  if (x.is_zero()) return std::nullopt;
  const EisensteinInt lam = EisensteinInt::lambda();
  unsigned k = 0;
  EisensteinInt cur = x;
  while (auto q = cur.divide_exact(lam)) {
    cur = std::move(*q);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::InvalidArgument, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols_ != y.rows_) fail(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  IntMatrix out(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i)
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const Integer& xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Keeps U, U^-1, V, V^-1 in sync with elementary operations on the work matrix.
struct SmithState {
  IntMatrix A, U, U_inv, V, V_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    A.swap_rows(i, j);
    U.swap_rows(i, j);
    U_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    A.swap_cols(i, j);
    V.swap_cols(i, j);
    V_inv.swap_rows(i, j);
  }
  // row_i += k row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    A.add_row_multiple(i, j, k);
    U.add_row_multiple(i, j, k);
    U_inv.add_col_multiple(j, i, -k);
  }
  // col_i += k col_j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    A.add_col_multiple(i, j, k);
    V.add_col_multiple(i, j, k);
    V_inv.add_row_multiple(j, i, -k);
  }
  void negate_row(std::size_t i) {
    A.negate_row(i);
    U.negate_row(i);
    for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv(r, i) = -U_inv(r, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithState s{m, IntMatrix::identity(rows), IntMatrix::identity(rows), IntMatrix::identity(cols),
               IntMatrix::identity(cols)};
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero |entry| in the active block, first in row-major order.
      std::size_t pr = rows, pc = cols;
      Integer best;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c) {
          const Integer& v = s.A(r, c);
          if (v == 0) continue;
          if (pr == rows || abs(v) < best) {
            best = abs(v);
            pr = r;
            pc = c;
          }
        }
      if (pr == rows) goto done;  // active block is zero
      s.swap_rows(t, pr);
      s.swap_cols(t, pc);

      bool clean = true;
      const Integer pivot = s.A(t, t);
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (s.A(r, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s.A(r, t).get_mpz_t(), pivot.get_mpz_t());
        s.add_row(r, t, -q);
        if (s.A(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (s.A(t, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s.A(t, c).get_mpz_t(), pivot.get_mpz_t());
        s.add_col(c, t, -q);
        if (s.A(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column are clear; enforce divisibility of the remaining block.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (!mpz_divisible_p(s.A(r, c).get_mpz_t(), pivot.get_mpz_t())) {
            s.add_row(t, r, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s.A(t, t) < 0) s.negate_row(t);
  }
done:
  return SmithForm{std::move(s.U), std::move(s.A), std::move(s.V), std::move(s.U_inv),
                   std::move(s.V_inv)};
}

bool is_smith_form(const IntMatrix& d) {
  if (!d.is_diagonal()) return false;
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < n) {
      const Integer& a = d(i, i);
      const Integer& b = d(i + 1, i + 1);
      if (a == 0) {
        if (b != 0) return false;
      } else if (!mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Prime fields

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

long mod_inverse(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return t < 0 ? t + p : t;
}

struct Rref {
  std::vector<std::vector<long>> rows;
  std::vector<std::size_t> pivots;
};

Rref rref_mod_p(const IntMatrix& m, int p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not prime");
  const Integer P = p;
  std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Integer v;
      mpz_fdiv_r(v.get_mpz_t(), m(r, c).get_mpz_t(), P.get_mpz_t());
      a[r][c] = v.get_si();
    }
  Rref out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    const long inv = mod_inverse(a[row][c], p);
    for (auto& v : a[row]) v = (v * inv) % p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const long f = a[r][c];
      for (std::size_t k = 0; k < m.cols(); ++k) a[r][k] = ((a[r][k] - f * a[row][k]) % p + p) % p;
    }
    out.pivots.push_back(c);
    ++row;
  }
  a.resize(row);
  out.rows = std::move(a);
  return out;
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& m, int p) { return rref_mod_p(m, p).pivots.size(); }

std::vector<std::vector<int>> kernel_mod_p(const IntMatrix& m, int p) {
  const Rref r = rref_mod_p(m, p);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<int>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<int> v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      v[r.pivots[i]] = static_cast<int>((p - r.rows[i][f]) % p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(const std::vector<Integer>& cyclic_orders) {
  if (cyclic_orders.empty()) return;
  IntMatrix d(cyclic_orders.size(), cyclic_orders.size());
  for (std::size_t i = 0; i < cyclic_orders.size(); ++i) {
    if (cyclic_orders[i] <= 0) fail(ErrorCode::InvalidArgument, "cyclic order must be positive");
    d(i, i) = cyclic_orders[i];
  }
  for (const auto& f : smith_normal_form(d).diagonal())
    if (f > 1) factors_.push_back(f);
}

Integer FiniteAbelianGroup::order() const {
  Integer o = 1;
  for (const auto& f : factors_) o *= f;
  return o;
}

Integer FiniteAbelianGroup::exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

std::optional<long> FiniteAbelianGroup::elementary_prime() const {
  if (factors_.empty()) return std::nullopt;
  const Integer& p = factors_.front();
  if (p != factors_.back() || !p.fits_slong_p() || !is_prime(p.get_si())) return std::nullopt;
  return p.get_si();
}

std::string FiniteAbelianGroup::str() const {
  if (factors_.empty()) return "1";
  if (factors_.front() == factors_.back()) {
    std::string s = "Z/" + factors_.front().get_str();
    if (factors_.size() == 1) return s;
    return "(" + s + ")^" + std::to_string(factors_.size());
  }
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x Z/" : "Z/") + factors_[i].get_str();
  return s;
}

}  // namespace fermatball::algebra
