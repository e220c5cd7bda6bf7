#include "fermatball/deligne_mostow.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "fermatball/error.hpp"

namespace fermatball::dm {

// ---------------------------------------------------------------------------
// Tuples

std::string MuTuple::str() const {
  std::string s;
  for (std::size_t k = 0; k < 5; ++k) s += (k ? "," : "") + algebra::to_string(mu[k]);
  return s;
}

std::array<double, 5> MuTuple::as_double() const {
  std::array<double, 5> out{};
  for (std::size_t k = 0; k < 5; ++k) out[k] = mu[k].get_d();
  return out;
}

MuTuple validate_mu(const std::array<Rational, 5>& mu) {
  MuTuple t;
  Rational sum = 0;
  t.d = 1;
  for (std::size_t k = 0; k < 5; ++k) {
    Rational q = mu[k];
    q.canonicalize();
    if (q <= 0 || q >= 1)
      fail(ErrorCode::Domain, "mu_" + std::to_string(k + 1) + " = " + algebra::to_string(q) + " is not in (0,1)");
    t.mu[k] = q;
    sum += q;
    mpz_lcm(t.d.get_mpz_t(), t.d.get_mpz_t(), q.get_den_mpz_t());
  }
  if (sum != 2) fail(ErrorCode::Domain, "sum of mu is " + algebra::to_string(sum) + ", not 2");
  for (std::size_t k = 0; k < 5; ++k) t.n[k] = t.mu[k].get_num() * (t.d / t.mu[k].get_den());
  return t;
}

MuTuple parse_mu(const std::string& text) {
  std::array<Rational, 5> mu;
  std::istringstream in(text);
  std::string tok;
  std::size_t count = 0;
  while (std::getline(in, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
    if (count == 5) fail(ErrorCode::Parse, "mu needs exactly five entries");
    const auto slash = tok.find('/');
    auto valid_int = [](const std::string& s) {
      if (s.empty()) return false;
      std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (k == s.size()) return false;
      return std::all_of(s.begin() + static_cast<long>(k), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    const std::string num = tok.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
      fail(ErrorCode::Parse, "'" + tok + "' is not a rational of the form p/q");
    Integer q(den);
    if (q == 0) fail(ErrorCode::Parse, "zero denominator in '" + tok + "'");
    mu[count] = Rational(Integer(num[0] == '+' ? num.substr(1) : num), q);
    mu[count].canonicalize();
    ++count;
  }
  if (count != 5) fail(ErrorCode::Parse, "mu needs exactly five entries");
  return validate_mu(mu);
}

IntResult int_condition(const MuTuple& t) {
  IntResult r;
  r.holds = true;
  r.sigma_int = true;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      PairCertificate c;
      c.i = i;
      c.j = j;
      c.sum = t.mu[i] + t.mu[j];
      c.exempt = c.sum >= 1;
      if (!c.exempt) {
        c.value = Rational(1) / (Rational(1) - c.sum);
        c.value.canonicalize();
        c.integral = c.value.get_den() == 1;
        const bool half = c.value.get_den() == 1 || c.value.get_den() == 2;
        if (!c.integral) r.holds = false;
        if (!(c.integral || (t.mu[i] == t.mu[j] && half))) r.sigma_int = false;
      }
      r.pairs.push_back(std::move(c));
    }
  return r;
}

std::vector<MuTuple> enumerate_int(int max_denominator) {
  if (max_denominator < 1 || max_denominator > 24)
    fail(ErrorCode::InvalidArgument, "max denominator must be between 1 and 24");
  std::set<std::array<Rational, 5>> seen;
  std::vector<MuTuple> out;
  for (int d = 2; d <= max_denominator; ++d) {
    std::array<int, 5> n{};
    // Non-decreasing n_1 <= ... <= n_5 in [1, d-1] with sum 2d.
    auto rec = [&](auto&& self, int k, int lo, int remaining) -> void {
      if (k == 4) {
        if (remaining >= lo && remaining <= d - 1) {
          n[4] = remaining;
          std::array<Rational, 5> mu;
          for (int m = 0; m < 5; ++m) {
            mu[m] = Rational(n[m], d);
            mu[m].canonicalize();
          }
          if (seen.insert(mu).second) {
            MuTuple t = validate_mu(mu);
            if (int_condition(t).holds) out.push_back(std::move(t));
          }
        }
        return;
      }
      for (int v = lo; v <= d - 1 && v * (5 - k) <= remaining; ++v) {
        n[k] = v;
        self(self, k + 1, v, remaining - v);
      }
    };
    rec(rec, 0, 1, 2 * d);
  }
  std::sort(out.begin(), out.end(), [](const MuTuple& a, const MuTuple& b) {
    if (a.d != b.d) return a.d < b.d;
    return a.mu < b.mu;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Configurations

PointConfig make_config(const std::array<Complex, 5>& x) {
  for (int a = 0; a < 5; ++a) {
    if (!std::isfinite(x[a].real()) || !std::isfinite(x[a].imag()))
      fail(ErrorCode::Domain, "configuration point is not finite");
    for (int b = a + 1; b < 5; ++b)
      if (std::abs(x[a] - x[b]) <= 1e-6) fail(ErrorCode::Domain, "configuration points must be distinct");
  }
  return PointConfig{x};
}

Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorCode::Parse, "empty complex literal");
  auto parse_real = [&](const std::string& part) {
    double v = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(ErrorCode::Parse, "malformed complex literal '" + raw + "'");
    return v;
  };
  const bool imaginary = s.back() == 'I' || s.back() == 'i';
  if (!imaginary) return {parse_real(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  std::string re = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+" || im == "-") im += "1";
  return {parse_real(re), parse_real(im)};
}

PointConfig parse_config(const std::string& text) {
  std::array<Complex, 5> x;
  std::istringstream in(text);
  std::string tok;
  std::size_t count = 0;
  while (std::getline(in, tok, ',')) {
    if (count == 5) fail(ErrorCode::Parse, "a configuration needs exactly five points");
    x[count++] = parse_complex(tok);
  }
  if (count != 5) fail(ErrorCode::Parse, "a configuration needs exactly five points");
  return make_config(x);
}

std::string format_complex(Complex z, int precision) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(precision);
  os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "I";
  return os.str();
}

// ---------------------------------------------------------------------------
// Branches

SegmentBranch principal_branch(const PointConfig& x, int i, int j) {
  SegmentBranch b;
  const Complex m = 0.5 * (x.x[i] + x.x[j]);
  for (int k = 0; k < 5; ++k) {
    if (k == i)
      b.arg[k] = std::arg(x.x[j] - x.x[i]);
    else if (k == j)
      b.arg[k] = std::arg(x.x[i] - x.x[j]);
    else
      b.arg[k] = std::arg(m - x.x[k]);
  }
  return b;
}

SegmentBranch continue_branch(const SegmentBranch& base, const PointConfig& from, const PointConfig& to, int i,
                              int j) {
  const SegmentBranch p0 = principal_branch(from, i, j);
  const Complex m0 = 0.5 * (from.x[i] + from.x[j]);
  const Complex m1 = 0.5 * (to.x[i] + to.x[j]);
  SegmentBranch out;
  for (int k = 0; k < 5; ++k) {
    Complex v0, v1;
    if (k == i) {
      v0 = from.x[j] - from.x[i];
      v1 = to.x[j] - to.x[i];
    } else if (k == j) {
      v0 = from.x[i] - from.x[j];
      v1 = to.x[i] - to.x[j];
    } else {
      v0 = m0 - from.x[k];
      v1 = m1 - to.x[k];
    }
    // Valid while the deformation keeps v away from zero and turns it by less than pi.
    out.arg[k] = base.arg[k] + std::arg(v1 / v0);
    (void)p0;
  }
  return out;
}

double segment_clearance(const PointConfig& x, int i, int j) {
  const Complex a = x.x[i], b = x.x[j];
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5; ++k) {
    if (k == i || k == j) continue;
    const Complex ab = b - a;
    double t = std::real((x.x[k] - a) * std::conj(ab)) / std::norm(ab);
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(x.x[k] - (a + t * ab)));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi (Golub-Welsch)

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1 || alpha <= -1.0 || beta <= -1.0) fail(ErrorCode::InvalidArgument, "invalid Gauss-Jacobi parameters");
  static std::mutex cache_mutex;
  static std::map<std::tuple<int, double, double>, QuadratureRule> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find({n, alpha, beta}); it != cache.end()) return it->second;
  }

  const double ab = alpha + beta;
  Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      diag[k] = (beta - alpha) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off[k - 1] = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Numerical, "Gauss-Jacobi eigenproblem did not converge");

  const double mass = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                               std::lgamma(ab + 2.0));
  QuadratureRule rule;
  for (int k = 0; k < n; ++k) {
    rule.nodes.push_back(solver.eigenvalues()[k]);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights.push_back(mass * v0 * v0);
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(std::make_tuple(n, alpha, beta), rule);
  return rule;
}

// ---------------------------------------------------------------------------
// Periods

namespace {

constexpr int kPanelNodes = 24;
constexpr int kMaxDepth = 48;

struct SegmentIntegrand {
  std::array<double, 5> mu{};
  int i = 0, j = 0;
  Complex a, delta;                 // z(t) = a + delta t
  std::array<Complex, 5> x{};
  std::array<Complex, 5> log_mid{}; // log(m - x_k) with the chosen determination
  mutable int evaluations = 0;

  // prod over k != i, j of (z - x_k)^(-mu_k)
  Complex others(double t) const {
    ++evaluations;
    const Complex z = a + delta * t;
    const Complex m = a + 0.5 * delta;
    Complex logsum = 0.0;
    for (int k = 0; k < 5; ++k) {
      if (k == i || k == j) continue;
      logsum += mu[k] * (log_mid[k] + std::log((z - x[k]) / (m - x[k])));
    }
    return std::exp(-logsum);
  }
  double left_power(double t) const { return std::pow(t, -mu[i]); }
  double right_power(double t) const { return std::pow(1.0 - t, -mu[j]); }
};

struct Accumulator {
  Complex value = 0.0;
  double error = 0.0;
};

Complex legendre_panel(const SegmentIntegrand& f, double lo, double hi, int n) {
  const auto rule = gauss_jacobi(n, 0.0, 0.0);
  const double half = 0.5 * (hi - lo);
  Complex s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = lo + half * (rule.nodes[k] + 1.0);
    s += rule.weights[k] * f.left_power(t) * f.right_power(t) * f.others(t);
  }
  return half * s;
}

void regular(const SegmentIntegrand& f, double lo, double hi, double tol, int depth, Accumulator& acc) {
  const Complex coarse = legendre_panel(f, lo, hi, kPanelNodes);
  const Complex fine = legendre_panel(f, lo, hi, 2 * kPanelNodes);
  const double err = std::abs(fine - coarse);
  if (err <= tol * std::max(1.0, std::abs(fine)) * (hi - lo) || depth >= kMaxDepth) {
    if (depth >= kMaxDepth && err > 1e-6 * std::max(1.0, std::abs(fine)))
      fail(ErrorCode::Numerical, "period quadrature did not converge");
    acc.value += fine;
    acc.error += err;
    return;
  }
  const double mid = 0.5 * (lo + hi);
  regular(f, lo, mid, tol, depth + 1, acc);
  regular(f, mid, hi, tol, depth + 1, acc);
}

// Panel [0, a] carrying t^(-mu_i) (left) or [1-a, 1] carrying (1-t)^(-mu_j) (right).
Complex singular_panel(const SegmentIntegrand& f, bool left, double a, int n) {
  const double expo = left ? f.mu[f.i] : f.mu[f.j];
  const auto rule = gauss_jacobi(n, 0.0, -expo);
  Complex s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double u = 0.5 * a * (rule.nodes[k] + 1.0);  // distance from the endpoint
    const double t = left ? u : 1.0 - u;
    const double smooth = left ? f.right_power(t) : f.left_power(t);
    s += rule.weights[k] * smooth * f.others(t);
  }
  return std::pow(0.5 * a, 1.0 - expo) * s;
}

void singular(const SegmentIntegrand& f, bool left, double a, double tol, int depth, Accumulator& acc) {
  const Complex coarse = singular_panel(f, left, a, kPanelNodes);
  const Complex fine = singular_panel(f, left, a, 2 * kPanelNodes);
  const double err = std::abs(fine - coarse);
  if (err <= tol * std::max(1.0, std::abs(fine)) || depth >= kMaxDepth) {
    if (depth >= kMaxDepth && err > 1e-6 * std::max(1.0, std::abs(fine)))
      fail(ErrorCode::Numerical, "period quadrature did not converge near an endpoint");
    acc.value += fine;
    acc.error += err;
    return;
  }
  singular(f, left, 0.5 * a, tol, depth + 1, acc);
  if (left)
    regular(f, 0.5 * a, a, tol, depth + 1, acc);
  else
    regular(f, 1.0 - a, 1.0 - 0.5 * a, tol, depth + 1, acc);
}

}  // namespace

PeriodResult period(const PointConfig& x, int i, int j, const MuTuple& mu, const std::optional<SegmentBranch>& branch,
                    double rel_tol) {
  if (i < 0 || i > 4 || j < 0 || j > 4 || i == j) fail(ErrorCode::InvalidArgument, "period indices must be distinct in 0..4");
  if (segment_clearance(x, i, j) < 1e-6)
    fail(ErrorCode::Domain, "segment passes too close to another branch point");
  const SegmentBranch b = branch ? *branch : principal_branch(x, i, j);

  SegmentIntegrand f;
  f.mu = mu.as_double();
  f.i = i;
  f.j = j;
  f.a = x.x[i];
  f.delta = x.x[j] - x.x[i];
  f.x = x.x;
  const Complex m = 0.5 * (x.x[i] + x.x[j]);
  for (int k = 0; k < 5; ++k)
    if (k != i && k != j) f.log_mid[k] = Complex(std::log(std::abs(m - x.x[k])), b.arg[k]);

  Accumulator acc;
  singular(f, true, 0.25, rel_tol, 0, acc);
  regular(f, 0.25, 0.75, rel_tol, 0, acc);
  singular(f, false, 0.25, rel_tol, 0, acc);

  // Endpoint factors: (z - x_i) = |delta| t e^{i arg_i}, (z - x_j) = |delta| (1 - t) e^{i arg_j}.
  const double len = std::abs(f.delta);
  const Complex log_prefactor = -f.mu[i] * Complex(std::log(len), b.arg[i]) - f.mu[j] * Complex(std::log(len), b.arg[j]);
  const Complex scale = f.delta * std::exp(log_prefactor);
  PeriodResult r;
  r.value = scale * acc.value;
  r.error_estimate = std::abs(scale) * acc.error;
  r.evaluations = f.evaluations;
  return r;
}

RankResult period_rank(const PointConfig& x, const MuTuple& mu, int samples, unsigned long seed, double threshold) {
  if (samples < 1) fail(ErrorCode::InvalidArgument, "need at least one sample");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);

  double clearance = std::numeric_limits<double>::infinity();
  for (auto [i, j] : pairs) clearance = std::min({clearance, segment_clearance(x, i, j), std::abs(x.x[i] - x.x[j])});
  if (clearance < 1e-6) fail(ErrorCode::Domain, "base configuration has a point too close to a segment");
  const double step = 0.02 * clearance;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<PointConfig> configs{x};
  while (static_cast<int>(configs.size()) < samples) {
    PointConfig y = x;
    for (auto& p : y.x) {
      Complex d(unit(rng), unit(rng));
      if (std::abs(d) > 1.0) d /= std::abs(d);
      p += step * d;
    }
    configs.push_back(y);
  }

  RankResult out;
  out.degenerate = samples < 6;
  Eigen::MatrixXcd m(10, samples);
  for (int s = 0; s < samples; ++s) {
    std::array<Complex, 10> col{};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [i, j] = pairs[p];
      if (segment_clearance(configs[s], i, j) < 0.5 * clearance)
        fail(ErrorCode::Domain, "perturbation broke branch continuity");
      const SegmentBranch base = principal_branch(x, i, j);
      const SegmentBranch b = continue_branch(base, x, configs[s], i, j);
      col[p] = period(configs[s], i, j, mu, b).value;
      m(static_cast<long>(p), s) = col[p];
    }
    out.columns.push_back(col);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  for (long k = 0; k < sv.size(); ++k) out.singular_values.push_back(sv[k]);
  const double top = sv.size() ? sv[0] : 0.0;
  for (long k = 0; k < sv.size(); ++k)
    if (sv[k] > threshold * top) ++out.rank;
  return out;
}

}  // namespace fermatball::dm
