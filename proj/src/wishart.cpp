#include "fdrelay/wishart.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "fdrelay/errors.hpp"

namespace fdrelay {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

// Sum of c * x^b * exp(-a x), keyed by (a, b).
using PolyExp = std::map<std::pair<int, int>, Rational>;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

PolyExp multiply(const PolyExp& lhs, const PolyExp& rhs) {
  PolyExp out;
  for (const auto& [lk, lc] : lhs) {
    for (const auto& [rk, rc] : rhs) {
      out[{lk.first + rk.first, lk.second + rk.second}] += lc * rc;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

// lower_gamma(k, x) = (k-1)! (1 - exp(-x) sum_{q<k} x^q / q!).
PolyExp lower_gamma(int k) {
  const cpp_int base = factorial(k - 1);
  PolyExp p;
  p[{0, 0}] = Rational(base);
  for (int q = 0; q < k; ++q) p[{1, q}] = -Rational(base, factorial(q));
  return p;
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(perm[i])) {
      seen[i] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// lower_gamma(a, u) / u^a. The series e^{-u} sum_k u^k / (a (a+1) ... (a+k))
// has positive terms only; it is used until it gets long.
double scaled_lower_gamma(int a, double u) {
  if (u < 40.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
      term *= u / (a + k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-u);
  }
  return std::exp(std::log(boost::math::tgamma_lower(a, u)) - a * std::log(u));
}

struct TailDims {
  int s;
  int t;
  double log_norm;  // log prod_i (t-i)! (s-i)!
};

TailDims tail_dims(int m, int n, double x, double scale) {
  if (m < 1 || n < 1) throw DomainError("Wishart dimensions must be >= 1");
  if (!(scale > 0.0)) throw DomainError("Wishart scale must be positive");
  if (!(x >= 0.0)) throw DomainError("Wishart argument must be >= 0");
  TailDims d{std::min(m, n), std::max(m, n), 0.0};
  for (int i = 1; i <= d.s; ++i) d.log_norm += std::lgamma(d.t - i + 1.0) + std::lgamma(d.s - i + 1.0);
  return d;
}

Eigen::MatrixXd scaled_gamma_matrix(const TailDims& d, double u) {
  Eigen::MatrixXd g(d.s, d.s);
  for (int i = 1; i <= d.s; ++i)
    for (int j = 1; j <= d.s; ++j) g(i - 1, j - 1) = scaled_lower_gamma(d.t - d.s + i + j - 1, u);
  return g;
}

}  // namespace

PolyExpExpansion wishart_maxeig_expansion(int m, int n, double scale) {
  if (m < 1 || n < 1) throw DomainError("wishart_maxeig_expansion: dimensions must be >= 1");
  if (!(scale > 0.0)) throw DomainError("wishart_maxeig_expansion: scale must be positive");
  const int s = std::min(m, n);
  const int t = std::max(m, n);
  if (s > 8) throw ResourceError("wishart_maxeig_expansion: min(m, n) > 8 not supported");

  std::vector<std::vector<PolyExp>> entries(s, std::vector<PolyExp>(s));
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) entries[i][j] = lower_gamma(t - s + i + j + 1);
  }

  PolyExp det;
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    PolyExp prod{{{0, 0}, Rational(permutation_sign(perm))}};
    for (int i = 0; i < s; ++i) prod = multiply(prod, entries[i][perm[i]]);
    for (const auto& [key, c] : prod) det[key] += c;
  } while (std::next_permutation(perm.begin(), perm.end()));

  // F(inf) = 1 fixes the normalization; the only exp-free term is constant.
  const Rational norm = det[{0, 0}];
  for (const auto& [key, c] : det) {
    if (key.first == 0 && key.second != 0 && c != 0) {
      throw Error("wishart_maxeig_expansion: unexpected polynomial term");
    }
  }

  // Differentiate the exponential part: d/dx c x^b e^{-ax}.
  PolyExp pdf;
  for (const auto& [key, c] : det) {
    const auto [a, b] = key;
    if (a == 0 || c == 0) continue;
    if (b > 0) pdf[{a, b - 1}] += c * b / norm;
    pdf[{a, b}] -= c * a / norm;
  }

  PolyExpExpansion out;
  out.small_dim = s;
  out.large_dim = t;
  out.scale = scale;
  for (const auto& [key, c] : pdf) {
    if (c == 0) continue;
    const auto [a, b] = key;
    // p x^b e^{-ax} = d a^{b+1} / b! x^b e^{-ax}.
    cpp_int a_pow = 1;
    for (int q = 0; q <= b; ++q) a_pow *= a;
    const Rational d = c * Rational(factorial(b), a_pow);
    out.terms.push_back({a, b, static_cast<double>(d)});
  }
  return out;
}

double wishart_small_x_constant(int m, int n) {
  const int s = std::min(m, n);
  const int t = std::max(m, n);
  double log_c = 0.0;
  for (int k = 0; k < s; ++k) log_c += std::lgamma(k + 1.0) - std::lgamma(t + k + 1.0);
  return std::exp(log_c);
}

double wishart_maxeig_tail_cdf(int m, int n, double x, double scale) {
  const TailDims d = tail_dims(m, n, x, scale);
  if (x == 0.0) return 0.0;
  const double u = x / scale;
  const double det = scaled_gamma_matrix(d, u).determinant();
  if (!(det > 0.0)) return 0.0;
  return std::min(1.0, std::exp(d.s * d.t * std::log(u) + std::log(det) - d.log_norm));
}

double wishart_maxeig_tail_pdf(int m, int n, double x, double scale) {
  const TailDims d = tail_dims(m, n, x, scale);
  const double u = x / scale;
  if (x == 0.0) return d.s * d.t == 1 ? 1.0 / scale : 0.0;
  // d/du det G = sum_j det(G with column j differentiated); each derivative
  // column carries one power of u less, leaving exp(-u).
  const Eigen::MatrixXd g = scaled_gamma_matrix(d, u);
  double sum = 0.0;
  for (int j = 0; j < d.s; ++j) {
    Eigen::MatrixXd gj = g;
    gj.col(j).setConstant(std::exp(-u));
    sum += gj.determinant();
  }
  if (!(sum > 0.0)) return 0.0;
  return std::exp((d.s * d.t - 1) * std::log(u) + std::log(sum) - d.log_norm) / scale;
}

double PolyExpExpansion::pdf(double x) const {
  if (x < 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& term : terms) {
    const double rate = term.a / scale;
    const double log_mag = (term.b + 1) * std::log(rate) + term.b * std::log(x) -
                           std::lgamma(term.b + 1.0) - rate * x;
    if (x == 0.0) {
      if (term.b == 0) sum += term.d * rate;
      continue;
    }
    sum += term.d * std::exp(log_mag);
  }
  return sum;
}

double PolyExpExpansion::ccdf(double x) const {
  if (x <= 0.0) return 1.0;
  double sum = 0.0;
  for (const auto& term : terms) {
    const double u = term.a * x / scale;
    double partial = 0.0;
    double power = 1.0;
    for (int q = 0; q <= term.b; ++q) {
      partial += power;
      power *= u / (q + 1);
    }
    sum += term.d * partial * std::exp(-u);
  }
  return sum;
}

double PolyExpExpansion::cdf(double x) const { return 1.0 - ccdf(x); }

PolyExpExpansion PolyExpExpansion::rescaled(double new_scale) const {
  PolyExpExpansion out = *this;
  out.scale = new_scale;
  return out;
}

}  // namespace fdrelay
