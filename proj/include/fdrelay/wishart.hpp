#pragma once

#include <vector>

namespace fdrelay {

/// One mixture component d(a, b): a Gamma(b + 1, rate a / scale) density
/// weighted by d.
struct PolyExpTerm {
  int a = 1;
  int b = 0;
  double d = 0.0;
};

/// Distribution of the largest eigenvalue of a complex Wishart matrix H^H H,
/// H an m x n matrix of i.i.d. CN(0, 1) entries, scaled by `scale`:
///
///   f(x) = sum_{a,b} a^{b+1} d(a,b) / (b! scale^{b+1}) x^b exp(-a x / scale)
///   F(x) = 1 - sum_{a,b} d(a,b) sum_{q=0}^{b} (a x / scale)^q / q! exp(-a x / scale)
///
/// with a in [1, min(m, n)] and b in [|m - n|, (m + n) a - 2 a^2].
struct PolyExpExpansion {
  int small_dim = 1;  // min(m, n)
  int large_dim = 1;  // max(m, n)
  double scale = 1.0;
  std::vector<PolyExpTerm> terms;

  double pdf(double x) const;
  double cdf(double x) const;
  /// 1 - cdf(x), evaluated directly.
  double ccdf(double x) const;

  PolyExpExpansion rescaled(double new_scale) const;
};

/// Coefficients obtained by exact rational expansion of
///   F(x) = det[ lower_gamma(t - s + i + j - 1, x) ]_{i,j=1..s} / prod_i (t-i)! (s-i)!
/// over polynomial x exponential terms, followed by differentiation.
/// Throws DomainError when m or n is zero and ResourceError when
/// min(m, n) > 8.
PolyExpExpansion wishart_maxeig_expansion(int m, int n, double scale = 1.0);

/// Largest-eigenvalue CDF and density evaluated from the determinant of
/// lower incomplete gamma functions with the power of x factored out, so
/// both keep full relative precision deep in the lower tail, where the
/// expansion form cancels. Cost grows as min(m, n)^3 per call.
double wishart_maxeig_tail_cdf(int m, int n, double x, double scale = 1.0);
double wishart_maxeig_tail_pdf(int m, int n, double x, double scale = 1.0);

/// Low-x behaviour F(x) ~ C (x / scale)^{m n}; returns C =
/// prod_{k<s} k! / prod_{k<s} (t + k)!.
double wishart_small_x_constant(int m, int n);

}  // namespace fdrelay
