#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace fdrelay {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest eigenvalue of a Hermitian matrix and a unit eigenvector for it.
struct EigPair {
  double value = 0.0;
  ComplexVector vector;
};

/// Rotates `v` so that its first non-negligible component is real and
/// positive. Eigenvectors are only defined up to a phase; fixing one makes
/// results reproducible across runs and platforms.
void normalize_phase(ComplexVector& v);

/// Largest eigenpair of a square Hermitian matrix.
///
/// The input must satisfy ||A - A^H||_F <= 1e-10 ||A||_F, otherwise a
/// DimensionError is thrown (as it is for non-square input). In a
/// degenerate top eigenspace any unit vector of that space may be returned.
/// The returned vector has its phase fixed by normalize_phase().
EigPair hermitian_max_eig(const ComplexMatrix& a);

/// Spectral norm squared, lambda_max(X X^H).
double spectral_norm_sq(const ComplexMatrix& x);

/// Modified Bessel function of the second kind K_order(z) for integer
/// order >= 0 and z > 0. Underflows to 0 for very large z.
double bessel_k(int order, double z);

/// Integral of f over (0, inf). Throws ConvergenceError when the error
/// estimate exceeds max(abs_tol, rel_tol * |result|).
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double abs_tol, double rel_tol);

/// Same, over the finite interval (lo, hi).
double integrate_finite(const std::function<double(double)>& f, double lo,
                        double hi, double abs_tol, double rel_tol);

}  // namespace fdrelay
