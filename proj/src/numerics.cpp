#include "fdrelay/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "fdrelay/errors.hpp"

namespace fdrelay {

namespace {

constexpr double kHermitianTolerance = 1e-10;

void check_error_bound(const char* where, double result, double error,
                       double abs_tol, double rel_tol) {
  if (!std::isfinite(result)) {
    throw ConvergenceError(std::string(where) + ": non-finite result", result,
                           error);
  }
  const double allowed = std::max(abs_tol, rel_tol * std::abs(result));
  if (error > allowed) {
    std::ostringstream msg;
    msg << where << ": error estimate " << error << " exceeds tolerance "
        << allowed;
    throw ConvergenceError(msg.str(), result, error);
  }
}

}  // namespace

void normalize_phase(ComplexVector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > 1e-8 * scale) {
      v *= std::conj(v[i]) / mag;
      v[i] = Complex(mag, 0.0);
      return;
    }
  }
}

EigPair hermitian_max_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("hermitian_max_eig: matrix must be square and non-empty");
  }
  const double norm = a.norm();
  if ((a - a.adjoint()).norm() > kHermitianTolerance * norm) {
    throw DimensionError("hermitian_max_eig: matrix is not Hermitian");
  }
  if (a.rows() == 1) {
    ComplexVector one(1);
    one[0] = 1.0;
    return {a(0, 0).real(), std::move(one)};
  }
  // Symmetrize so the solver sees an exactly Hermitian lower triangle.
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_max_eig: eigensolver failed", 0.0, 0.0);
  }
  const Eigen::Index top = sym.rows() - 1;  // eigenvalues are ascending
  EigPair out;
  out.value = solver.eigenvalues()[top];
  out.vector = solver.eigenvectors().col(top);
  out.vector.normalize();
  normalize_phase(out.vector);
  return out;
}

double spectral_norm_sq(const ComplexMatrix& x) {
  // The smaller Gram matrix has the same nonzero spectrum.
  if (x.rows() <= x.cols()) {
    return std::max(0.0, hermitian_max_eig(x * x.adjoint()).value);
  }
  return std::max(0.0, hermitian_max_eig(x.adjoint() * x).value);
}

double bessel_k(int order, double z) {
  if (order < 0) throw DomainError("bessel_k: order must be nonnegative");
  if (!(z > 0.0)) throw DomainError("bessel_k: argument must be positive");
  if (z > 745.0) return 0.0;  // below the smallest subnormal
  return boost::math::cyl_bessel_k(order, z);
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double abs_tol, double rel_tol) {
  // Substituting x = e^v spreads features living on very different scales
  // (a spike near zero and a tail at large x) evenly over the real line.
  auto g = [&](double v) {
    const double x = std::exp(v);
    if (x == 0.0 || !std::isfinite(x)) return 0.0;
    return f(x) * x;
  };
  boost::math::quadrature::sinh_sinh<double> integrator(15);
  double error = 0.0;
  double l1 = 0.0;
  double result = 0.0;
  try {
    result = integrator.integrate(g, rel_tol, &error, &l1);
  } catch (const std::exception& ex) {
    throw ConvergenceError(std::string("integrate_semi_infinite: ") + ex.what(),
                           std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::infinity());
  }
  check_error_bound("integrate_semi_infinite", result, error, abs_tol,
                    rel_tol);
  return result;
}

double integrate_finite(const std::function<double(double)>& f, double lo,
                        double hi, double abs_tol, double rel_tol) {
  if (!(hi > lo)) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  double result = 0.0;
  try {
    result = integrator.integrate(f, lo, hi, rel_tol, &error, &l1);
  } catch (const std::exception& ex) {
    throw ConvergenceError(std::string("integrate_finite: ") + ex.what(),
                           std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::infinity());
  }
  check_error_bound("integrate_finite", result, error, abs_tol, rel_tol);
  return result;
}

}  // namespace fdrelay
