#pragma once

#include <complex>
#include <functional>

namespace torsionlab {

struct QuadratureResult {
  std::complex<double> value;
  double abs_error = 0.0;
  int intervals = 0;
  bool converged = false;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Globally adaptive 7/15-point Gauss–Kronrod on [a, b]: bisects the interval
/// with the largest |K15 - G7| until the summed estimate is below `abs_tol`.
QuadratureResult gauss_kronrod(const ComplexIntegrand& f, double a, double b, double abs_tol,
                               int max_intervals = 4000);

/// Absolute target used by the zeta engine (default 1e-12).
double quadrature_tolerance();
void set_quadrature_tolerance(double eps);

}  // namespace torsionlab
