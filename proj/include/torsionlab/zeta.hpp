#pragma once

#include "torsionlab/heat_trace.hpp"

#include <complex>
#include <optional>

namespace torsionlab {

struct ZetaEval {
  std::complex<double> s;
  std::complex<double> value;
  std::optional<std::complex<double>> derivative;
  double abs_error = 0.0;
  double derivative_abs_error = 0.0;
  /// s was a nonpositive integer; the value came from coefficient arithmetic.
  bool exact_coefficient_path = false;
};

/// ζ(s) = Σ_{λ>0} λ^{-s} by the Mellin split at t = 1:
///
///   Γ(s) ζ(s) = Σ_p c_p/(s-p) - b/s + ∫₀¹ t^{s-1} remainder dt + ∫₁^∞ t^{s-1} tail dt.
///
/// At s = -m the pole of Γ is cancelled exactly:
///   ζ(-m)  = (-1)^m m! (c_{-m} - b[m=0])
///   ζ'(-m) = (-1)^m m! (G(-m) + (γ - H_m)(c_{-m} - b[m=0]))
/// with G the part of the bracket regular at -m.
ZetaEval mellin_zeta(const HeatTrace& h, std::complex<double> s, bool with_derivative = false);

inline ZetaEval mellin_zeta(const HeatTrace& h, double s, bool with_derivative = false) {
  return mellin_zeta(h, std::complex<double>(s, 0.0), with_derivative);
}

}  // namespace torsionlab
