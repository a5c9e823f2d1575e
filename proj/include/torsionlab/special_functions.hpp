#pragma once

#include <complex>

namespace torsionlab {

/// Bernoulli number B_n (B_1 = -1/2), n ≤ 60.
double bernoulli(int n);

/// Bernoulli polynomial B_n(x).
double bernoulli_polynomial(int n, double x);

/// ζ(s, a) = Σ_{k≥0} (k+a)^{-s}, continued to real s ≠ 1 by Euler–Maclaurin.
double hurwitz_zeta(double s, double a);

/// ∂ζ(s, a)/∂s.
double hurwitz_zeta_derivative(double s, double a);

/// ζ_R(s) for real s ≠ 1.
double riemann_zeta(double s);

/// ζ_R'(0) = -½ log 2π.
double riemann_zeta_prime0();

/// 1/Γ(z), entire.
std::complex<double> reciprocal_gamma(std::complex<double> z);

/// ψ(z) = Γ'(z)/Γ(z); z must avoid the nonpositive integers.
std::complex<double> digamma(std::complex<double> z);

/// Harmonic number H_m = 1 + 1/2 + ... + 1/m.
double harmonic_number(int m);

}  // namespace torsionlab
