#include "torsionlab/special_functions.hpp"

#include "torsionlab/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace torsionlab {

namespace {

constexpr double kPi = std::numbers::pi;

/// ζ(2j) for j ≥ 3 by direct summation with an Euler–Maclaurin tail.
double even_zeta(int two_j) {
  constexpr int N = 100;
  double sum = 0.0;
  for (int n = N; n >= 1; --n) sum += std::pow(static_cast<double>(n), -two_j);
  const double x = N;
  sum += std::pow(x, 1.0 - two_j) / (two_j - 1.0) - 0.5 * std::pow(x, -two_j) +
         two_j / 12.0 * std::pow(x, -two_j - 1.0);
  return sum;
}

const std::array<double, 61>& bernoulli_table() {
  static const std::array<double, 61> table = [] {
    std::array<double, 61> b{};
    b[0] = 1.0;
    b[1] = -0.5;
    b[2] = 1.0 / 6.0;
    b[4] = -1.0 / 30.0;
    double factorial = 24.0;  // (2j)! for j = 2
    for (int j = 3; 2 * j <= 60; ++j) {
      factorial *= (2.0 * j - 1.0) * (2.0 * j);
      const double mag = 2.0 * factorial * even_zeta(2 * j) / std::pow(2.0 * kPi, 2 * j);
      b[static_cast<size_t>(2 * j)] = (j % 2 == 1) ? mag : -mag;
    }
    return b;
  }();
  return table;
}

constexpr int kEulerMaclaurinTerms = 15;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int em_cutoff(double s) { return 25 + static_cast<int>(std::ceil(std::abs(s))); }

void check_hurwitz_args(double s, double a) {
  if (s == 1.0) throw Error(ErrorCode::PoleAtOne, "zeta has a pole at s = 1");
  if (!(a > 0.0)) throw Error(ErrorCode::BadParameter, "Hurwitz parameter must be positive");
}

}  // namespace

double bernoulli(int n) {
  if (n < 0 || n > 60) throw Error(ErrorCode::BadParameter, "bernoulli index out of range");
  return bernoulli_table()[static_cast<size_t>(n)];
}

double bernoulli_polynomial(int n, double x) {
  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    sum += binom * bernoulli(k) * std::pow(x, n - k);
    binom = binom * (n - k) / (k + 1.0);
  }
  return sum;
}

double hurwitz_zeta(double s, double a) {
  check_hurwitz_args(s, a);
  const int n_direct = em_cutoff(s);
  double sum = 0.0;
  for (int k = n_direct - 1; k >= 0; --k) sum += std::pow(k + a, -s);
  const double x = n_direct + a;
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  for (int j = 1; j <= kEulerMaclaurinTerms; ++j) {
    if (j > 1) rising *= (s + 2.0 * j - 3.0) * (s + 2.0 * j - 2.0);
    const double term =
        bernoulli(2 * j) / factorial(2 * j) * rising * std::pow(x, -s - 2.0 * j + 1.0);
    sum += term;
    if (rising == 0.0) break;
  }
  return sum;
}

double hurwitz_zeta_derivative(double s, double a) {
  check_hurwitz_args(s, a);
  const int n_direct = em_cutoff(s);
  double sum = 0.0;
  for (int k = n_direct - 1; k >= 0; --k) sum -= std::log(k + a) * std::pow(k + a, -s);
  const double x = n_direct + a;
  const double lx = std::log(x);
  sum += -lx * std::pow(x, 1.0 - s) / (s - 1.0) - std::pow(x, 1.0 - s) / ((s - 1.0) * (s - 1.0));
  sum += -0.5 * lx * std::pow(x, -s);
  for (int j = 1; j <= kEulerMaclaurinTerms; ++j) {
    // P(s) = Π_{i=0}^{2j-2} (s+i) and its derivative by the product rule.
    double p = 1.0, dp = 0.0;
    for (int i = 0; i <= 2 * j - 2; ++i) {
      dp = dp * (s + i) + p;
      p *= (s + i);
    }
    const double c = bernoulli(2 * j) / factorial(2 * j);
    const double xp = std::pow(x, -s - 2.0 * j + 1.0);
    sum += c * (dp - lx * p) * xp;
  }
  return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double riemann_zeta_prime0() { return -0.5 * std::log(2.0 * kPi); }

std::complex<double> reciprocal_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.real() < 0.5) {
    // 1/Γ(z) = sin(πz) Γ(1 - z) / π
    const C one_minus = C(1.0) - z;
    const C rg = reciprocal_gamma(one_minus);
    if (rg == C(0.0)) return C(0.0);
    return std::sin(kPi * z) / (kPi * rg);
  }
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()) && z.real() <= 20.0) {
    return C(1.0 / factorial(static_cast<int>(z.real()) - 1));
  }
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  const C w = z - 1.0;
  C x = p[0];
  for (size_t i = 1; i < p.size(); ++i) x += p[i] / (w + static_cast<double>(i));
  const C t = w + g + 0.5;
  // Γ(z) = √(2π) t^{w+½} e^{-t} x
  return std::exp(-(w + 0.5) * std::log(t) + t) / (std::sqrt(2.0 * kPi) * x);
}

std::complex<double> digamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw Error(ErrorCode::PoleHit, "digamma pole at a nonpositive integer");
  if (z.real() < 0.5) return digamma(C(1.0) - z) - kPi / std::tan(kPi * z);
  C acc = 0.0;
  while (std::abs(z) < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const C inv2 = 1.0 / (z * z);
  C series = 0.0;
  C pw = inv2;
  for (int k = 1; k <= 8; ++k) {
    series += bernoulli(2 * k) / (2.0 * k) * pw;
    pw *= inv2;
  }
  return acc + std::log(z) - 0.5 / z - series;
}

double harmonic_number(int m) {
  double h = 0.0;
  for (int i = 1; i <= m; ++i) h += 1.0 / i;
  return h;
}

}  // namespace torsionlab
