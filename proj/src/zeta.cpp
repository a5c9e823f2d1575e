#include "torsionlab/zeta.hpp"

#include "torsionlab/errors.hpp"
#include "torsionlab/quadrature.hpp"
#include "torsionlab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace torsionlab {

namespace {

using C = std::complex<double>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Integrals {
  C value = 0.0;
  C derivative = 0.0;
  double error = 0.0;
  double derivative_error = 0.0;
};

void require(const QuadratureResult& r, const char* where) {
  if (!r.converged)
    throw Error(ErrorCode::QuadratureFailure,
                std::string(where) + " integral did not reach the tolerance (estimate " +
                    std::to_string(r.abs_error) + ")");
}

C power(double t, C exponent) { return std::exp(exponent * std::log(t)); }

Integrals remainder_integrals(const HeatTrace& h, C s, bool with_derivative, double tol) {
  Integrals out;
  const double lo = h.remainder_cutoff;
  if (lo >= 1.0) return out;
  auto f = [&](double t) -> C {
    const double r = h.remainder(t);
    if (r == 0.0) return 0.0;
    return power(t, s - 1.0) * r;
  };
  const QuadratureResult v = gauss_kronrod(f, lo, 1.0, tol);
  require(v, "remainder");
  out.value = v.value;
  out.error = v.abs_error + h.remainder_bound;
  if (with_derivative) {
    auto g = [&](double t) -> C {
      const double r = h.remainder(t);
      if (r == 0.0) return 0.0;
      return power(t, s - 1.0) * std::log(t) * r;
    };
    const QuadratureResult d = gauss_kronrod(g, lo, 1.0, tol);
    require(d, "remainder");
    out.derivative = d.value;
    // |log t| ≤ |log cutoff| on the neglected piece
    out.derivative_error =
        d.abs_error + h.remainder_bound * (lo > 0.0 ? std::abs(std::log(lo)) + 1.0 : 1.0);
  }
  return out;
}

Integrals tail_integrals(const HeatTrace& h, C s, bool with_derivative, double tol) {
  Integrals out;
  const double sigma = s.real();
  for (double a = 1.0;; a *= 2.0) {
    const double b = 2.0 * a;
    auto f = [&](double t) -> C { return power(t, s - 1.0) * h.tail(t); };
    const QuadratureResult v = gauss_kronrod(f, a, b, tol);
    require(v, "tail");
    out.value += v.value;
    out.error += v.abs_error;
    if (with_derivative) {
      auto g = [&](double t) -> C { return power(t, s - 1.0) * std::log(t) * h.tail(t); };
      const QuadratureResult d = gauss_kronrod(g, a, b, tol);
      require(d, "tail");
      out.derivative += d.value;
      out.derivative_error += d.abs_error;
    }
    const double edge = std::pow(b, sigma) * std::abs(h.tail(b)) * (1.0 + std::log(b));
    if (edge < 1e-18) break;
    if (b > 1e7)
      throw Error(ErrorCode::QuadratureFailure, "heat trace tail does not decay");
  }
  return out;
}

bool nonpositive_integer(C s, int* m) {
  if (s.imag() != 0.0) return false;
  const double r = std::round(s.real());
  if (r > 0.0 || std::abs(s.real() - r) > 1e-14) return false;
  *m = static_cast<int>(-r);
  return true;
}

}  // namespace

ZetaEval mellin_zeta(const HeatTrace& h, C s, bool with_derivative) {
  if (!h.tail || !h.remainder)
    throw Error(ErrorCode::BadParameter, "heat trace is missing its evaluators");
  ZetaEval out;
  out.s = s;
  const double tol = quadrature_tolerance();

  int m = 0;
  const bool at_integer = nonpositive_integer(s, &m);

  for (const HeatTerm& term : h.small_t) {
    if (term.coeff == 0.0) continue;
    const bool integer_power = term.power <= 0.0 && term.power == std::round(term.power);
    if (integer_power) continue;
    if (std::abs(s - C(term.power)) < 1e-12)
      throw Error(ErrorCode::PoleHit, "zeta has a pole at s = " + std::to_string(term.power));
  }

  if (at_integer) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    const double residue = h.coefficient(-static_cast<double>(m)) - (m == 0 ? h.kernel_dim : 0.0);
    out.value = sign * fact * residue;
    out.abs_error = 4.0 * kEps * std::abs(out.value);
    out.exact_coefficient_path = true;
    if (with_derivative) {
      const C sm(-static_cast<double>(m), 0.0);
      C regular = 0.0;
      double scale = 0.0;
      for (const HeatTerm& term : h.small_t) {
        if (std::abs(term.power + m) < 1e-12) continue;
        const C piece = term.coeff / (sm - term.power);
        regular += piece;
        scale += std::abs(piece);
      }
      if (m != 0) {
        regular -= static_cast<double>(h.kernel_dim) / sm;
        scale += std::abs(static_cast<double>(h.kernel_dim) / sm);
      }
      const Integrals rem = remainder_integrals(h, sm, false, tol);
      const Integrals tail = tail_integrals(h, sm, false, tol);
      regular += rem.value + tail.value;
      scale += std::abs(rem.value) + std::abs(tail.value);
      const double corr = std::numbers::egamma - harmonic_number(m);
      out.derivative = sign * fact * (regular + corr * residue);
      out.derivative_abs_error =
          fact * (rem.error + tail.error + 8.0 * kEps * (scale + std::abs(corr * residue)));
    }
    return out;
  }

  C bracket = 0.0;
  C bracket_prime = 0.0;
  double scale = 0.0;
  for (const HeatTerm& term : h.small_t) {
    const C denom = s - term.power;
    bracket += term.coeff / denom;
    bracket_prime -= term.coeff / (denom * denom);
    scale += std::abs(term.coeff / denom);
  }
  if (h.kernel_dim != 0) {
    const double b = h.kernel_dim;
    bracket -= b / s;
    bracket_prime += b / (s * s);
    scale += std::abs(b / s);
  }
  const Integrals rem = remainder_integrals(h, s, with_derivative, tol);
  const Integrals tail = tail_integrals(h, s, with_derivative, tol);
  bracket += rem.value + tail.value;
  bracket_prime += rem.derivative + tail.derivative;
  scale += std::abs(rem.value) + std::abs(tail.value);

  const C rg = reciprocal_gamma(s);
  out.value = rg * bracket;
  out.abs_error = std::abs(rg) * (rem.error + tail.error + 8.0 * kEps * scale);
  if (with_derivative) {
    const C psi = digamma(s);
    out.derivative = rg * (bracket_prime - psi * bracket);
    out.derivative_abs_error =
        std::abs(rg) * (rem.derivative_error + tail.derivative_error +
                        std::abs(psi) * (rem.error + tail.error) + 8.0 * kEps * scale * (1.0 + std::abs(psi)));
  }
  return out;
}

}  // namespace torsionlab
