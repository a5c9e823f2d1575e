#include "torsionlab/quadrature.hpp"

#include "torsionlab/errors.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <queue>
#include <vector>

namespace torsionlab {

namespace {

// Kronrod abscissae on [0, 1] (positive half), odd indices are Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const ComplexIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> kron = fc * kKronrodWeights[7];
  std::complex<double> gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[static_cast<size_t>(i)];
    const std::complex<double> sum = f(c - dx) + f(c + dx);
    kron += kKronrodWeights[static_cast<size_t>(i)] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[static_cast<size_t>(i / 2)] * sum;
  }
  Panel p{a, b, kron * h, std::abs((kron - gauss) * h)};
  return p;
}

std::atomic<double> g_tolerance{1e-12};

}  // namespace

QuadratureResult gauss_kronrod(const ComplexIntegrand& f, double a, double b, double abs_tol,
                               int max_intervals) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Panel> heap;
  heap.push(evaluate_panel(f, a, b));
  double total_error = heap.top().error;
  std::complex<double> total = heap.top().value;
  int intervals = 1;
  while (total_error > abs_tol && intervals < max_intervals) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted at machine precision
      heap.push(worst);
      break;
    }
    const Panel left = evaluate_panel(f, worst.a, mid);
    const Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running totals.
  total = 0.0;
  total_error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.abs_error = total_error;
  out.intervals = intervals;
  out.converged = total_error <= abs_tol;
  if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
    throw Error(ErrorCode::QuadratureFailure, "integrand produced a non-finite value");
  return out;
}

double quadrature_tolerance() { return g_tolerance.load(); }

void set_quadrature_tolerance(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::BadParameter, "quadrature tolerance must be positive");
  g_tolerance.store(eps);
}

}  // namespace torsionlab
