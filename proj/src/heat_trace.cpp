#include "torsionlab/heat_trace.hpp"

#include "torsionlab/errors.hpp"
#include "torsionlab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace torsionlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSumCutoff = 1e-18;

std::vector<HeatTerm> normalize(std::vector<HeatTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const HeatTerm& a, const HeatTerm& b) { return a.power > b.power; });
  std::vector<HeatTerm> out;
  for (const HeatTerm& t : terms) {
    if (!out.empty() && std::abs(out.back().power - t.power) < 1e-12)
      out.back().coeff += t.coeff;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const HeatTerm& t) { return t.coeff == 0.0; });
  return out;
}

/// Σ_m e^{-t ((2πm + θ)/L)²}, optionally skipping the zero mode.
double circle_sum(double t, double length, double theta, bool skip_zero_mode) {
  const double scale = t / (length * length);
  auto term = [&](double m) {
    const double x = 2.0 * kPi * m + theta;
    return std::exp(-scale * x * x);
  };
  double sum = (skip_zero_mode && theta == 0.0) ? 0.0 : term(0.0);
  for (int m = 1;; ++m) {
    const double up = term(m);
    const double down = term(-m);
    sum += up + down;
    if (up <= kSumCutoff * sum && down <= kSumCutoff * sum) break;
    if (up == 0.0 && down == 0.0) break;
  }
  return sum;
}

/// Σ_{m ≥ start} e^{-t ((m + shift) π / R)²}.
double interval_sum(double t, double radius, double shift, int start) {
  const double scale = t * kPi * kPi / (radius * radius);
  double sum = 0.0;
  for (int m = start;; ++m) {
    const double x = m + shift;
    const double term = std::exp(-scale * x * x);
    sum += term;
    if (term <= kSumCutoff * sum || term == 0.0) {
      if (x > 0.0) break;
    }
  }
  return sum;
}

/// 2 Σ_{k≥1} s_k e^{-k² a / t} with s_k = cos(kθ) or (-1)^k.
double image_sum(double t, double a, const std::function<double(int)>& sign) {
  double sum = 0.0;
  for (int k = 1;; ++k) {
    const double g = std::exp(-static_cast<double>(k) * k * a / t);
    sum += 2.0 * sign(k) * g;
    if (g <= kSumCutoff) break;
  }
  return sum;
}

void check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::BadParameter, std::string(what) + " must be positive");
}

}  // namespace

double HeatTrace::expansion(double t) const {
  double sum = 0.0;
  for (const HeatTerm& term : small_t) sum += term.coeff * std::pow(t, -term.power);
  return sum;
}

double HeatTrace::consistency_residual(double t) const {
  return std::abs(tail(t) + kernel_dim - expansion(t) - remainder(t));
}

double HeatTrace::coefficient(double power) const {
  for (const HeatTerm& term : small_t)
    if (std::abs(term.power - power) < 1e-12) return term.coeff;
  return 0.0;
}

HeatTrace theta_expansion(const FactorSpec& f) {
  HeatTrace h;
  switch (f.kind) {
    case FactorKind::Circle: {
      check_positive(f.length, "circle length");
      if (!(f.theta >= 0.0 && f.theta < 2.0 * kPi))
        throw Error(ErrorCode::BadParameter, "circle holonomy must lie in [0, 2pi)");
      const double L = f.length, theta = f.theta;
      h.label = "circle";
      h.small_t = {{0.5, L / std::sqrt(4.0 * kPi)}};
      h.kernel_dim = theta == 0.0 ? 1 : 0;
      h.tail = [L, theta](double t) { return circle_sum(t, L, theta, true); };
      h.remainder = [L, theta](double t) {
        const double lead = L / std::sqrt(4.0 * kPi * t);
        return lead * image_sum(t, L * L / 4.0, [theta](int k) { return std::cos(k * theta); });
      };
      return h;
    }
    case FactorKind::Dirichlet:
    case FactorKind::Neumann: {
      check_positive(f.length, "interval length");
      const double R = f.length;
      const bool neumann = f.kind == FactorKind::Neumann;
      h.label = neumann ? "neumann" : "dirichlet";
      h.small_t = {{0.5, R / std::sqrt(4.0 * kPi)}, {0.0, neumann ? 0.5 : -0.5}};
      h.kernel_dim = neumann ? 1 : 0;
      h.tail = [R](double t) { return interval_sum(t, R, 0.0, 1); };
      h.remainder = [R](double t) {
        return R / std::sqrt(4.0 * kPi * t) * image_sum(t, R * R, [](int) { return 1.0; });
      };
      return h;
    }
    case FactorKind::Mixed: {
      check_positive(f.length, "interval length");
      const double R = f.length;
      h.label = "mixed";
      h.small_t = {{0.5, R / std::sqrt(4.0 * kPi)}};
      h.kernel_dim = 0;
      h.tail = [R](double t) { return interval_sum(t, R, 0.5, 0); };
      h.remainder = [R](double t) {
        return R / std::sqrt(4.0 * kPi * t) *
               image_sum(t, R * R, [](int k) { return (k % 2 == 0) ? 1.0 : -1.0; });
      };
      return h;
    }
    case FactorKind::Lattice: {
      if (f.dim < 1) throw Error(ErrorCode::BadParameter, "lattice dimension must be >= 1");
      const HeatTrace circle = theta_expansion({FactorKind::Circle, f.length, 0.0, 1});
      HeatTrace acc = circle;
      for (int i = 1; i < f.dim; ++i) acc = product_heat_trace(acc, circle);
      acc.label = "lattice";
      return acc;
    }
  }
  throw Error(ErrorCode::BadParameter, "unknown factor");
}

HeatTrace sphere2_scalar_heat_trace() {
  constexpr int kOrder = 16;
  // 2 Σ_{m ∈ N+½} m e^{-t m²} ~ 1/t + Σ_k a_k t^k with
  // a_k = 2 (-1)^k / k! · ζ(-2k-1, ½) and ζ(-n, ½) = -B_{n+1}(½)/(n+1).
  std::vector<double> a(kOrder + 2);
  double fact = 1.0;
  for (int k = 0; k <= kOrder + 1; ++k) {
    if (k > 0) fact *= k;
    const int n = 2 * k + 1;
    const double b_half = -(1.0 - std::pow(2.0, -n)) * bernoulli(n + 1);  // B_{n+1}(½)
    const double hz = -b_half / (n + 1.0);
    a[static_cast<size_t>(k)] = 2.0 * ((k % 2 == 0) ? 1.0 : -1.0) / fact * hz;
  }
  // Multiply by e^{t/4} = Σ_j (t/4)^j / j!.
  std::vector<double> e(kOrder + 3);
  e[0] = 1.0;
  for (size_t j = 1; j < e.size(); ++j) e[j] = e[j - 1] * 0.25 / static_cast<double>(j);

  std::vector<HeatTerm> terms;
  terms.push_back({1.0, 1.0});
  // Coefficient of t^j, j ≥ 0: e_{j+1} (from 1/t) + Σ_{i≤j} a_i e_{j-i}.
  auto coeff_of = [&](int j) {
    double c = e[static_cast<size_t>(j + 1)];
    for (int i = 0; i <= j; ++i) c += a[static_cast<size_t>(i)] * e[static_cast<size_t>(j - i)];
    return c;
  };
  for (int j = 0; j <= kOrder; ++j) terms.push_back({-static_cast<double>(j), coeff_of(j)});

  HeatTrace h;
  h.label = "sphere2";
  h.small_t = normalize(terms);
  h.kernel_dim = 1;
  h.exponential_remainder = false;
  h.remainder_cutoff = 0.1;
  const double next = std::abs(coeff_of(kOrder + 1));
  // ∫_0^cutoff t^{σ-1} |c| t^{17} dt for σ ≥ -16, generously bounded.
  h.remainder_bound = next * std::pow(h.remainder_cutoff, kOrder + 1);

  auto tail = [](double t) {
    double sum = 0.0;
    for (int l = 1;; ++l) {
      const double term = (2.0 * l + 1.0) * std::exp(-t * l * (l + 1.0));
      sum += term;
      if (term <= kSumCutoff * sum || term == 0.0) break;
    }
    return sum;
  };
  h.tail = tail;
  auto expansion = [terms = h.small_t](double t) {
    double sum = 0.0;
    for (const HeatTerm& term : terms) sum += term.coeff * std::pow(t, -term.power);
    return sum;
  };
  const double cutoff = h.remainder_cutoff;
  h.remainder = [tail, expansion, cutoff](double t) {
    if (t < cutoff) return 0.0;
    return 1.0 + tail(t) - expansion(t);
  };
  return h;
}

HeatTrace product_heat_trace(const HeatTrace& first, const HeatTrace& second) {
  if (!first.exponential_remainder || !second.exponential_remainder)
    throw Error(ErrorCode::BadParameter,
                "products are supported for factors with exponentially small remainders");
  HeatTrace h;
  h.label = first.label + "x" + second.label;
  std::vector<HeatTerm> terms;
  for (const HeatTerm& x : first.small_t)
    for (const HeatTerm& y : second.small_t) terms.push_back({x.power + y.power, x.coeff * y.coeff});
  h.small_t = normalize(terms);
  h.kernel_dim = first.kernel_dim * second.kernel_dim;

  auto f = std::make_shared<HeatTrace>(first);
  auto g = std::make_shared<HeatTrace>(second);
  h.tail = [f, g](double t) {
    const double b1 = f->kernel_dim, b2 = g->kernel_dim;
    const double t1 = f->tail(t), t2 = g->tail(t);
    return t1 * t2 + b1 * t2 + t1 * b2;
  };
  h.remainder = [f, g](double t) {
    const double e1 = f->expansion(t), e2 = g->expansion(t);
    const double r1 = f->remainder(t), r2 = g->remainder(t);
    return e1 * r2 + r1 * e2 + r1 * r2;
  };
  return h;
}

HeatTrace sum_heat_trace(const HeatTrace& first, const HeatTrace& second) {
  HeatTrace h;
  h.label = first.label + "+" + second.label;
  std::vector<HeatTerm> terms = first.small_t;
  terms.insert(terms.end(), second.small_t.begin(), second.small_t.end());
  h.small_t = normalize(terms);
  h.kernel_dim = first.kernel_dim + second.kernel_dim;
  auto f = std::make_shared<HeatTrace>(first);
  auto g = std::make_shared<HeatTrace>(second);
  h.tail = [f, g](double t) { return f->tail(t) + g->tail(t); };
  h.remainder = [f, g](double t) { return f->remainder(t) + g->remainder(t); };
  h.exponential_remainder = first.exponential_remainder && second.exponential_remainder;
  h.remainder_cutoff = std::max(first.remainder_cutoff, second.remainder_cutoff);
  h.remainder_bound = first.remainder_bound + second.remainder_bound;
  return h;
}

HeatTrace scale_heat_trace(const HeatTrace& h, int factor) {
  if (factor < 1) throw Error(ErrorCode::BadParameter, "multiplicity must be >= 1");
  if (factor == 1) return h;
  HeatTrace out = h;
  for (HeatTerm& t : out.small_t) t.coeff *= factor;
  out.kernel_dim *= factor;
  out.remainder_bound *= factor;
  auto base = std::make_shared<HeatTrace>(h);
  const double m = factor;
  out.tail = [base, m](double t) { return m * base->tail(t); };
  out.remainder = [base, m](double t) { return m * base->remainder(t); };
  return out;
}

HeatTrace drop_kernel(const HeatTrace& h) {
  HeatTrace out = h;
  std::vector<HeatTerm> terms = out.small_t;
  terms.push_back({0.0, -static_cast<double>(h.kernel_dim)});
  out.small_t = normalize(terms);
  out.kernel_dim = 0;
  return out;
}

}  // namespace torsionlab
