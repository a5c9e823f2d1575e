#include "torsionlab/spectral_models.hpp"

#include "torsionlab/errors.hpp"

#include <cmath>
#include <numbers>

namespace torsionlab {

namespace {

int binomial(int n, int k) {
  long long c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return static_cast<int>(c);
}

HeatTrace point_trace() {
  HeatTrace h;
  h.label = "point";
  h.small_t = {{0.0, 1.0}};
  h.kernel_dim = 1;
  h.tail = [](double) { return 0.0; };
  h.remainder = [](double) { return 0.0; };
  return h;
}

double sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

ClosedKind parse_closed_kind(const std::string& name) {
  if (name == "circle") return ClosedKind::Circle;
  if (name == "torus") return ClosedKind::Torus;
  if (name == "sphere2") return ClosedKind::Sphere2;
  if (name == "point") return ClosedKind::Point;
  throw Error(ErrorCode::ParseError, "unknown closed model '" + name + "'");
}

const char* closed_kind_name(ClosedKind kind) {
  switch (kind) {
    case ClosedKind::Circle: return "circle";
    case ClosedKind::Torus: return "torus";
    case ClosedKind::Sphere2: return "sphere2";
    case ClosedKind::Point: return "point";
  }
  return "unknown";
}

ClosedModel build_model(const ClosedModelSpec& spec) {
  ClosedModel m;
  m.name = closed_kind_name(spec.kind);
  m.rank = spec.rank;
  if (spec.rank < 1) throw Error(ErrorCode::BadParameter, "rank must be >= 1");
  switch (spec.kind) {
    case ClosedKind::Circle: {
      const double theta = std::fmod(spec.theta, 2.0 * std::numbers::pi);
      const double t = theta < 0.0 ? theta + 2.0 * std::numbers::pi : theta;
      const bool real_line = t == 0.0 || t == std::numbers::pi;
      if (!real_line && spec.rank % 2 != 0)
        throw Error(ErrorCode::BadParameter,
                    "an orthogonal character with angle outside {0, pi} needs even rank");
      const HeatTrace scalar = theta_expansion({FactorKind::Circle, spec.length, t, 1});
      const HeatTrace h = scale_heat_trace(scalar, spec.rank);
      m.dim = 1;
      m.traces = {h, h};
      m.betti = {h.kernel_dim, h.kernel_dim};
      return m;
    }
    case ClosedKind::Torus: {
      if (spec.dim < 1 || spec.dim > 6)
        throw Error(ErrorCode::BadParameter, "torus dimension must lie in 1..6");
      if (spec.rank != 1) throw Error(ErrorCode::BadParameter, "torus models are scalar (rank 1)");
      const HeatTrace scalar = theta_expansion({FactorKind::Lattice, spec.length, 0.0, spec.dim});
      m.dim = spec.dim;
      for (int k = 0; k <= spec.dim; ++k) {
        m.traces.push_back(scale_heat_trace(scalar, binomial(spec.dim, k)));
        m.betti.push_back(binomial(spec.dim, k));
      }
      return m;
    }
    case ClosedKind::Sphere2: {
      if (spec.rank != 1) throw Error(ErrorCode::BadParameter, "sphere2 is scalar (rank 1)");
      const HeatTrace scalar = sphere2_scalar_heat_trace();
      HeatTrace one = scale_heat_trace(drop_kernel(scalar), 2);
      one.label = "sphere2-1form";
      m.dim = 2;
      m.traces = {scalar, one, scalar};
      m.betti = {1, 0, 1};
      return m;
    }
    case ClosedKind::Point: {
      if (spec.rank != 1) throw Error(ErrorCode::BadParameter, "point is scalar (rank 1)");
      m.dim = 0;
      m.traces = {point_trace()};
      m.betti = {1};
      return m;
    }
  }
  throw Error(ErrorCode::BadParameter, "unknown closed model");
}

ZetaEval degree_zeta(const ClosedModel& model, int k, std::complex<double> s, bool with_derivative) {
  if (k < 0 || k > model.dim) throw Error(ErrorCode::BadParameter, "degree out of range");
  return mellin_zeta(model.traces[static_cast<size_t>(k)], s, with_derivative);
}

double residue_log_trace(const ClosedModel& model, int k) {
  const ZetaEval z = degree_zeta(model, k, 0.0, false);
  return -2.0 * (z.value.real() + model.betti[static_cast<size_t>(k)]);
}

TorsionReport residue_torsion(const ClosedModel& model, const BetaWeight& beta) {
  if (beta.size() != model.dim + 1)
    throw Error(ErrorCode::BadParameter, "beta must have n+1 = " + std::to_string(model.dim + 1) +
                                             " entries");
  TorsionReport r;
  r.model = model.name;
  r.dim = model.dim;
  r.rank = model.rank;
  r.beta = beta;
  r.classification = classify_beta(beta);
  r.euler = euler_characteristics(model.betti);
  std::vector<double> res;
  for (int k = 0; k <= model.dim; ++k) {
    const ZetaEval z = degree_zeta(model, k, 0.0, true);
    DegreeTerms d;
    d.degree = k;
    d.betti = model.betti[static_cast<size_t>(k)];
    d.zeta0 = z.value.real();
    d.zeta0_error = z.abs_error;
    d.zeta_prime0 = z.derivative->real();
    d.zeta_prime0_error = z.derivative_abs_error;
    d.residue = -2.0 * (d.zeta0 + d.betti);
    r.degrees.push_back(d);
    res.push_back(d.residue);
    r.log_analytic_torsion += 0.5 * sign(k) * beta[k] * d.zeta_prime0;
    r.error_bound += std::abs(beta[k]) * (d.zeta0_error + 0.5 * d.zeta_prime0_error);
  }
  r.log_residue_torsion = generalized_log_torsion(res, beta);
  if (model.dim % 2 == 1) {
    r.has_expected = true;
    r.expected_residue = 0.0;
  } else if (r.classification.satisfies_recurrence) {
    r.has_expected = true;
    r.expected_residue = r.classification.lambda * r.euler.chi +
                         r.classification.mu * 0.5 * model.dim * r.euler.chi;
  }
  return r;
}

TorsionReport analytic_torsion(const ClosedModel& model, const BetaWeight& beta, bool require_acyclic) {
  if (require_acyclic) {
    for (int k = 0; k <= model.dim; ++k)
      if (model.betti[static_cast<size_t>(k)] != 0)
        throw Error(ErrorCode::NotAcyclic,
                    model.name + " has harmonic forms in degree " + std::to_string(k));
  }
  return residue_torsion(model, beta);
}

double surface_combination(const ClosedModel& model) {
  if (model.dim != 2) throw Error(ErrorCode::BadParameter, "surface combination needs dimension 2");
  return 0.5 * residue_log_trace(model, 0) - residue_log_trace(model, 1) +
         1.5 * residue_log_trace(model, 2);
}

bool IdentityReport::all_passed() const {
  for (const IdentityCheck& c : checks)
    if (!c.passed) return false;
  return true;
}

IdentityReport identity_suite(const ClosedModel& model, const std::vector<double>& points,
                              double tolerance) {
  IdentityReport rep;
  rep.model = model.name;
  rep.tolerance = tolerance;
  const int n = model.dim;
  auto add = [&](const std::string& name, double s, double lhs, double rhs) {
    IdentityCheck c;
    c.name = name;
    c.s = s;
    c.lhs = lhs;
    c.rhs = rhs;
    c.discrepancy = std::abs(lhs - rhs);
    c.passed = c.discrepancy <= tolerance;
    rep.checks.push_back(c);
  };
  for (double s : points) {
    std::vector<double> z;
    for (int k = 0; k <= n; ++k) z.push_back(degree_zeta(model, k, s, false).value.real());
    for (int k = 0; 2 * k < n; ++k)
      add("duality k=" + std::to_string(k), s, z[static_cast<size_t>(k)],
          z[static_cast<size_t>(n - k)]);
    double alt = 0.0, weighted = 0.0;
    for (int k = 0; k <= n; ++k) {
      alt += sign(k) * z[static_cast<size_t>(k)];
      weighted += sign(k) * k * z[static_cast<size_t>(k)];
    }
    if (n % 2 == 1) {
      add("alternating sum (odd)", s, alt, 0.0);
    } else {
      add("weighted alternating sum", s, weighted, 0.0);
      add("alternating sum (even)", s, alt, 0.0);
      add("half-dimension relation", s, 0.5 * n * alt, weighted);
    }
  }
  for (double t : {0.05, 0.5, 2.0}) {
    for (int k = 0; 2 * k < n; ++k) {
      const HeatTrace& a = model.traces[static_cast<size_t>(k)];
      const HeatTrace& b = model.traces[static_cast<size_t>(n - k)];
      add("heat trace duality k=" + std::to_string(k) + " t", t, a.trace(t), b.trace(t));
    }
  }
  return rep;
}

}  // namespace torsionlab
