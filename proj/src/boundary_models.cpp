#include "torsionlab/boundary_models.hpp"

#include "torsionlab/errors.hpp"

#include <cmath>

namespace torsionlab {

namespace {

double sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

/// Scalar spectrum on [0, R] from the two end rules (true = Dirichlet).
HeatTrace interval_factor(double length, bool dirichlet_left, bool dirichlet_right) {
  if (dirichlet_left && dirichlet_right) return theta_expansion({FactorKind::Dirichlet, length, 0.0, 1});
  if (!dirichlet_left && !dirichlet_right) return theta_expansion({FactorKind::Neumann, length, 0.0, 1});
  return theta_expansion({FactorKind::Mixed, length, 0.0, 1});
}

/// Component rule: functions and tangential parts are Dirichlet at relative
/// ends, normal parts are Dirichlet at absolute ends.
HeatTrace function_part(double length, const BoundaryCondition& c) {
  return interval_factor(length, c.left == EndCondition::Relative, c.right == EndCondition::Relative);
}

HeatTrace normal_part(double length, const BoundaryCondition& c) {
  return interval_factor(length, c.left == EndCondition::Absolute, c.right == EndCondition::Absolute);
}

void finish(BoundaryModel& m) {
  m.chi = 0.0;
  m.chi_derived = 0.0;
  m.betti.clear();
  for (int k = 0; k <= m.dim; ++k) {
    const int b = m.traces[static_cast<size_t>(k)].kernel_dim;
    m.betti.push_back(b);
    m.chi += sign(k) * b;
    m.chi_derived += sign(k) * k * b;
  }
}

std::vector<double> zeta_values(const BoundaryModel& m, double s) {
  std::vector<double> z;
  for (int k = 0; k <= m.dim; ++k) z.push_back(boundary_degree_zeta(m, k, s, false).value.real());
  return z;
}

}  // namespace

BoundaryCondition BoundaryCondition::dual() const {
  auto flip = [](EndCondition e) {
    return e == EndCondition::Relative ? EndCondition::Absolute : EndCondition::Relative;
  };
  return {flip(left), flip(right)};
}

std::string BoundaryCondition::name() const {
  if (!mixed()) return left == EndCondition::Relative ? "relative" : "absolute";
  return left == EndCondition::Relative ? "mixed" : "mixed-right";
}

BoundaryCondition parse_boundary_condition(const std::string& name) {
  if (name == "relative" || name == "R") return BoundaryCondition::relative();
  if (name == "absolute" || name == "A") return BoundaryCondition::absolute();
  if (name == "mixed") return {EndCondition::Relative, EndCondition::Absolute};
  if (name == "mixed-right") return {EndCondition::Absolute, EndCondition::Relative};
  throw Error(ErrorCode::ParseError, "unknown boundary condition '" + name + "'");
}

BoundaryGeometry parse_boundary_geometry(const std::string& name) {
  if (name == "interval") return BoundaryGeometry::Interval;
  if (name == "cylinder") return BoundaryGeometry::Cylinder;
  throw Error(ErrorCode::ParseError, "unknown boundary geometry '" + name + "'");
}

BoundaryModel build_interval(double length, const BoundaryCondition& condition, int rank) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error(ErrorCode::BadParameter, "interval length must be positive");
  if (rank < 1) throw Error(ErrorCode::BadParameter, "rank must be >= 1");
  BoundaryModel m;
  m.name = "interval";
  m.geometry = BoundaryGeometry::Interval;
  m.condition = condition;
  m.dim = 1;
  m.rank = rank;
  m.length = length;
  m.traces = {scale_heat_trace(function_part(length, condition), rank),
              scale_heat_trace(normal_part(length, condition), rank)};
  finish(m);
  return m;
}

BoundaryModel build_cylinder(double length, double circle, const BoundaryCondition& condition,
                             int rank) {
  if (!(length > 0.0) || !(circle > 0.0) || !std::isfinite(length) || !std::isfinite(circle))
    throw Error(ErrorCode::BadParameter, "cylinder dimensions must be positive");
  if (rank < 1) throw Error(ErrorCode::BadParameter, "rank must be >= 1");
  BoundaryModel m;
  m.name = "cylinder";
  m.geometry = BoundaryGeometry::Cylinder;
  m.condition = condition;
  m.dim = 2;
  m.rank = rank;
  m.length = length;
  m.circle = circle;
  const HeatTrace s1 = theta_expansion({FactorKind::Circle, circle, 0.0, 1});
  const HeatTrace f0 = product_heat_trace(function_part(length, condition), s1);
  const HeatTrace f1 = product_heat_trace(normal_part(length, condition), s1);
  m.traces = {scale_heat_trace(f0, rank), scale_heat_trace(sum_heat_trace(f1, f0), rank),
              scale_heat_trace(f1, rank)};
  finish(m);
  return m;
}

ZetaEval boundary_degree_zeta(const BoundaryModel& model, int k, std::complex<double> s,
                              bool with_derivative) {
  if (k < 0 || k > model.dim) throw Error(ErrorCode::BadParameter, "degree out of range");
  return mellin_zeta(model.traces[static_cast<size_t>(k)], s, with_derivative);
}

BoundaryTorsionReport boundary_residue_torsion(const BoundaryModel& model, const BetaWeight& beta) {
  if (beta.size() != model.dim + 1)
    throw Error(ErrorCode::BadParameter, "beta must have n+1 = " + std::to_string(model.dim + 1) +
                                             " entries");
  BoundaryTorsionReport r;
  r.model = model.name + "/" + model.condition.name();
  r.dim = model.dim;
  r.rank = model.rank;
  r.beta = beta;
  r.classification = classify_beta(beta);
  r.chi = model.chi;
  r.chi_derived = model.chi_derived;
  std::vector<double> res;
  for (int k = 0; k <= model.dim; ++k) {
    const ZetaEval z = boundary_degree_zeta(model, k, 0.0, true);
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
    r.weighted_zeta_sum += sign(k) * k * d.zeta0;
    r.alternating_zeta_sum += sign(k) * d.zeta0;
  }
  r.log_residue_torsion = generalized_log_torsion(res, beta);
  r.weighted_assembly = r.chi_derived + r.weighted_zeta_sum;
  r.weighted_closed_form = 0.5 * model.dim * r.chi;
  r.unweighted_assembly = r.chi + r.alternating_zeta_sum;
  r.unweighted_closed_form = r.chi;
  if (r.classification.satisfies_recurrence) {
    r.has_expected = true;
    r.expected_residue = r.classification.lambda * r.unweighted_closed_form +
                         r.classification.mu * r.weighted_closed_form;
  }
  return r;
}

IdentityReport duality_check(const BoundaryModel& rel, const BoundaryModel& abs,
                                 const std::vector<double>& points, double tolerance) {
  if (rel.geometry != abs.geometry || rel.dim != abs.dim || rel.length != abs.length ||
      rel.circle != abs.circle || rel.rank != abs.rank)
    throw Error(ErrorCode::BadParameter, "duality check needs one geometry under both conditions");
  if (rel.condition.name() != "relative" || abs.condition.name() != "absolute")
    throw Error(ErrorCode::BadParameter, "expected a relative and an absolute model");
  IdentityReport rep;
  rep.model = rel.name;
  rep.tolerance = tolerance;
  const int n = rel.dim;
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
    const std::vector<double> zr = zeta_values(rel, s);
    const std::vector<double> za = zeta_values(abs, s);
    for (int k = 0; k <= n; ++k)
      add("duality R" + std::to_string(k) + "=A" + std::to_string(n - k), s,
          zr[static_cast<size_t>(k)], za[static_cast<size_t>(n - k)]);
    double wr = 0.0, wa = 0.0, ar = 0.0, aa = 0.0;
    for (int k = 0; k <= n; ++k) {
      wr += sign(k) * k * zr[static_cast<size_t>(k)];
      wa += sign(k) * k * za[static_cast<size_t>(k)];
      ar += sign(k) * zr[static_cast<size_t>(k)];
      aa += sign(k) * za[static_cast<size_t>(k)];
    }
    add("weighted sign law", s, wr, sign(n - 1) * wa);
    add("alternating sum relative", s, ar, 0.0);
    add("alternating sum absolute", s, aa, 0.0);
  }
  return rep;
}

GluingReport gluing_check(const GluingSpec& spec, double tolerance) {
  if (!(spec.split > 0.0) || !(spec.split < spec.length))
    throw Error(ErrorCode::UnsupportedPartition,
                "cut must lie strictly inside (0, " + std::to_string(spec.length) + ")");
  if (spec.outer.mixed())
    throw Error(ErrorCode::UnsupportedPartition, "outer boundary must carry one condition");
  const BoundaryCondition left_piece{spec.outer.left, EndCondition::Relative};
  const BoundaryCondition right_piece{EndCondition::Relative, spec.outer.right};

  GluingReport g;
  g.outer = spec.outer.name();
  g.split = spec.split;
  auto weighted = [](const BoundaryModel& m) {
    return boundary_residue_torsion(m, BetaWeight::degree(m.dim)).log_residue_torsion;
  };
  ClosedModel interface;
  if (spec.geometry == BoundaryGeometry::Interval) {
    g.geometry = "interval";
    g.whole = weighted(build_interval(spec.length, spec.outer, spec.rank));
    g.first = weighted(build_interval(spec.split, left_piece, spec.rank));
    g.second = weighted(build_interval(spec.length - spec.split, right_piece, spec.rank));
    interface = build_model({ClosedKind::Point, 1.0, 0.0, 1, 0});
    if (spec.rank != 1) {
      interface.rank = spec.rank;
      interface.traces[0] = scale_heat_trace(interface.traces[0], spec.rank);
      interface.betti[0] = spec.rank;
    }
  } else {
    g.geometry = "cylinder";
    g.whole = weighted(build_cylinder(spec.length, spec.circle, spec.outer, spec.rank));
    g.first = weighted(build_cylinder(spec.split, spec.circle, left_piece, spec.rank));
    g.second = weighted(build_cylinder(spec.length - spec.split, spec.circle, right_piece, spec.rank));
    interface = build_model({ClosedKind::Circle, spec.circle, 0.0, spec.rank, 1});
  }
  const TorsionReport y = residue_torsion(interface, BetaWeight::degree(interface.dim));
  g.interface = y.log_residue_torsion;
  g.half_chi_interface = 0.5 * y.euler.chi;
  g.rhs = g.first + g.second + g.interface + g.half_chi_interface;
  g.discrepancy = std::abs(g.whole - g.rhs);
  g.passed = g.discrepancy <= tolerance;
  return g;
}

}  // namespace torsionlab
