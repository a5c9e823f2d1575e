#pragma once

#include "torsionlab/heat_trace.hpp"
#include "torsionlab/torsion.hpp"
#include "torsionlab/zeta.hpp"

#include <string>
#include <vector>

namespace torsionlab {

enum class ClosedKind { Circle, Torus, Sphere2, Point };

struct ClosedModelSpec {
  ClosedKind kind = ClosedKind::Circle;
  double length = 6.283185307179586;  // circle circumference / torus side
  double theta = 0.0;                 // circle character angle
  int rank = 1;
  int dim = 2;  // torus dimension
};

/// Hodge Laplacians of a closed model on forms of every degree.
struct ClosedModel {
  std::string name;
  int dim = 0;
  int rank = 1;
  std::vector<HeatTrace> traces;  // degree k
  std::vector<int> betti;

  int degrees() const { return dim + 1; }
};

ClosedKind parse_closed_kind(const std::string& name);
const char* closed_kind_name(ClosedKind kind);

/// circle(L, θ, rank): rank copies of ((2πm+θ)/L)², rank 1 only for θ ∈ {0, π},
///   even rank as rotation blocks; degrees 0 and 1 identical.
/// torus(n, L): degree k is C(n,k) copies of the flat scalar spectrum.
/// sphere2: exact/coexact splitting of the scalar spectrum l(l+1),
///   degree 1 = 2 × (scalar minus kernel), degree 2 = degree 0, b = (1,0,1).
/// point: one zero mode.
ClosedModel build_model(const ClosedModelSpec& spec);

/// ζ_k(s) of one degree.
ZetaEval degree_zeta(const ClosedModel& model, int k, std::complex<double> s, bool with_derivative);

/// res(log Δ_k) = -2 (ζ_k(0) + b_k).
double residue_log_trace(const ClosedModel& model, int k);

struct DegreeTerms {
  int degree = 0;
  int betti = 0;
  double zeta0 = 0.0;
  double zeta0_error = 0.0;
  double zeta_prime0 = 0.0;
  double zeta_prime0_error = 0.0;
  double residue = 0.0;
};

struct TorsionReport {
  std::string model;
  int dim = 0;
  int rank = 0;
  BetaWeight beta;
  BetaClassification classification;
  std::vector<DegreeTerms> degrees;
  EulerCharacteristics euler;
  double log_residue_torsion = 0.0;   // ½ Σ (-1)^{k+1} β_k res_k
  double log_analytic_torsion = 0.0;  // ½ Σ (-1)^k β_k ζ'_k(0)
  /// λ·χ + μ·(n/2)χ for β = λ + μk in even dimension, 0 in odd dimension.
  bool has_expected = false;
  double expected_residue = 0.0;
  double error_bound = 0.0;
};

TorsionReport residue_torsion(const ClosedModel& model, const BetaWeight& beta);

/// Same report; with `require_acyclic` the model must have no harmonic forms.
TorsionReport analytic_torsion(const ClosedModel& model, const BetaWeight& beta,
                               bool require_acyclic = false);

/// ½ res₀ - res₁ + (3/2) res₂ on a surface.
double surface_combination(const ClosedModel& model);

struct IdentityCheck {
  std::string name;
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double discrepancy = 0.0;
  bool passed = false;
};

struct IdentityReport {
  std::string model;
  double tolerance = 0.0;
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Duality ζ_k = ζ_{n-k}; odd n: Σ(-1)^k ζ_k = 0; even n: Σ(-1)^k k ζ_k = 0,
/// Σ(-1)^k ζ_k = 0 and (n/2)Σ(-1)^k ζ_k = Σ(-1)^k k ζ_k; heat-trace duality.
IdentityReport identity_suite(const ClosedModel& model, const std::vector<double>& points = {0.0, 0.75, 2.0},
                              double tolerance = 1e-8);

}  // namespace torsionlab
