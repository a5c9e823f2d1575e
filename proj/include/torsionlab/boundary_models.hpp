#pragma once

#include "torsionlab/spectral_models.hpp"

#include <string>
#include <vector>

namespace torsionlab {

enum class EndCondition { Relative, Absolute };

/// Conditions at the two ends of [0, R].
struct BoundaryCondition {
  EndCondition left = EndCondition::Relative;
  EndCondition right = EndCondition::Relative;

  static BoundaryCondition relative() { return {EndCondition::Relative, EndCondition::Relative}; }
  static BoundaryCondition absolute() { return {EndCondition::Absolute, EndCondition::Absolute}; }
  bool mixed() const { return left != right; }
  BoundaryCondition dual() const;  // R ↔ A at both ends
  std::string name() const;
};

/// `relative` | `absolute` | `mixed` (relative at the left end) | `mixed-right`.
BoundaryCondition parse_boundary_condition(const std::string& name);

enum class BoundaryGeometry { Interval, Cylinder };

BoundaryGeometry parse_boundary_geometry(const std::string& name);

struct BoundaryModel {
  std::string name;
  BoundaryGeometry geometry = BoundaryGeometry::Interval;
  BoundaryCondition condition;
  int dim = 1;
  int rank = 1;
  double length = 1.0;  // R
  double circle = 0.0;  // L (cylinder only)
  std::vector<HeatTrace> traces;
  std::vector<int> betti;
  double chi = 0.0;
  double chi_derived = 0.0;
};

/// Functions: relative end → Dirichlet, absolute → Neumann.
/// f dx: relative end → Neumann, absolute → Dirichlet.
/// `rank` copies of every spectrum.
BoundaryModel build_interval(double length, const BoundaryCondition& condition, int rank = 1);

/// [0, R] × S¹_L. Degree 0 = f₀ ⊗ circle, degree 1 = (f₁ ⊕ f₀) ⊗ circle,
/// degree 2 = f₁ ⊗ circle with f₀, f₁ the interval rules above.
BoundaryModel build_cylinder(double length, double circle, const BoundaryCondition& condition,
                             int rank = 1);

ZetaEval boundary_degree_zeta(const BoundaryModel& model, int k, std::complex<double> s,
                              bool with_derivative);

struct BoundaryTorsionReport {
  std::string model;
  int dim = 0;
  int rank = 0;
  BetaWeight beta;
  BetaClassification classification;
  std::vector<DegreeTerms> degrees;
  double chi = 0.0;
  double chi_derived = 0.0;
  double log_residue_torsion = 0.0;  // ½ Σ (-1)^{k+1} β_k res_k
  double weighted_zeta_sum = 0.0;    // Σ (-1)^k k ζ_k(0)
  double alternating_zeta_sum = 0.0; // Σ (-1)^k ζ_k(0)
  /// β = k two ways: χ' + Σ(-1)^k k ζ_k(0) against ½ n χ.
  double weighted_assembly = 0.0;
  double weighted_closed_form = 0.0;
  /// β = 1: χ + Σ(-1)^k ζ_k(0) against χ.
  double unweighted_assembly = 0.0;
  double unweighted_closed_form = 0.0;
  bool has_expected = false;
  double expected_residue = 0.0;
};

BoundaryTorsionReport boundary_residue_torsion(const BoundaryModel& model, const BetaWeight& beta);

/// Duality ζ_{k,R} = ζ_{n-k,A}; Σ(-1)^k k ζ_{k,R} = (-1)^{n-1} Σ(-1)^k k ζ_{k,A};
/// Σ(-1)^k ζ_{k,B} = 0 for both conditions.
IdentityReport duality_check(const BoundaryModel& relative_side, const BoundaryModel& absolute_side,
                                 const std::vector<double>& points = {0.0, 0.75, 2.0},
                                 double tolerance = 1e-8);

struct GluingSpec {
  BoundaryGeometry geometry = BoundaryGeometry::Interval;
  double length = 1.0;
  double circle = 6.283185307179586;
  double split = 0.5;  // cut at x = split
  BoundaryCondition outer = BoundaryCondition::absolute();
  int rank = 1;
};

struct GluingReport {
  std::string geometry;
  std::string outer;
  double split = 0.0;
  double whole = 0.0;        // log T^{res,k} of X
  double first = 0.0;        // X₁, relative on the cut
  double second = 0.0;       // X₂, relative on the cut
  double interface = 0.0;    // log T^{res,k} of Y
  double half_chi_interface = 0.0;
  double rhs = 0.0;
  double discrepancy = 0.0;
  bool passed = false;
};

/// X = X₁ ∪_Y X₂ with β = k; throws UnsupportedPartition for a degenerate cut.
GluingReport gluing_check(const GluingSpec& spec, double tolerance = 1e-8);

}  // namespace torsionlab
