#pragma once

#include <functional>
#include <string>
#include <vector>

namespace torsionlab {

/// c · t^{-power} in a small-time heat expansion.
struct HeatTerm {
  double power = 0.0;
  double coeff = 0.0;
};

/// Heat trace Tr e^{-tΔ} of a Laplacian-type operator, split the way the
/// Mellin continuation consumes it:
///
///   Tr e^{-tΔ} = Σ c_p t^{-p} + remainder(t)     for 0 < t ≤ 1,
///   Tr e^{-tΔ} = kernel_dim + tail(t)            for t ≥ 1.
///
/// For the theta-function factors the remainder is exponentially small and is
/// evaluated from image sums, independently of the eigenvalue tail.
struct HeatTrace {
  std::string label;
  std::vector<HeatTerm> small_t;  // sorted by decreasing power, merged
  std::function<double(double)> tail;
  std::function<double(double)> remainder;
  int kernel_dim = 0;
  /// Below this time the remainder is treated as zero (0 when it is computed
  /// all the way down); `remainder_bound` bounds its integral over (0, cutoff].
  double remainder_cutoff = 0.0;
  double remainder_bound = 0.0;
  bool exponential_remainder = true;

  double expansion(double t) const;
  /// Full trace (kernel included) from the tail side.
  double trace(double t) const { return kernel_dim + tail(t); }
  /// |tail + kernel - expansion - remainder| at t; the theta-identity check.
  double consistency_residual(double t) const;
  double coefficient(double power) const;
};

enum class FactorKind { Circle, Dirichlet, Neumann, Mixed, Lattice };

struct FactorSpec {
  FactorKind kind = FactorKind::Circle;
  double length = 1.0;  // L for circle/lattice, R for interval factors
  double theta = 0.0;   // circle holonomy angle
  int dim = 1;          // lattice dimension
};

/// Small-t expansion, image-sum remainder and eigenvalue tail for the 1-d
/// model factors:
///   circle(L, θ):  eigenvalues ((2πm + θ)/L)², m ∈ Z        L/√(4πt)
///   dirichlet(R):  (mπ/R)², m ≥ 1                           R/√(4πt) - ½
///   neumann(R):    (mπ/R)², m ≥ 0                           R/√(4πt) + ½
///   mixed(R):      ((m+½)π/R)², m ≥ 0                       R/√(4πt)
///   lattice(n, L): flat n-torus of side L                   (L/√(4πt))ⁿ
HeatTrace theta_expansion(const FactorSpec& factor);

/// Scalar Laplacian on the round unit 2-sphere, eigenvalues l(l+1) with
/// multiplicity 2l+1; asymptotic expansion through t^16.
HeatTrace sphere2_scalar_heat_trace();

/// Spectrum of Δ₁ ⊗ 1 + 1 ⊗ Δ₂: traces multiply, expansions multiply as series.
HeatTrace product_heat_trace(const HeatTrace& first, const HeatTrace& second);

/// Direct sum of operators.
HeatTrace sum_heat_trace(const HeatTrace& first, const HeatTrace& second);

/// Multiplicity `factor` copies.
HeatTrace scale_heat_trace(const HeatTrace& h, int factor);

/// Same nonzero spectrum with the kernel removed.
HeatTrace drop_kernel(const HeatTrace& h);

}  // namespace torsionlab
