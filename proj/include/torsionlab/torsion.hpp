#pragma once

#include "torsionlab/hodge.hpp"
#include "torsionlab/twisted_complex.hpp"

#include <functional>
#include <string>
#include <vector>

namespace torsionlab {

/// Degree weights β = (β_0, ..., β_n).
struct BetaWeight {
  std::vector<double> values;

  static BetaWeight ones(int n);
  static BetaWeight degree(int n);  // β_k = k
  static BetaWeight linear(int n, double lambda, double mu);

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int k) const { return values.at(static_cast<size_t>(k)); }
};

/// β grammar: `1` | `k` | `lin:λ,μ` | comma-separated list of n+1 reals.
BetaWeight parse_beta(const std::string& spec, int n);

struct BetaClassification {
  bool satisfies_recurrence = false;
  double lambda = 0.0;
  double mu = 0.0;
  std::vector<double> residual;  // second differences β_{k+1} - 2β_k + β_{k-1}, k = 1..n-1
};

/// β ∈ span{1, k} ⇔ all second differences vanish (to 1e-12).
BetaClassification classify_beta(const BetaWeight& beta);

/// ½ Σ (-1)^{k+1} β_k t_k.
double generalized_log_torsion(const std::vector<double>& per_degree, const BetaWeight& beta);

/// ½ Σ (-1)^{k+1} k tr log Δ_k; throws NotAcyclic naming the first degree with homology.
double log_reidemeister(const TwistedComplex& complex, const ChainMetric& metric);

/// Log torsion from alternating pivot minors of the boundary matrices with
/// the cell bases. Independent of any Laplacian.
double determinant_oracle(const TwistedComplex& complex);

struct EulerCharacteristics {
  double chi = 0.0;
  double chi_derived = 0.0;  // Σ (-1)^k k b_k
};

EulerCharacteristics euler_characteristics(const std::vector<int>& betti_numbers);

/// Everything the torsion command reports for a finite complex.
struct CombinatorialReport {
  int dimension = 0;
  int rank = 0;
  BetaWeight beta;
  BetaClassification classification;
  std::vector<int> betti;
  std::vector<double> tr_log;  // per degree, nonzero spectrum
  std::vector<std::vector<double>> spectra;
  EulerCharacteristics euler;
  bool acyclic = false;
  double log_torsion = 0.0;       // β-weighted
  double log_reidemeister = 0.0;  // β = k
  double oracle = 0.0;            // pivot minors, identity metric only
  bool oracle_available = false;
};

CombinatorialReport combinatorial_report(const TwistedComplex& complex, const ChainMetric& metric,
                                         const BetaWeight& beta);

/// Smooth path u ↦ h(u) of chain metrics.
using MetricPath = std::function<ChainMetric(double)>;

struct VariationReport {
  std::vector<double> gamma;        // tr(P_k δ_k d_k α_k)
  std::vector<double> trace_alpha;  // tr(α_k), α_k = h_k⁻¹ ḣ_k
  double lhs = 0.0;                 // 2 d/du log T^{tr,β}, central difference
  double rhs = 0.0;                 // telescoped assembly
  double discrepancy = 0.0;
  double laplacian_residual = 0.0;  // four-term Δ̇ formula vs central difference
  double step = 0.0;
  double discrepancy_half_step = 0.0;
  double laplacian_residual_half_step = 0.0;
  double convergence_ratio = 0.0;   // discrepancy(step) / discrepancy(step/2)
  bool at_roundoff = false;         // discrepancy below the finite-difference noise floor
};

/// Exact finite-dimensional metric-variation identity for the trace torsion,
/// checked at `step` and `step/2`. Throws StepTooLarge if the discrepancy does
/// not shrink quadratically.
VariationReport variation_check(const TwistedComplex& complex, const MetricPath& path,
                                const BetaWeight& beta, double u0, double step = 1e-4);

/// Integer coefficient of β_i in the coefficient of γ_j, j, i = 0..n.
using CoefficientTable = std::vector<std::vector<long long>>;

/// From expanding -Σ_k (-1)^{k+1} β_k (γ_{k+1} + 2γ_k + γ_{k-1}) term by term.
CoefficientTable expanded_gamma_coefficients(int n);

/// (-1)^{j+1}(β_{j+1} - 2β_j + β_{j-1}) with β_{-1} = β_{n+1} = 0.
CoefficientTable second_difference_gamma_coefficients(int n);

}  // namespace torsionlab
