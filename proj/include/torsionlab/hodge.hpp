#pragma once

#include "torsionlab/linalg.hpp"
#include "torsionlab/twisted_complex.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace torsionlab {

/// Inner products on the chain groups, one SPD matrix per degree.
class ChainMetric {
 public:
  explicit ChainMetric(std::vector<Matrix> per_degree);

  static ChainMetric identity(const TwistedComplex& complex);
  /// h_k = scale[k]·I.
  static ChainMetric scaled(const TwistedComplex& complex, const std::vector<double>& scale);
  /// h_k = exp(S_k) for random symmetric S_k with entries of size `spread`.
  static ChainMetric random(const TwistedComplex& complex, std::uint64_t seed, double spread = 0.5);

  int degrees() const { return static_cast<int>(h_.size()); }
  const Matrix& operator[](int k) const { return h_.at(static_cast<size_t>(k)); }
  const std::vector<Matrix>& matrices() const { return h_; }

  /// True when every h_k is exactly the identity.
  bool is_identity() const;

 private:
  std::vector<Matrix> h_;
};

/// Adjoint δ_k = h_k⁻¹ d_kᵀ h_{k+1} : C_{k+1} → C_k of the coboundary d_k.
Matrix codifferential(const TwistedComplex& complex, const ChainMetric& metric, int k);

/// Δ_k = δ_k d_k + d_{k-1} δ_{k-1}.
Matrix laplacian(const TwistedComplex& complex, const ChainMetric& metric, int k);

struct SpectralData {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // columns, orthonormal in the metric h
  Matrix metric;        // h used to build the decomposition
  int kernel_dim = 0;
  double kernel_threshold = 0.0;

  /// Inverse of the eigenvector matrix, Vᵀh.
  Matrix coordinates() const { return eigenvectors.transpose() * metric; }
};

/// Eigendecomposition of an h-self-adjoint PSD operator via the symmetrized
/// matrix h^{1/2} Δ h^{-1/2}. Kernel threshold 1e-9·max(1, λ_max).
SpectralData eigendecompose(const Matrix& op, const Matrix& metric);
SpectralData eigendecompose(const Matrix& op);

/// Δ^z on the nonzero spectrum, 0 on the kernel.
ComplexMatrix complex_power(const SpectralData& spec, std::complex<double> z);

/// log Δ on the nonzero spectrum, 0 on the kernel.
Matrix log_op(const SpectralData& spec);

/// Σ_{λ>0} log λ. In strict mode a nonzero kernel throws NotInvertible.
double tr_log(const SpectralData& spec, bool strict = true);

/// Kernel projector Π (h-orthogonal).
Matrix kernel_projector(const SpectralData& spec);

std::vector<int> betti(const TwistedComplex& complex, const ChainMetric& metric);

struct EigenspaceSplit {
  int degree = 0;
  double lambda = 0.0;
  int multiplicity = 0;
  int f_mult = 0;  // closed part, image of d_{k-1}
  int g_mult = 0;  // coclosed part, image of δ_k
  Matrix basis;          // h-orthonormal basis of the eigenspace (columns)
  Matrix closed_proj;    // Λ' = d δ / λ on C_k
  Matrix coclosed_proj;  // Λ'' = δ d / λ on C_k
  Matrix closed_restricted;    // Λ' in eigenspace coordinates
  Matrix coclosed_restricted;  // Λ'' in eigenspace coordinates
};

/// Splitting of the λ-eigenspace of Δ_k into closed and coclosed parts.
/// λ is matched to the spectrum with relative tolerance 1e-7.
EigenspaceSplit hodge_split(const TwistedComplex& complex, const ChainMetric& metric, int k,
                            double lambda);

}  // namespace torsionlab
