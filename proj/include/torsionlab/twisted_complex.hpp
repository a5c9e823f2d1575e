#pragma once

#include "torsionlab/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace torsionlab {

struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1
};

/// Element of the free group on the generators, read left to right.
using GroupWord = std::vector<Letter>;

/// Orthogonal representation of a finitely generated group, given by the
/// images of the generators.
class Representation {
 public:
  Representation(int rank, std::vector<Matrix> generator_images);

  /// Trivial representation of the given rank on `generators` generators.
  static Representation trivial(int rank, int generators);

  int rank() const { return rank_; }
  int generator_count() const { return static_cast<int>(images_.size()); }
  const std::vector<Matrix>& generator_images() const { return images_; }

  /// Product of generator images (transposes for inverse letters).
  Matrix evaluate(const GroupWord& word) const;

 private:
  int rank_;
  std::vector<Matrix> images_;
};

struct Incidence {
  int cell = 0;  // index of the target (k-1)-cell
  double coeff = 1.0;
  GroupWord word;
};

/// CW data of the universal cover: every k-cell lists its boundary as a
/// group-ring combination of (k-1)-cells.
struct CellStructure {
  int dimension = 0;
  std::vector<int> cells_per_degree;
  /// incidences[k][i] = boundary of the i-th k-cell; incidences[0] is empty lists.
  std::vector<std::vector<std::vector<Incidence>>> incidences;

  int cells(int k) const { return cells_per_degree.at(static_cast<size_t>(k)); }
};

/// Finite chain complex C_k ⊗ Rⁿ with real boundary matrices
/// ∂_k : C_k → C_{k-1} of shape (n·c_{k-1}) × (n·c_k).
class TwistedComplex {
 public:
  /// Checks shapes and ∂∂ = 0; throws ShapeMismatch / NonChainComplex.
  TwistedComplex(int rank, std::vector<int> cells_per_degree, std::vector<Matrix> boundaries);

  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  int rank() const { return rank_; }
  int cells(int k) const { return cells_.at(static_cast<size_t>(k)); }
  const std::vector<int>& cells_per_degree() const { return cells_; }

  /// Dimension of C_k ⊗ Rⁿ; zero outside 0..n.
  int chain_dim(int k) const;

  /// ∂_k for k in 1..n; zero-size matrices at the ends of the complex.
  Matrix boundary(int k) const;

  /// Coboundary d_k = ∂_{k+1}ᵀ : C_k → C_{k+1}.
  Matrix coboundary(int k) const { return boundary(k + 1).transpose(); }

 private:
  int rank_;
  std::vector<int> cells_;
  std::vector<Matrix> boundary_;  // boundary_[k], k = 0..n; boundary_[0] has no rows
};

TwistedComplex build_twisted_boundary(const CellStructure& cells, const Representation& rho);

struct ValidationReport {
  int rank = 0;
  std::vector<int> chain_dims;
  bool shapes_chain = true;
  /// residual[k] = max_ij |(∂_{k-1}∂_k)_ij| for k = 2..n; entries 0,1 are 0.
  std::vector<double> residual;
  std::vector<double> tolerance;
  std::vector<int> flagged_degrees;
  double max_residual = 0.0;

  bool ok() const { return shapes_chain && flagged_degrees.empty(); }
};

ValidationReport validate(const TwistedComplex& complex);
/// Report-only check of raw boundary data that need not form a complex.
ValidationReport validate(int rank, const std::vector<int>& cells_per_degree,
                          const std::vector<Matrix>& boundaries);

enum class PresetKind { Circle, Torus2, Interval, Point };

struct PresetSpec {
  PresetKind kind = PresetKind::Circle;
  double theta = 1.0;  // circle holonomy
  double alpha = 1.0;  // torus holonomies
  double beta = 0.3;
  int rank = 2;
  /// Permit angle 0 (trivial holonomy), which makes circle/torus non-acyclic.
  bool allow_non_acyclic = false;
};

PresetKind parse_preset_kind(const std::string& name);
const char* preset_kind_name(PresetKind kind);

std::pair<CellStructure, Representation> preset(const PresetSpec& spec);

/// Parse the JSON interchange format for (cells, representation).
std::pair<CellStructure, Representation> parse_complex_json(const std::string& text);
std::string complex_to_json(const CellStructure& cells, const Representation& rho);

/// 2×2 rotation by `angle`.
Matrix rotation2(double angle);

}  // namespace torsionlab
