#include "torsionlab/hodge.hpp"

#include "torsionlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace torsionlab {

namespace {

void check_metric_shape(const TwistedComplex& complex, const ChainMetric& metric) {
  if (metric.degrees() != complex.dimension() + 1)
    throw Error(ErrorCode::ShapeMismatch, "metric degree count does not match the complex");
  for (int k = 0; k <= complex.dimension(); ++k)
    if (metric[k].rows() != complex.chain_dim(k))
      throw Error(ErrorCode::ShapeMismatch,
                  "metric at degree " + std::to_string(k) + " has the wrong size");
}

/// h_k, with empty matrices outside the complex.
Matrix metric_at(const TwistedComplex& complex, const ChainMetric& metric, int k) {
  if (k < 0 || k > complex.dimension()) return Matrix(0, 0);
  return metric[k];
}

}  // namespace

ChainMetric::ChainMetric(std::vector<Matrix> per_degree) : h_(std::move(per_degree)) {
  for (size_t k = 0; k < h_.size(); ++k) {
    const Matrix& h = h_[k];
    if (h.rows() != h.cols())
      throw Error(ErrorCode::ShapeMismatch, "metric matrices must be square");
    if (h.size() == 0) continue;
    if (max_abs(h - h.transpose()) > 1e-12 * std::max(1.0, max_abs(h)))
      throw Error(ErrorCode::BadParameter, "metric at degree " + std::to_string(k) +
                                               " is not symmetric");
    if (jacobi_eigen(h).values(0) <= 0.0)
      throw Error(ErrorCode::BadParameter, "metric at degree " + std::to_string(k) +
                                               " is not positive definite");
  }
}

ChainMetric ChainMetric::identity(const TwistedComplex& complex) {
  std::vector<Matrix> h;
  for (int k = 0; k <= complex.dimension(); ++k)
    h.push_back(Matrix::Identity(complex.chain_dim(k), complex.chain_dim(k)));
  return ChainMetric(std::move(h));
}

ChainMetric ChainMetric::scaled(const TwistedComplex& complex, const std::vector<double>& scale) {
  if (scale.size() != static_cast<size_t>(complex.dimension() + 1))
    throw Error(ErrorCode::ShapeMismatch, "one scale per degree expected");
  std::vector<Matrix> h;
  for (int k = 0; k <= complex.dimension(); ++k)
    h.push_back(scale[static_cast<size_t>(k)] *
                Matrix::Identity(complex.chain_dim(k), complex.chain_dim(k)));
  return ChainMetric(std::move(h));
}

ChainMetric ChainMetric::random(const TwistedComplex& complex, std::uint64_t seed, double spread) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-spread, spread);
  std::vector<Matrix> h;
  for (int k = 0; k <= complex.dimension(); ++k) {
    const int m = complex.chain_dim(k);
    Matrix s(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) s(i, j) = s(j, i) = unif(rng);
    h.push_back(symmetric_exp(s));
  }
  return ChainMetric(std::move(h));
}

bool ChainMetric::is_identity() const {
  return std::all_of(h_.begin(), h_.end(), [](const Matrix& h) {
    return h.size() == 0 || h == Matrix::Identity(h.rows(), h.cols());
  });
}

Matrix codifferential(const TwistedComplex& complex, const ChainMetric& metric, int k) {
  check_metric_shape(complex, metric);
  const Matrix d = complex.coboundary(k);  // C_k -> C_{k+1}
  if (d.size() == 0) return Matrix::Zero(d.cols(), d.rows());
  const Matrix hk = metric_at(complex, metric, k);
  const Matrix hk1 = metric_at(complex, metric, k + 1);
  return hk.ldlt().solve(d.transpose() * hk1);
}

Matrix laplacian(const TwistedComplex& complex, const ChainMetric& metric, int k) {
  check_metric_shape(complex, metric);
  if (k < 0 || k > complex.dimension())
    throw Error(ErrorCode::ShapeMismatch, "degree out of range");
  const int m = complex.chain_dim(k);
  Matrix lap = Matrix::Zero(m, m);
  const Matrix d_up = complex.coboundary(k);
  if (d_up.size() != 0) lap += codifferential(complex, metric, k) * d_up;
  const Matrix d_down = complex.coboundary(k - 1);
  if (d_down.size() != 0) lap += d_down * codifferential(complex, metric, k - 1);
  return lap;
}

SpectralData eigendecompose(const Matrix& op, const Matrix& metric) {
  if (op.rows() != op.cols() || metric.rows() != op.rows() || metric.cols() != op.cols())
    throw Error(ErrorCode::ShapeMismatch, "operator and metric shapes differ");
  SpectralData out;
  out.metric = metric;
  if (op.size() == 0) {
    out.eigenvalues = Vector(0);
    out.eigenvectors = Matrix(0, 0);
    return out;
  }
  const bool plain = metric == Matrix::Identity(metric.rows(), metric.cols());
  SymmetricEigen eig;
  if (plain) {
    eig = jacobi_eigen(op);
    out.eigenvectors = eig.vectors;
  } else {
    const Matrix root = symmetric_sqrt(metric);
    const Matrix inv_root = symmetric_inverse_sqrt(metric);
    eig = jacobi_eigen(root * op * inv_root);
    out.eigenvectors = inv_root * eig.vectors;
  }
  out.eigenvalues = eig.values;
  const double lmax = std::max(0.0, eig.values.maxCoeff());
  out.kernel_threshold = 1e-9 * std::max(1.0, lmax);
  out.kernel_dim = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < out.kernel_threshold) {
      ++out.kernel_dim;
      out.eigenvalues(i) = 0.0;
    }
  }
  return out;
}

SpectralData eigendecompose(const Matrix& op) {
  return eigendecompose(op, Matrix::Identity(op.rows(), op.cols()));
}

ComplexMatrix complex_power(const SpectralData& spec, std::complex<double> z) {
  const Eigen::Index m = spec.eigenvalues.size();
  Eigen::VectorXcd diag(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lam = spec.eigenvalues(i);
    diag(i) = i < spec.kernel_dim ? 0.0 : std::exp(z * std::log(lam));
  }
  const ComplexMatrix v = spec.eigenvectors.cast<std::complex<double>>();
  const ComplexMatrix w = spec.coordinates().cast<std::complex<double>>();
  return v * diag.asDiagonal() * w;
}

Matrix log_op(const SpectralData& spec) {
  const Eigen::Index m = spec.eigenvalues.size();
  Vector diag(m);
  for (Eigen::Index i = 0; i < m; ++i)
    diag(i) = i < spec.kernel_dim ? 0.0 : std::log(spec.eigenvalues(i));
  return spec.eigenvectors * diag.asDiagonal() * spec.coordinates();
}

double tr_log(const SpectralData& spec, bool strict) {
  if (strict && spec.kernel_dim > 0)
    throw Error(ErrorCode::NotInvertible,
                "operator has a kernel of dimension " + std::to_string(spec.kernel_dim));
  double sum = 0.0;
  for (Eigen::Index i = spec.kernel_dim; i < spec.eigenvalues.size(); ++i)
    sum += std::log(spec.eigenvalues(i));
  return sum;
}

Matrix kernel_projector(const SpectralData& spec) {
  const Matrix v = spec.eigenvectors.leftCols(spec.kernel_dim);
  return v * v.transpose() * spec.metric;
}

std::vector<int> betti(const TwistedComplex& complex, const ChainMetric& metric) {
  std::vector<int> b;
  for (int k = 0; k <= complex.dimension(); ++k)
    b.push_back(eigendecompose(laplacian(complex, metric, k), metric[k]).kernel_dim);
  return b;
}

EigenspaceSplit hodge_split(const TwistedComplex& complex, const ChainMetric& metric, int k,
                            double lambda) {
  const SpectralData spec = eigendecompose(laplacian(complex, metric, k), metric[k]);
  if (!(lambda > spec.kernel_threshold))
    throw Error(ErrorCode::NotAnEigenvalue, "lambda must be a positive eigenvalue");

  const double tol = 1e-7 * std::max(1.0, std::abs(lambda));
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = spec.kernel_dim; i < spec.eigenvalues.size(); ++i)
    if (std::abs(spec.eigenvalues(i) - lambda) <= tol) cols.push_back(i);
  if (cols.empty())
    throw Error(ErrorCode::NotAnEigenvalue,
                std::to_string(lambda) + " is not an eigenvalue of degree " + std::to_string(k));

  EigenspaceSplit out;
  out.degree = k;
  out.lambda = lambda;
  out.multiplicity = static_cast<int>(cols.size());
  out.basis = Matrix(spec.eigenvectors.rows(), out.multiplicity);
  for (int j = 0; j < out.multiplicity; ++j)
    out.basis.col(j) = spec.eigenvectors.col(cols[static_cast<size_t>(j)]);

  const int m = complex.chain_dim(k);
  out.closed_proj = Matrix::Zero(m, m);
  out.coclosed_proj = Matrix::Zero(m, m);
  const Matrix d_down = complex.coboundary(k - 1);
  if (d_down.size() != 0)
    out.closed_proj = d_down * codifferential(complex, metric, k - 1) / lambda;
  const Matrix d_up = complex.coboundary(k);
  if (d_up.size() != 0)
    out.coclosed_proj = codifferential(complex, metric, k) * d_up / lambda;

  const Matrix to_coords = out.basis.transpose() * metric[k];
  out.closed_restricted = to_coords * out.closed_proj * out.basis;
  out.coclosed_restricted = to_coords * out.coclosed_proj * out.basis;
  out.f_mult = static_cast<int>(std::lround(out.closed_restricted.trace()));
  out.g_mult = static_cast<int>(std::lround(out.coclosed_restricted.trace()));
  return out;
}

}  // namespace torsionlab
