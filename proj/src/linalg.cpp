#include "torsionlab/linalg.hpp"

#include "torsionlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace torsionlab {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, int max_sweeps) {
  const Eigen::Index n = symmetric.rows();
  if (symmetric.cols() != n)
    throw Error(ErrorCode::ShapeMismatch, "jacobi_eigen needs a square matrix");

  Matrix a = 0.5 * (symmetric + symmetric.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

  bool converged = n <= 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-17 * scale) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > 1e-14 * scale)
    throw Error(ErrorCode::ConvergenceFailure, "Jacobi sweeps exceeded the iteration cap");

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<size_t>(i)]);
  }
  return out;
}

Matrix symmetric_function(const Matrix& symmetric, const std::function<double(double)>& f) {
  const SymmetricEigen eig = jacobi_eigen(symmetric);
  Vector fv = eig.values.unaryExpr(f);
  return eig.vectors * fv.asDiagonal() * eig.vectors.transpose();
}

Matrix symmetric_sqrt(const Matrix& spd) {
  return symmetric_function(spd, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Matrix symmetric_inverse_sqrt(const Matrix& spd) {
  return symmetric_function(spd, [](double x) { return 1.0 / std::sqrt(x); });
}

Matrix symmetric_exp(const Matrix& symmetric) {
  return symmetric_function(symmetric, [](double x) { return std::exp(x); });
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double inf_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace torsionlab
