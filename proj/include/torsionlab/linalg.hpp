#pragma once

#include <Eigen/Dense>

#include <functional>

namespace torsionlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending, eigenvectors
/// as orthonormal columns.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Cyclic Jacobi rotations until the off-diagonal mass falls below machine
/// precision. Throws ConvergenceFailure after `max_sweeps`.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, int max_sweeps = 100);

/// f applied to the spectrum of a symmetric matrix: V f(D) Vᵀ.
Matrix symmetric_function(const Matrix& symmetric, const std::function<double(double)>& f);

Matrix symmetric_sqrt(const Matrix& spd);
Matrix symmetric_inverse_sqrt(const Matrix& spd);
Matrix symmetric_exp(const Matrix& symmetric);

/// max_ij |a_ij|
double max_abs(const Matrix& a);

/// Induced infinity norm (max absolute row sum); zero for empty matrices.
double inf_norm(const Matrix& a);

}  // namespace torsionlab
