#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <functional>

namespace ncbohr::linalg {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cxd>;

Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& a, double tol = 1e-12);
Matrix hermitian_part(const Matrix& a);

/// Extreme eigenvalues of a Hermitian matrix (input symmetrized). Dense
/// below `lanczos_threshold()`, Lanczos with full reorthogonalization above.
double min_eigenvalue(const Matrix& herm);
double max_eigenvalue(const Matrix& herm);

/// Largest eigenvalue of a Hermitian operator given only its matvec.
double lanczos_max_eigenvalue(const std::function<void(const Vector&, Vector&)>& matvec,
                              Eigen::Index dim, double tol = 1e-11, int max_iter = 300);

/// Operator (spectral) norm.
double operator_norm(const Matrix& a);
double operator_norm(const SparseMatrix& a);

/// PSD square root with negative eigenvalues clamped to zero.
Matrix psd_sqrt(const Matrix& herm);

/// Hermitian inverse (throws if any eigenvalue has modulus < tol).
Matrix hermitian_inverse(const Matrix& herm, double tol = 1e-12);

Eigen::Index lanczos_threshold();

/// max(1, max row sum of absolute values); the scale used by PSD verdicts.
double inf_norm_scale(const Matrix& a);

}  // namespace ncbohr::linalg
