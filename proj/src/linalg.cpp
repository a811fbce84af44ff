#include "ncbohr/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ncbohr::linalg {

Eigen::Index lanczos_threshold() { return 260; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

namespace {

Eigen::VectorXd dense_eigenvalues(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(herm), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return es.eigenvalues();
}

Vector deterministic_start(Eigen::Index dim) {
  // fixed pseudo-random start so repeated runs are bit-identical
  Vector v(dim);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (Eigen::Index i = 0; i < dim; ++i) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    double re = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    double im = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
    v(i) = cxd(re, im);
  }
  v.normalize();
  return v;
}

}  // namespace

double lanczos_max_eigenvalue(const std::function<void(const Vector&, Vector&)>& matvec,
                              Eigen::Index dim, double tol, int max_iter) {
  if (dim == 0) throw std::invalid_argument("lanczos: empty operator");
  if (dim == 1) {
    Vector e = Vector::Unit(1, 0), y(1);
    matvec(e, y);
    return y(0).real();
  }
  const int m = static_cast<int>(std::min<Eigen::Index>(max_iter, dim));
  std::vector<Vector> basis;
  basis.reserve(static_cast<std::size_t>(m));
  std::vector<double> alpha, beta;
  Vector v = deterministic_start(dim);
  Vector w(dim);
  double prev = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    basis.push_back(v);
    matvec(v, w);
    double a = std::real(v.dot(w));
    alpha.push_back(a);
    w -= a * v;
    if (j > 0) w -= beta.back() * basis[static_cast<std::size_t>(j - 1)];
    // full reorthogonalization keeps the small Krylov factorization clean
    for (const Vector& u : basis) w -= u.dot(w) * u;
    double b = w.norm();

    if ((j >= 1 && j % 8 == 0) || b <= 1e-14 || j == m - 1) {
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(j + 1, j + 1);
      for (int i = 0; i <= j; ++i) tri(i, i) = alpha[static_cast<std::size_t>(i)];
      for (int i = 0; i < j; ++i) {
        tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
        tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri, Eigen::EigenvaluesOnly);
      double cur = es.eigenvalues().maxCoeff();
      if (b <= 1e-14) return cur;
      if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur)) && j >= 16) return cur;
      prev = cur;
    }
    if (b <= 1e-14) break;
    beta.push_back(b);
    v = w / b;
  }
  return prev;
}

double max_eigenvalue(const Matrix& herm) {
  if (herm.rows() != herm.cols()) throw std::invalid_argument("max_eigenvalue: non-square");
  if (herm.rows() <= lanczos_threshold()) return dense_eigenvalues(herm).maxCoeff();
  Matrix h = hermitian_part(herm);
  return lanczos_max_eigenvalue([&](const Vector& x, Vector& y) { y.noalias() = h * x; },
                                h.rows());
}

double min_eigenvalue(const Matrix& herm) {
  if (herm.rows() != herm.cols()) throw std::invalid_argument("min_eigenvalue: non-square");
  if (herm.rows() <= lanczos_threshold()) return dense_eigenvalues(herm).minCoeff();
  Matrix h = -hermitian_part(herm);
  return -lanczos_max_eigenvalue([&](const Vector& x, Vector& y) { y.noalias() = h * x; },
                                 h.rows());
}

double operator_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= lanczos_threshold()) {
    Matrix g = a.adjoint() * a;
    double l = dense_eigenvalues(g).maxCoeff();
    return std::sqrt(std::max(0.0, l));
  }
  double l = lanczos_max_eigenvalue(
      [&](const Vector& x, Vector& y) {
        Vector t = a * x;
        y.noalias() = a.adjoint() * t;
      },
      a.cols());
  return std::sqrt(std::max(0.0, l));
}

double operator_norm(const SparseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  double l = lanczos_max_eigenvalue(
      [&](const Vector& x, Vector& y) {
        Vector t = a * x;
        y = a.adjoint() * t;
      },
      a.cols());
  return std::sqrt(std::max(0.0, l));
}

Matrix psd_sqrt(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(herm));
  if (es.info() != Eigen::Success) throw std::runtime_error("psd_sqrt: eigensolver failed");
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_inverse(const Matrix& herm, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(herm));
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_inverse failed");
  Eigen::VectorXd vals = es.eigenvalues();
  double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) < tol * scale) {
      throw std::invalid_argument("hermitian_inverse: matrix numerically singular");
    }
    inv(i) = 1.0 / vals(i);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

double inf_norm_scale(const Matrix& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) m = std::max(m, a.row(i).cwiseAbs().sum());
  return std::max(1.0, m);
}

}  // namespace ncbohr::linalg
