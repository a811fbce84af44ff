#include "ncbohr/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ncbohr/fock.hpp"
#include "ncbohr/parallel.hpp"
#include "ncbohr/words.hpp"

namespace ncbohr::spectra {

PsdVerdict psd_check(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("psd_check: non-square input");
  Matrix sym = linalg::hermitian_part(h);
  PsdVerdict v;
  v.matrix_size = sym.rows();
  v.tol = tol;
  v.min_eigenvalue = sym.rows() == 0 ? 0.0 : linalg::min_eigenvalue(sym);
  v.psd = v.min_eigenvalue >= -tol * linalg::inf_norm_scale(sym);
  return v;
}

namespace {

struct LinOp {
  Eigen::Index dim = 0;
  const Matrix* dense = nullptr;
  const linalg::SparseMatrix* sparse = nullptr;

  void apply(const Vector& x, Vector& y) const {
    if (dense) {
      y.noalias() = (*dense) * x;
    } else {
      y = (*sparse) * x;
    }
  }
  void apply_adj(const Vector& x, Vector& y) const {
    if (dense) {
      y.noalias() = dense->adjoint() * x;
    } else {
      y = sparse->adjoint() * x;
    }
  }
};

double rotated_real_lambda_max(const LinOp& op, double theta) {
  const cxd phase = std::polar(1.0, theta);
  if (op.dense && op.dim <= linalg::lanczos_threshold()) {
    Matrix h = 0.5 * (phase * (*op.dense) + std::conj(phase) * op.dense->adjoint());
    return linalg::max_eigenvalue(h);
  }
  Vector t1, t2;
  return linalg::lanczos_max_eigenvalue(
      [&](const Vector& x, Vector& y) {
        op.apply(x, t1);
        op.apply_adj(x, t2);
        y = 0.5 * (phase * t1 + std::conj(phase) * t2);
      },
      op.dim);
}

double golden_refine(const std::function<double(double)>& g, double lo, double hi,
                     double best_seen, double width_tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  double best = std::max({best_seen, f1, f2});
  while (b - a > width_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

double radius_impl(const LinOp& op, double tol) {
  constexpr int grid_points = 720;
  const double step = 2.0 * std::numbers::pi / grid_points;
  auto g = [&](double theta) { return rotated_real_lambda_max(op, theta); };

  std::vector<double> values = par::map_indices<double>(
      grid_points, [&](std::size_t j) { return g(static_cast<double>(j) * step); });

  // refine every grid-local maximum so a sharper peak between samples cannot
  // hide the global one
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < grid_points; ++j) {
    double prev = values[(j + grid_points - 1) % grid_points];
    double next = values[(j + 1) % grid_points];
    if (values[j] >= prev && values[j] >= next) peaks.push_back(j);
  }
  const double width_tol = std::max(tol, 1e-7);
  std::vector<double> refined = par::map_indices<double>(peaks.size(), [&](std::size_t i) {
    std::size_t j = peaks[i];
    double center = static_cast<double>(j) * step;
    return golden_refine(g, center - step, center + step, values[j], width_tol);
  });

  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  for (double v : refined) best = std::max(best, v);
  return best;
}

}  // namespace

RadiusEstimate numerical_radius(const Matrix& t, double tol) {
  if (t.rows() != t.cols()) throw std::invalid_argument("numerical_radius: non-square input");
  LinOp op;
  op.dim = t.rows();
  op.dense = &t;
  RadiusEstimate est;
  est.kind = RadiusKind::numerical;
  est.value = op.dim == 0 ? 0.0 : radius_impl(op, tol);
  return est;
}

namespace {

linalg::SparseMatrix joint_radius_operator(const std::vector<Matrix>& x, int level) {
  const int gens = static_cast<int>(x.size());
  if (gens < 1) throw std::invalid_argument("joint radius: empty tuple");
  const Eigen::Index d = x[0].rows();
  for (const Matrix& xi : x) {
    if (xi.rows() != d || xi.cols() != d) {
      throw std::invalid_argument("joint radius: size mismatch in tuple");
    }
  }
  if (level < 1) throw std::invalid_argument("joint radius: level must be >= 1");
  std::size_t dim = words::graded_dim(gens, level, fock::max_basis_words());
  std::size_t side = dim * static_cast<std::size_t>(d);
  if (side > fock::max_dense_dim()) {
    throw std::invalid_argument("joint radius: operator side exceeds the dimension cap");
  }

  std::vector<Eigen::Triplet<cxd>> trips;
  for (int i = 0; i < gens; ++i) {
    Matrix block = x[static_cast<std::size_t>(i)].adjoint();
    words::Word gi({i + 1});
    for (int k = 0; k < level; ++k) {
      for (const words::Word& beta : words::enumerate_words(gens, k)) {
        auto row = words::rank(gens, gi.concat(beta)) * static_cast<std::size_t>(d);
        auto col = words::rank(gens, beta) * static_cast<std::size_t>(d);
        for (Eigen::Index a = 0; a < d; ++a) {
          for (Eigen::Index b = 0; b < d; ++b) {
            if (block(a, b) != cxd(0, 0)) {
              trips.emplace_back(static_cast<int>(row + static_cast<std::size_t>(a)),
                                 static_cast<int>(col + static_cast<std::size_t>(b)),
                                 block(a, b));
            }
          }
        }
      }
    }
  }
  linalg::SparseMatrix t(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
  t.setFromTriplets(trips.begin(), trips.end());
  return t;
}

}  // namespace

RadiusEstimate joint_numerical_radius(const std::vector<Matrix>& x, int level, double tol) {
  linalg::SparseMatrix t = joint_radius_operator(x, level);
  RadiusEstimate est;
  est.kind = RadiusKind::joint;
  est.level = level;
  // The operator raises the word grading by one, so conjugation with the
  // grading unitary diag(e^{i k theta}) rotates it by e^{i theta}. Hence
  // lambda_max(Re e^{i theta} T) is theta-independent and the numerical
  // radius collapses to a single extreme-eigenvalue solve.
  if (t.rows() <= linalg::lanczos_threshold()) {
    Matrix h = 0.5 * (Matrix(t) + Matrix(t).adjoint());
    est.value = linalg::max_eigenvalue(h);
  } else {
    est.value = linalg::lanczos_max_eigenvalue(
        [&](const Vector& v, Vector& y) {
          Vector a = t * v;
          Vector b = t.adjoint() * v;
          y = 0.5 * (a + b);
        },
        t.rows(), tol);
  }
  est.value = std::max(0.0, est.value);
  return est;
}

RadiusEstimate joint_numerical_radius_stabilized(const std::vector<Matrix>& x, double stab_tol,
                                                 int max_level, double tol) {
  RadiusEstimate prev = joint_numerical_radius(x, 1, tol);
  prev.stabilized = false;
  for (int level = 2; level <= max_level; ++level) {
    RadiusEstimate cur;
    try {
      cur = joint_numerical_radius(x, level, tol);
    } catch (const std::invalid_argument&) {
      return prev;  // dimension cap reached before stabilization
    }
    if (std::abs(cur.value - prev.value) < stab_tol) {
      cur.stabilized = true;
      return cur;
    }
    cur.stabilized = false;
    prev = cur;
  }
  return prev;
}

RadiusEstimate euclidean_joint_radius(const std::vector<Matrix>& x, int restarts, double tol,
                                      std::uint64_t seed) {
  if (x.empty()) throw std::invalid_argument("euclidean_joint_radius: empty tuple");
  if (restarts < 1) throw std::invalid_argument("euclidean_joint_radius: restarts must be >= 1");
  const Eigen::Index d = x[0].rows();
  for (const Matrix& xi : x) {
    if (xi.rows() != d || xi.cols() != d) {
      throw std::invalid_argument("euclidean_joint_radius: size mismatch");
    }
  }

  auto objective = [&](const Vector& h) {
    double s = 0.0;
    for (const Matrix& xi : x) s += std::norm(h.dot(xi * h));
    return std::sqrt(s);
  };

  auto run = [&](std::size_t r) {
    std::mt19937_64 rng(seed + 0x9e3779b9ull * (r + 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector h(d);
    for (Eigen::Index i = 0; i < d; ++i) h(i) = cxd(gauss(rng), gauss(rng));
    h.normalize();
    double best = objective(h);
    for (int it = 0; it < 200; ++it) {
      // Rayleigh-style ascent: power step with the h-dependent Hermitian
      // surrogate sum (conj(q_i) X_i + q_i X_i^*)/2
      Vector mh = Vector::Zero(d);
      for (const Matrix& xi : x) {
        cxd q = h.dot(xi * h);
        mh += 0.5 * (std::conj(q) * (xi * h) + q * (xi.adjoint() * h));
      }
      double norm = mh.norm();
      if (norm <= 1e-15) break;
      h = mh / norm;
      double value = objective(h);
      if (value <= best + tol) {
        best = std::max(best, value);
        break;
      }
      best = value;
    }
    return best;
  };

  std::vector<double> results =
      par::map_indices<double>(static_cast<std::size_t>(restarts), run);
  RadiusEstimate est;
  est.kind = RadiusKind::euclidean_joint;
  est.value = 0.0;
  for (double v : results) est.value = std::max(est.value, v);
  return est;
}

double row_norm(const std::vector<Matrix>& x) {
  if (x.empty()) throw std::invalid_argument("row_norm: empty tuple");
  const Eigen::Index rows = x[0].rows();
  const Eigen::Index cols = x[0].cols();
  Matrix s = Matrix::Zero(rows, rows);
  for (const Matrix& xi : x) {
    if (xi.rows() != rows || xi.cols() != cols) {
      throw std::invalid_argument("row_norm: size mismatch");
    }
    s += xi * xi.adjoint();
  }
  return std::sqrt(std::max(0.0, linalg::max_eigenvalue(s)));
}

}  // namespace ncbohr::spectra
