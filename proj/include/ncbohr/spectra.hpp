#pragma once

#include <cstdint>
#include <vector>

#include "ncbohr/linalg.hpp"

namespace ncbohr::spectra {

using linalg::cxd;
using linalg::Matrix;
using linalg::Vector;

struct PsdVerdict {
  double min_eigenvalue = 0.0;
  double tol = 0.0;
  bool psd = false;
  Eigen::Index matrix_size = 0;
};

/// Symmetrizes H and checks min eigenvalue >= -tol * scale with
/// scale = max(1, inf-norm row sum).
PsdVerdict psd_check(const Matrix& h, double tol = 1e-9);

enum class RadiusKind { numerical, joint, euclidean_joint, row_norm };

struct RadiusEstimate {
  double value = 0.0;
  RadiusKind kind = RadiusKind::numerical;
  int level = 0;        // Fock truncation level (joint kind only)
  bool stabilized = true;
};

/// Numerical radius max_theta lambda_max(Re(e^{i theta} T)) on a 720-point
/// grid with golden-section refinement of every grid-local maximum.
RadiusEstimate numerical_radius(const Matrix& t, double tol = 1e-10);

/// omega(sum S_i (x) X_i^*) on the level-L truncation; a nondecreasing-in-L
/// lower bound of the joint numerical radius.
RadiusEstimate joint_numerical_radius(const std::vector<Matrix>& x, int level,
                                      double tol = 1e-10);

/// Runs levels upward until |w_L - w_{L-1}| < stab_tol or the dense cap stops
/// the climb; `stabilized` records which.
RadiusEstimate joint_numerical_radius_stabilized(const std::vector<Matrix>& x,
                                                 double stab_tol = 1e-6, int max_level = 24,
                                                 double tol = 1e-10);

/// Seeded projected-ascent lower bound of the euclidean joint numerical
/// radius sup_{|h|=1} (sum_i |<X_i h, h>|^2)^{1/2}.
RadiusEstimate euclidean_joint_radius(const std::vector<Matrix>& x, int restarts = 64,
                                      double tol = 1e-10, std::uint64_t seed = 2024);

/// ||sum X_i X_i^*||^{1/2}.
double row_norm(const std::vector<Matrix>& x);

}  // namespace ncbohr::spectra
