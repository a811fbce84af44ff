#pragma once

#include <map>
#include <string>

namespace ncbohr::radii {

/// f_m(t) = sum_{k=1}^{m-1} t^k cos(pi / (floor((m-1)/k) + 2)); strictly
/// increasing on [0,1] with f_m(0) = 0.
double f_m(int m, double t);

struct RootEntry {
  double value = 0.0;
  double residual = 0.0;      // |f_m(value) - target|
  double bracket_width = 0.0; // final certified bisection bracket
  bool clamped = false;
};

/// Unique root of f_m(t) = 1/2 in (1/3, 1], certified by bisection.
RootEntry solve_t(int m, double tol = 1e-12);

/// Unique root of f_m(t) = 1 in (1/2, 1] for m >= 3; m = 2 has no root in
/// (0,1] (f_2(1) = 1/2) and is clamped to 1 with the flag set.
RootEntry solve_gamma(int m, double tol = 1e-12);

enum class TableKind { t, gamma };

struct RadiusTable {
  TableKind kind = TableKind::t;
  double tol = 1e-12;
  std::map<int, RootEntry> entries;

  static RadiusTable build(TableKind kind, int m_max, double tol = 1e-12);

  /// Residual certificates plus strict monotonicity (t: m >= 2, gamma:
  /// m >= 3). Throws on violation.
  void validate() const;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Piecewise bounds from the operator-valued Bohr theorems. M switches at
/// r = 1/2, K at r = 1/5, N at r = 1/2; all continuous at the breakpoint.
double bound_M(double r);
double bound_K(double r);
double bound_N(double r);

}  // namespace ncbohr::radii
