#include "ncbohr/radii.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ncbohr/parallel.hpp"

namespace ncbohr::radii {

namespace {

std::vector<double> cosine_coeffs(int m) {
  std::vector<double> c(static_cast<std::size_t>(m));  // c[k] for k = 1..m-1
  for (int k = 1; k <= m - 1; ++k) {
    int denom = (m - 1) / k + 2;
    c[static_cast<std::size_t>(k)] = std::cos(std::numbers::pi / denom);
  }
  return c;
}

double eval(const std::vector<double>& c, int m, double t) {
  // ascending-degree accumulation in extended precision limits cancellation
  long double sum = 0.0L;
  long double power = 1.0L;
  for (int k = 1; k <= m - 1; ++k) {
    power *= t;
    sum += power * static_cast<long double>(c[static_cast<std::size_t>(k)]);
  }
  return static_cast<double>(sum);
}

RootEntry bisect(const std::vector<double>& c, int m, double lo, double hi, double target,
                 double tol) {
  double flo = eval(c, m, lo) - target;
  double fhi = eval(c, m, hi) - target;
  if (flo > 0.0) throw std::logic_error("bisect: left endpoint not below target");
  if (fhi < 0.0) throw std::logic_error("bisect: right endpoint not above target");
  double width = hi - lo;
  while (width > tol * 0.125) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double resolution reached
    double fmid = eval(c, m, mid) - target;
    if (fmid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    width = hi - lo;
  }
  RootEntry entry;
  double fl = std::abs(eval(c, m, lo) - target);
  double fh = std::abs(eval(c, m, hi) - target);
  entry.value = fl <= fh ? lo : hi;
  entry.residual = std::min(fl, fh);
  entry.bracket_width = width;
  return entry;
}

}  // namespace

double f_m(int m, double t) {
  if (m < 2) throw std::invalid_argument("f_m: m must be >= 2");
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("f_m: t must lie in [0,1]");
  return eval(cosine_coeffs(m), m, t);
}

RootEntry solve_t(int m, double tol) {
  if (m < 2) throw std::invalid_argument("solve_t: m must be >= 2");
  if (tol <= 0.0) throw std::invalid_argument("solve_t: tol must be positive");
  auto c = cosine_coeffs(m);
  // root lies in (1/3, 1]: f_m(1/3) < f(1/3) = 1/2 and f_m(1) >= cos(pi/3)
  return bisect(c, m, 1.0 / 3.0, 1.0, 0.5, tol);
}

RootEntry solve_gamma(int m, double tol) {
  if (m < 2) throw std::invalid_argument("solve_gamma: m must be >= 2");
  if (tol <= 0.0) throw std::invalid_argument("solve_gamma: tol must be positive");
  auto c = cosine_coeffs(m);
  if (m == 2) {
    // f_2(1) = cos(pi/3) = 1/2 < 1: no root in (0,1], clamp per table contract
    RootEntry entry;
    entry.value = 1.0;
    entry.residual = std::abs(eval(c, m, 1.0) - 1.0);
    entry.bracket_width = 0.0;
    entry.clamped = true;
    return entry;
  }
  // m >= 3: f_m(1/2) < f(1/2) = 1 and f_m(1) >= (m-1)/2 >= 1
  return bisect(c, m, 0.5, 1.0, 1.0, tol);
}

RadiusTable RadiusTable::build(TableKind kind, int m_max, double tol) {
  if (m_max < 2) throw std::invalid_argument("RadiusTable: m_max must be >= 2");
  RadiusTable table;
  table.kind = kind;
  table.tol = tol;
  auto rows = par::map_indices<RootEntry>(
      static_cast<std::size_t>(m_max - 1), [&](std::size_t i) {
        int m = static_cast<int>(i) + 2;
        return kind == TableKind::t ? solve_t(m, tol) : solve_gamma(m, tol);
      });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.entries.emplace(static_cast<int>(i) + 2, rows[i]);
  }
  return table;
}

void RadiusTable::validate() const {
  const double target = kind == TableKind::t ? 0.5 : 1.0;
  const double floor_value = kind == TableKind::t ? 1.0 / 3.0 : 0.5;
  int first_monotone = kind == TableKind::t ? 2 : 3;
  double prev = 2.0;
  for (const auto& [m, e] : entries) {
    if (!e.clamped && e.residual > tol * (1.0 + std::abs(target))) {
      throw std::runtime_error("RadiusTable: residual certificate failed at m=" +
                               std::to_string(m));
    }
    if (!e.clamped && e.value <= floor_value) {
      throw std::runtime_error("RadiusTable: value at m=" + std::to_string(m) +
                               " not above the limit");
    }
    if (m > first_monotone && e.value >= prev + 2.0 * tol) {
      throw std::runtime_error("RadiusTable: monotonicity failed at m=" + std::to_string(m));
    }
    if (m >= first_monotone) prev = e.value;
  }
}

std::string RadiusTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "m,value,residual,clamped\n";
  for (const auto& [m, e] : entries) {
    os << m << ',' << e.value << ',' << e.residual << ',' << (e.clamped ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string RadiusTable::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"kind\":\"" << (kind == TableKind::t ? "t" : "gamma") << "\",\"tol\":" << tol
     << ",\"entries\":[";
  bool first = true;
  for (const auto& [m, e] : entries) {
    if (!first) os << ',';
    first = false;
    os << "{\"m\":" << m << ",\"value\":" << e.value << ",\"residual\":" << e.residual
       << ",\"clamped\":" << (e.clamped ? "true" : "false") << '}';
  }
  os << "]}";
  return os.str();
}

double bound_M(double r) {
  if (r < 0.0 || r >= 1.0) throw std::invalid_argument("bound_M: r must lie in [0,1)");
  if (r <= 0.5) return 1.0 + r * r / ((1.0 - r) * (1.0 - r));
  return 2.0 * r / (1.0 - r);
}

double bound_K(double r) {
  if (r < 0.0 || r >= 1.0) throw std::invalid_argument("bound_K: r must lie in [0,1)");
  if (r <= 0.2) return 1.0;
  return 4.0 * r / (1.0 - r);
}

double bound_N(double r) {
  if (r < 0.0 || r >= 1.0) throw std::invalid_argument("bound_N: r must lie in [0,1)");
  if (r <= 0.5) return 1.0;
  return r / (1.0 - r);
}

}  // namespace ncbohr::radii
