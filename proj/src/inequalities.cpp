#include "ncbohr/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ncbohr/radii.hpp"

namespace ncbohr::ineq {

using fock::AssembledOperator;
using fock::FockRep;
using fock::SeriesKind;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double fejer_cos(int m, int k) {
  return std::cos(std::numbers::pi / ((m - 1) / k + 2));
}

void require_established(const HypothesisCheck& hyp, const char* where) {
  if (!hyp.established()) {
    throw std::invalid_argument(std::string(where) + ": hypothesis not established");
  }
}

void require_scalar(const CoeffSeries& s, const char* where) {
  if (s.coeff_dim() != 1) {
    throw std::invalid_argument(std::string(where) + ": scalar coefficients required");
  }
}

/// F(0) >= 0 for scalar series: real constant term, nonnegative.
double scalar_constant(const CoeffSeries& s, const char* where) {
  cxd a0 = s.scalar_term(Word::identity());
  if (std::abs(a0.imag()) > 1e-12 || a0.real() < -1e-12) {
    throw std::invalid_argument(std::string(where) + ": constant term not real nonnegative");
  }
  return std::max(0.0, a0.real());
}

Matrix tuple_product(const std::vector<Matrix>& t, const Word& w) {
  const Eigen::Index d = t.empty() ? 1 : t[0].rows();
  Matrix out = Matrix::Identity(d, d);
  for (auto l : w.letters()) out = out * t[static_cast<std::size_t>(l - 1)];
  return out;
}

std::vector<Matrix> adjoint_slice_tuple(const CoeffSeries& s, int k) {
  std::vector<Matrix> out;
  for (const Word& w : words::enumerate_words(s.n(), k)) {
    out.push_back(s.term(w).adjoint());
  }
  return out;
}

bool bands_match(const std::map<Word, Matrix>& a, const std::map<Word, Matrix>& b, int d,
                 double tol) {
  double scale = 1.0;
  for (const auto& [w, c] : a) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  for (const auto& [w, c] : b) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  auto value = [&](const std::map<Word, Matrix>& m, const Word& w) -> Matrix {
    auto it = m.find(w);
    return it == m.end() ? Matrix::Zero(d, d) : it->second;
  };
  std::vector<Word> keys;
  for (const auto& [w, c] : a) keys.push_back(w);
  for (const auto& [w, c] : b) keys.push_back(w);
  for (const Word& w : keys) {
    if ((value(a, w) - value(b, w)).cwiseAbs().maxCoeff() > tol * scale) return false;
  }
  return true;
}

}  // namespace

std::map<Word, Matrix> qq_band(const std::map<Word, Matrix>& q, int coeff_dim) {
  std::map<Word, Matrix> band;
  for (const auto& [alpha, qa] : q) {
    for (const auto& [delta, qd] : q) {
      auto gamma = words::divide(delta, alpha);
      if (!gamma) continue;
      auto it = band.find(*gamma);
      if (it == band.end()) {
        band.emplace(*gamma, Matrix(qa.adjoint() * qd));
      } else {
        it->second += qa.adjoint() * qd;
      }
    }
  }
  if (band.empty()) band.emplace(Word::identity(), Matrix::Zero(coeff_dim, coeff_dim));
  return band;
}

std::string to_string(HypVerdict v) {
  switch (v) {
    case HypVerdict::certified_by_construction: return "CertifiedByConstruction";
    case HypVerdict::section_positive_up_to: return "SectionPositiveUpTo";
    case HypVerdict::violated: return "Violated";
  }
  return "?";
}

std::string to_string(HypKind k) {
  switch (k) {
    case HypKind::re_leq_I: return "re_leq_I";
    case HypKind::norm_leq_1: return "norm_leq_1";
    case HypKind::positive: return "positive";
    case HypKind::pointwise_dominance: return "pointwise_dominance";
  }
  return "?";
}

void VerificationReport::add(std::string check, double lhs, double rhs) {
  margins.push_back(Margin{std::move(check), lhs, rhs});
}

void VerificationReport::note(std::string text) { notes.push_back(std::move(text)); }

void VerificationReport::finalize() {
  pass = hypothesis.established();
  for (const Margin& m : margins) {
    if (m.slack() < -tol) pass = false;
  }
}

double VerificationReport::worst_slack() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const Margin& m : margins) worst = std::min(worst, m.slack());
  return worst;
}

// ---- hypothesis machinery --------------------------------------------------

HypothesisCheck check_re_leq_I(const CoeffSeries& series, int level,
                               std::span<const double> r_grid, const QCertificate* cert,
                               const CheckOptions& opt) {
  if (series.kind() == SeriesKind::harmonic) {
    throw std::invalid_argument("check_re_leq_I: holomorphic series required");
  }
  HypothesisCheck hyp;
  hyp.kind = HypKind::re_leq_I;
  hyp.level = level;

  if (cert) {
    // exact certificate algebra: 2I - F - F^* = Q^*Q as coefficients
    const int d = series.coeff_dim();
    std::map<Word, Matrix> band = qq_band(cert->q_terms, d);
    std::map<Word, Matrix> expect;
    expect.emplace(Word::identity(),
                   Matrix(2.0 * (Matrix::Identity(d, d) - series.constant_term())));
    for (const auto& [w, a] : series.terms()) {
      if (!w.is_identity()) expect.emplace(w, Matrix(-a));
    }
    if (!bands_match(band, expect, d, 1e-12)) {
      throw std::invalid_argument("check_re_leq_I: certificate does not reproduce the instance");
    }
    hyp.verdict = HypVerdict::certified_by_construction;
    hyp.margin = 0.0;
    return hyp;
  }

  FockRep rep(series.n(), level);
  const int d = series.coeff_dim();
  double worst = std::numeric_limits<double>::infinity();
  for (double r : r_grid) {
    if (r < 0.0 || r >= 1.0 + 1e-15) {
      throw std::invalid_argument("check_re_leq_I: r-grid must lie in [0,1)");
    }
    Matrix f = assemble(series, rep, r).mat;
    Matrix h = 2.0 * Matrix::Identity(f.rows(), f.cols()) - f - f.adjoint();
    auto verdict = spectra::psd_check(h, opt.psd_tol);
    worst = std::min(worst, verdict.min_eigenvalue);
    hyp.r = r;
    if (!verdict.psd) {
      hyp.verdict = HypVerdict::violated;
      hyp.margin = verdict.min_eigenvalue;
      return hyp;
    }
    (void)d;
  }
  hyp.verdict = HypVerdict::section_positive_up_to;
  hyp.margin = worst;
  return hyp;
}

HypothesisCheck check_positive(const CoeffSeries& series, int level,
                               std::span<const double> r_grid, const QCertificate* cert,
                               const CheckOptions& opt) {
  if (series.kind() != SeriesKind::harmonic) {
    throw std::invalid_argument("check_positive: harmonic series required");
  }
  series.validate();
  HypothesisCheck hyp;
  hyp.kind = HypKind::positive;
  hyp.level = level;

  if (cert) {
    std::map<Word, Matrix> band = qq_band(cert->q_terms, series.coeff_dim());
    if (!bands_match(band, series.terms(), series.coeff_dim(), 1e-12)) {
      throw std::invalid_argument("check_positive: certificate does not reproduce the instance");
    }
    hyp.verdict = HypVerdict::certified_by_construction;
    return hyp;
  }

  FockRep rep(series.n(), level);
  double worst = std::numeric_limits<double>::infinity();
  for (double r : r_grid) {
    Matrix h = assemble(series, rep, r).mat;
    auto verdict = spectra::psd_check(h, opt.psd_tol);
    worst = std::min(worst, verdict.min_eigenvalue);
    hyp.r = r;
    if (!verdict.psd) {
      hyp.verdict = HypVerdict::violated;
      hyp.margin = verdict.min_eigenvalue;
      return hyp;
    }
  }
  hyp.verdict = HypVerdict::section_positive_up_to;
  hyp.margin = worst;
  return hyp;
}

HypothesisCheck check_norm_leq_1(const CoeffSeries& series, int level,
                                 std::span<const double> r_grid, const CheckOptions& opt) {
  series.validate();
  HypothesisCheck hyp;
  hyp.kind = HypKind::norm_leq_1;
  hyp.level = level;
  FockRep rep(series.n(), level);
  double worst = -std::numeric_limits<double>::infinity();
  for (double r : r_grid) {
    Matrix f = assemble(series, rep, r).mat;
    double norm = linalg::operator_norm(f);
    worst = std::max(worst, norm);
    hyp.r = r;
    if (norm > 1.0 + opt.tol) {
      hyp.verdict = HypVerdict::violated;
      hyp.margin = norm - 1.0;
      return hyp;
    }
  }
  hyp.verdict = HypVerdict::section_positive_up_to;
  hyp.margin = 1.0 - worst;
  return hyp;
}

HypothesisCheck check_dominance(const CoeffSeries& a, const CoeffSeries& b, int level,
                                std::span<const double> r_grid, const QCertificate* cert,
                                const CheckOptions& opt) {
  if (a.n() != b.n() || a.coeff_dim() != b.coeff_dim()) {
    throw std::invalid_argument("check_dominance: shape mismatch");
  }
  HypothesisCheck hyp;
  hyp.kind = HypKind::pointwise_dominance;
  hyp.level = level;

  CoeffSeries diff(a.n(), SeriesKind::harmonic, a.coeff_dim());
  {
    std::map<Word, Matrix> terms = b.terms();
    for (const auto& [w, c] : a.terms()) {
      auto it = terms.find(w);
      if (it == terms.end()) {
        terms.emplace(w, Matrix(-c));
      } else {
        it->second -= c;
      }
    }
    for (auto& [w, c] : terms) diff.set_term(w, c);
  }

  if (cert) {
    std::map<Word, Matrix> band = qq_band(cert->q_terms, a.coeff_dim());
    if (!bands_match(band, diff.terms(), a.coeff_dim(), 1e-12)) {
      throw std::invalid_argument("check_dominance: certificate does not reproduce B - A");
    }
    hyp.verdict = HypVerdict::certified_by_construction;
    return hyp;
  }
  HypothesisCheck inner = check_positive(diff, level, r_grid, nullptr, opt);
  inner.kind = HypKind::pointwise_dominance;
  return inner;
}

// ---- scalar verifiers -------------------------------------------------------

VerificationReport fejer_bound_check(const CoeffSeries& series, int m,
                                     const HypothesisCheck& hyp, const CheckOptions& opt) {
  require_scalar(series, "fejer_bound_check");
  require_established(hyp, "fejer_bound_check");
  if (m < 2) throw std::invalid_argument("fejer_bound_check: m must be >= 2");
  if (series.degree() > m - 1) {
    throw std::invalid_argument("fejer_bound_check: series not banded by m-1");
  }
  cxd a0c = series.scalar_term(Word::identity());
  if (std::abs(a0c.imag()) > 1e-12 || a0c.real() <= 0.0) {
    throw std::invalid_argument("fejer_bound_check: a_0 not real positive");
  }
  double a0 = a0c.real();

  VerificationReport rep;
  rep.inequality = "fejer";
  rep.tol = opt.tol;
  rep.level = hyp.level;
  rep.hypothesis = hyp;
  for (int k = 1; k <= m - 1; ++k) {
    rep.add("coefficient bound k=" + std::to_string(k), fock::graded_row_norm(series, k),
            a0 * fejer_cos(m, k));
  }
  rep.finalize();
  return rep;
}

double bohr_majorant(const CoeffSeries& series, double r) {
  if (r < 0.0) throw std::invalid_argument("bohr_majorant: r must be >= 0");
  long double sum = 0.0L;
  long double power = 1.0L;
  for (int k = 0; k <= series.degree(); ++k) {
    sum += power * static_cast<long double>(fock::graded_row_norm(series, k));
    power *= r;
  }
  return static_cast<double>(sum);
}

VerificationReport bohr_polynomial_check(const CoeffSeries& series, int m,
                                         const HypothesisCheck& hyp,
                                         const CheckOptions& opt) {
  require_scalar(series, "bohr_polynomial_check");
  require_established(hyp, "bohr_polynomial_check");
  if (m < 2) throw std::invalid_argument("bohr_polynomial_check: m must be >= 2");
  if (series.degree() > m - 1) {
    throw std::invalid_argument("bohr_polynomial_check: degree exceeds m-1");
  }
  double a0 = scalar_constant(series, "bohr_polynomial_check");

  VerificationReport rep;
  rep.inequality = "bohr_polynomial";
  rep.tol = opt.tol;
  rep.level = hyp.level;
  rep.hypothesis = hyp;

  double tm = radii::solve_t(m).value;
  for (int k = 1; k <= m - 1; ++k) {
    rep.add("wiener k=" + std::to_string(k), fock::graded_row_norm(series, k),
            2.0 * (1.0 - a0) * fejer_cos(m, k));
  }
  rep.add("majorant at t_" + std::to_string(m) + "=" + fmt(tm), bohr_majorant(series, tm),
          1.0);
  rep.finalize();
  return rep;
}

VerificationReport boh2_check(const CoeffSeries& series, const HypothesisCheck& hyp,
                              const CheckOptions& opt) {
  require_scalar(series, "boh2_check");
  require_established(hyp, "boh2_check");
  double a0 = scalar_constant(series, "boh2_check");

  VerificationReport rep;
  rep.inequality = "boh2";
  rep.tol = opt.tol;
  rep.level = hyp.level;
  rep.hypothesis = hyp;

  for (int k = 1; k <= series.degree(); ++k) {
    rep.add("wiener k=" + std::to_string(k), fock::graded_row_norm(series, k),
            2.0 * (1.0 - a0));
  }
  rep.add("majorant at 1/3", bohr_majorant(series, 1.0 / 3.0), 1.0);

  // seeded row-contraction spot checks of the T-form
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dt = 3;
  for (int trial = 0; trial < opt.spot_checks; ++trial) {
    std::vector<Matrix> t;
    for (int i = 0; i < series.n(); ++i) {
      Matrix ti(dt, dt);
      for (int r = 0; r < dt; ++r) {
        for (int c = 0; c < dt; ++c) ti(r, c) = cxd(gauss(rng), gauss(rng));
      }
      t.push_back(ti);
    }
    double rn = spectra::row_norm(t);
    for (Matrix& ti : t) ti *= (1.0 / 3.0) / rn;
    long double total = 0.0L;
    for (int k = 0; k <= series.degree(); ++k) {
      Matrix sum = Matrix::Zero(dt, dt);
      for (const auto& [w, a] : series.slice(k)) {
        sum += std::abs(a(0, 0)) * tuple_product(t, w);
      }
      total += linalg::operator_norm(sum);
    }
    rep.add("T-form spot check #" + std::to_string(trial), static_cast<double>(total), 1.0);
  }
  rep.finalize();
  return rep;
}

VerificationReport harmonic_check(const CoeffSeries& series, int m,
                                  const HypothesisCheck& hyp, const CheckOptions& opt) {
  require_scalar(series, "harmonic_check");
  require_established(hyp, "harmonic_check");
  if (series.kind() != SeriesKind::harmonic) {
    throw std::invalid_argument("harmonic_check: harmonic series required");
  }
  series.validate();
  if (m != 0 && m < 2) throw std::invalid_argument("harmonic_check: m must be >= 2 or 0");
  if (m != 0 && series.degree() > m - 1) {
    throw std::invalid_argument("harmonic_check: series not banded by m-1");
  }
  const bool banded = m != 0;
  double a0_abs = std::abs(series.scalar_term(Word::identity()));

  VerificationReport rep;
  rep.inequality = banded ? "harmonic_band" : "harmonic_inf";
  rep.tol = opt.tol;
  rep.level = hyp.level;
  rep.hypothesis = hyp;

  // (i) coefficient bounds with the (fej)-consistent exponent
  for (int k = 1; k <= series.degree(); ++k) {
    double factor = banded ? fejer_cos(m, k) : 1.0;
    rep.add("coefficient bound k=" + std::to_string(k), fock::graded_row_norm(series, k),
            (1.0 - a0_abs) * factor);
  }

  // (ii)/(iv): one-sided majorant at gamma_m (1/2 when unbanded)
  double gamma = banded ? radii::solve_gamma(m).value : 0.5;
  rep.add("one-sided majorant at r=" + fmt(gamma), bohr_majorant(series, gamma), 1.0);

  // (iii)/(v): two-sided majorant at t_m (1/3 when unbanded)
  double tm = banded ? radii::solve_t(m).value : 1.0 / 3.0;
  long double two_sided = a0_abs;
  long double power = 1.0L;
  for (int k = 1; k <= series.degree(); ++k) {
    power *= tm;
    two_sided += 2.0L * power * static_cast<long double>(fock::graded_row_norm(series, k));
  }
  rep.add("two-sided majorant at r=" + fmt(tm), static_cast<double>(two_sided), 1.0);
  rep.finalize();
  return rep;
}

// ---- operator-coefficient verifiers -----------------------------------------

spectra::PsdVerdict pk_positivity(const CoeffSeries& series, int k,
                                  const HypothesisCheck& hyp, const CheckOptions& opt) {
  require_established(hyp, "pk_positivity");
  if (k < 1) throw std::invalid_argument("pk_positivity: k must be >= 1");
  const int d = series.coeff_dim();
  const Matrix diag = 2.0 * (Matrix::Identity(d, d) - series.constant_term());
  std::vector<Word> ws = words::enumerate_words(series.n(), k);
  const auto blocks = static_cast<Eigen::Index>(ws.size()) + 1;
  Matrix p = Matrix::Zero(blocks * d, blocks * d);
  p.block(0, 0, d, d) = diag;
  for (Eigen::Index j = 0; j < blocks - 1; ++j) {
    Matrix a = series.term(ws[static_cast<std::size_t>(j)]);
    p.block(0, (j + 1) * d, d, d) = a.adjoint();
    p.block((j + 1) * d, 0, d, d) = a;
    p.block((j + 1) * d, (j + 1) * d, d, d) = diag;
  }
  return spectra::psd_check(p, opt.psd_tol);
}

VerificationReport tensor_bound_check(const CoeffSeries& series,
                                      const std::map<Word, Matrix>& y, int level,
                                      const HypothesisCheck& hyp, const CheckOptions& opt) {
  require_established(hyp, "tensor_bound_check");
  if (y.empty()) throw std::invalid_argument("tensor_bound_check: empty Y family");
  const auto dy = y.begin()->second.rows();
  CoeffSeries yseries(series.n(), SeriesKind::holomorphic, static_cast<int>(dy));
  for (const auto& [w, m] : y) yseries.set_term(w, m);

  // Y budget: ||Y_0|| <= 1 and sum_k ||sum Y*Y||^{1/2} <= 1/2
  double y0 = linalg::operator_norm(yseries.constant_term());
  long double budget = 0.0L;
  for (int k = 1; k <= yseries.degree(); ++k) {
    budget += fock::graded_row_norm(yseries, k);
  }
  if (y0 > 1.0 + opt.tol || static_cast<double>(budget) > 0.5 + opt.tol) {
    throw std::invalid_argument("tensor_bound_check: Y budget violated");
  }

  CoeffSeries combined(series.n(), SeriesKind::holomorphic,
                       series.coeff_dim() * static_cast<int>(dy));
  for (const auto& [w, a] : series.terms()) {
    Matrix yw = yseries.term(w);
    if (yw.cwiseAbs().maxCoeff() == 0.0) continue;
    combined.set_term(w, linalg::kron(a, yw));
  }

  VerificationReport rep;
  rep.inequality = "tensor_bound";
  rep.tol = opt.tol;
  rep.hypothesis = hyp;
  rep.level = std::max(level, combined.degree());
  rep.add("Y budget", static_cast<double>(budget), 0.5);
  FockRep fr(series.n(), rep.level);
  Matrix t = assemble(combined, fr, 1.0).mat;
  rep.add("tensor norm", linalg::operator_norm(t), 1.0);
  rep.finalize();
  return rep;
}

VerificationReport bohr_gen_checks(const CoeffSeries& series, std::span<const double> r_grid,
                                   const HypothesisCheck& hyp, const CheckOptions& opt) {
  require_established(hyp, "bohr_gen_checks");
  const int d = series.coeff_dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix a0 = series.constant_term();
  const Matrix one_minus = id - a0;
  const double norm_one_minus = linalg::operator_norm(one_minus);
  const double norm_a0 = linalg::operator_norm(a0);
  const int deg = series.degree();

  VerificationReport rep;
  rep.inequality = "bohr_gen";
  rep.tol = opt.tol;
  rep.level = hyp.level;
  rep.hypothesis = hyp;

  std::vector<Matrix> gram(static_cast<std::size_t>(deg) + 1);
  std::vector<Matrix> gram_sqrt(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k) {
    gram[static_cast<std::size_t>(k)] = fock::gram_slice(series, k);
    gram_sqrt[static_cast<std::size_t>(k)] =
        linalg::psd_sqrt(gram[static_cast<std::size_t>(k)]);
  }

  for (int k = 1; k <= deg; ++k) {
    Matrix h = 4.0 * one_minus - gram[static_cast<std::size_t>(k)];
    auto v = spectra::psd_check(h, opt.psd_tol);
    rep.add("(ii) gram vs 4(I-A0), k=" + std::to_string(k), -v.min_eigenvalue,
            opt.psd_tol * linalg::inf_norm_scale(h));
    rep.add("(iii) gram norm k=" + std::to_string(k),
            std::sqrt(std::max(0.0, linalg::max_eigenvalue(gram[static_cast<std::size_t>(k)]))),
            2.0 * norm_one_minus);
  }

  for (double r : r_grid) {
    if (r >= 1.0) continue;
    Matrix sum = Matrix::Zero(d, d);
    double power = 1.0;
    for (int k = 0; k <= deg; ++k) {
      sum += power * gram_sqrt[static_cast<std::size_t>(k)];
      power *= r;
    }
    Matrix h = radii::bound_M(r) * id - sum;
    auto v = spectra::psd_check(h, opt.psd_tol);
    rep.add("(iv) sqrt-gram sum vs M(r), r=" + fmt(r), -v.min_eigenvalue,
            opt.psd_tol * linalg::inf_norm_scale(h));
  }

  if (norm_a0 < 1.0) {
    Matrix w = linalg::hermitian_inverse(one_minus);
    for (double r : r_grid) {
      if (r >= 1.0) continue;
      Matrix sum = a0;
      double power = 1.0;
      for (int k = 1; k <= deg; ++k) {
        power *= r;
        Matrix term = Matrix::Zero(d, d);
        for (const auto& [word, a] : series.slice(k)) term += a.adjoint() * w * a;
        sum += power * term;
      }
      Matrix h = radii::bound_K(r) * id - sum;
      auto v = spectra::psd_check(h, opt.psd_tol);
      rep.add("(v) resolvent sum vs K(r), r=" + fmt(r), -v.min_eigenvalue,
              opt.psd_tol * linalg::inf_norm_scale(h));
    }
  } else {
    rep.note("(v) skipped: ||A_(0)|| >= 1");
  }

  for (double r : r_grid) {
    if (r > 1.0 / 3.0 + 1e-15) continue;
    long double sum = 0.0L;
    long double power = 1.0L;
    for (int k = 0; k <= deg; ++k) {
      sum += power * std::sqrt(std::max(
                         0.0, linalg::max_eigenvalue(gram[static_cast<std::size_t>(k)])));
      power *= r;
    }
    rep.add("(vi) scalar sum r=" + fmt(r), static_cast<double>(sum),
            norm_a0 + norm_one_minus);
  }
  rep.finalize();
  return rep;
}

VerificationReport oper_gen_checks(const CoeffSeries& series, int level,
                                   std::span<const double> r_grid,
                                   const HypothesisCheck& hyp, const CheckOptions& opt) {
  require_established(hyp, "oper_gen_checks");
  if (hyp.kind != HypKind::norm_leq_1) {
    throw std::invalid_argument("oper_gen_checks: norm hypothesis required");
  }
  const int d = series.coeff_dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix a0 = series.constant_term();
  const int deg = series.degree();

  VerificationReport rep;
  rep.inequality = "oper_gen";
  rep.tol = opt.tol;
  rep.level = level;
  rep.hypothesis = hyp;

  std::vector<Matrix> gram(static_cast<std::size_t>(deg) + 1);
  std::vector<Matrix> gram_sqrt(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k) {
    gram[static_cast<std::size_t>(k)] = fock::gram_slice(series, k);
    gram_sqrt[static_cast<std::size_t>(k)] =
        linalg::psd_sqrt(gram[static_cast<std::size_t>(k)]);
  }
  Matrix defect_sqrt = linalg::psd_sqrt(id - a0.adjoint() * a0);

  for (int k = 1; k <= deg; ++k) {
    Matrix h = defect_sqrt - gram_sqrt[static_cast<std::size_t>(k)];
    auto v = spectra::psd_check(h, opt.psd_tol);
    rep.add("(i) sqrt-gram vs defect, k=" + std::to_string(k), -v.min_eigenvalue,
            opt.psd_tol * linalg::inf_norm_scale(h) + opt.tol);
  }

  for (double r : r_grid) {
    if (r >= 1.0) continue;
    Matrix sum = Matrix::Zero(d, d);
    double power = 1.0;
    for (int k = 0; k <= deg; ++k) {
      sum += power * gram_sqrt[static_cast<std::size_t>(k)];
      power *= r;
    }
    double bound = std::sqrt(1.0 + r * r / ((1.0 - r) * (1.0 - r)));
    Matrix h = bound * id - sum;
    auto v = spectra::psd_check(h, opt.psd_tol);
    rep.add("(ii) sqrt-gram sum r=" + fmt(r), -v.min_eigenvalue,
            opt.psd_tol * linalg::inf_norm_scale(h));
  }

  const double norm_a0 = linalg::operator_norm(a0);
  if (norm_a0 < 1.0) {
    Matrix w = linalg::hermitian_inverse(id - a0 * a0.adjoint());
    for (int k = 1; k <= deg; ++k) {
      Matrix sum = Matrix::Zero(d, d);
      for (const auto& [word, a] : series.slice(k)) sum += a.adjoint() * w * a;
      Matrix h = (id - a0.adjoint() * a0) - sum;
      auto v = spectra::psd_check(h, opt.psd_tol);
      rep.add("(iii) resolvent gram k=" + std::to_string(k), -v.min_eigenvalue,
              opt.psd_tol * linalg::inf_norm_scale(h) + opt.tol);
    }
  } else {
    rep.note("(iii) skipped: ||A_(0)|| >= 1");
  }

  bool a0_psd = linalg::is_hermitian(a0, 1e-10) &&
                spectra::psd_check(a0, opt.psd_tol).psd;
  if (norm_a0 < 1.0 && a0_psd) {
    Matrix w = linalg::hermitian_inverse(id - a0 * a0);
    for (double r : r_grid) {
      if (r >= 1.0) continue;
      Matrix sum = a0 * a0;
      double power = 1.0;
      for (int k = 1; k <= deg; ++k) {
        power *= r;
        Matrix term = Matrix::Zero(d, d);
        for (const auto& [word, a] : series.slice(k)) term += a.adjoint() * w * a;
        sum += power * term;
      }
      Matrix h = radii::bound_N(r) * id - sum;
      auto v = spectra::psd_check(h, opt.psd_tol);
      rep.add("(iv) resolvent sum vs N(r), r=" + fmt(r), -v.min_eigenvalue,
              opt.psd_tol * linalg::inf_norm_scale(h));
    }
  } else if (norm_a0 < 1.0) {
    rep.note("(iv) skipped: A_(0) not positive semidefinite");
  } else {
    rep.note("(iv) skipped: ||A_(0)|| >= 1");
  }
  rep.finalize();
  return rep;
}

VerificationReport joint_radius_bohr_check(const CoeffSeries& series, int m,
                                           const HypothesisCheck& hyp,
                                           const CheckOptions& opt) {
  require_established(hyp, "joint_radius_bohr_check");
  if (m < 2) throw std::invalid_argument("joint_radius_bohr_check: m must be >= 2");
  if (series.degree() > m - 1) {
    throw std::invalid_argument("joint_radius_bohr_check: degree exceeds m-1");
  }
  const int d = series.coeff_dim();
  const Matrix id = Matrix::Identity(d, d);
  const double norm_one_minus = linalg::operator_norm(Matrix(id - series.constant_term()));
  const double norm_a0 = linalg::operator_norm(series.constant_term());

  VerificationReport rep;
  rep.inequality = "joint_radius_bohr";
  rep.tol = opt.tol;
  rep.level = hyp.level;
  rep.hypothesis = hyp;

  double tm = radii::solve_t(m).value;
  long double sum = 0.0L;
  long double power = 1.0L;
  for (int k = 0; k <= m - 1; ++k) {
    std::vector<Matrix> tuple = adjoint_slice_tuple(series, k);
    auto w = spectra::joint_numerical_radius_stabilized(tuple, opt.stab_tol,
                                                        opt.max_joint_level);
    if (k >= 1) {
      rep.add("joint radius bound k=" + std::to_string(k), w.value,
              2.0 * norm_one_minus * fejer_cos(m, k));
    }
    sum += power * static_cast<long double>(w.value);
    power *= tm;
    if (!w.stabilized) rep.note("joint radius at k=" + std::to_string(k) + " not stabilized");
  }
  rep.add("summed bound at t_" + std::to_string(m), static_cast<double>(sum),
          norm_a0 + norm_one_minus);
  rep.finalize();
  return rep;
}

VerificationReport posi_equivalence_check(const Matrix& p, const std::vector<Matrix>& x,
                                          int iso_level, const CheckOptions& opt) {
  if (p.rows() != p.cols()) throw std::invalid_argument("posi_equivalence_check: P not square");
  const Eigen::Index d = p.rows();
  for (const Matrix& xi : x) {
    if (xi.rows() != d || xi.cols() != d) {
      throw std::invalid_argument("posi_equivalence_check: size mismatch");
    }
  }
  const int m = static_cast<int>(x.size());
  if (m < 1) throw std::invalid_argument("posi_equivalence_check: empty tuple");

  // bordered form M(P, X_i)
  Matrix big = Matrix::Zero((m + 1) * d, (m + 1) * d);
  big.block(0, 0, d, d) = p;
  for (int i = 0; i < m; ++i) {
    big.block(0, (i + 1) * d, d, d) = x[static_cast<std::size_t>(i)].adjoint();
    big.block((i + 1) * d, 0, d, d) = x[static_cast<std::size_t>(i)];
    big.block((i + 1) * d, (i + 1) * d, d, d) = p;
  }
  auto vm = spectra::psd_check(big, opt.psd_tol);

  // two-by-two form with truncated creation isometries
  FockRep rep_iso(m, iso_level);
  Matrix vsum = Matrix::Zero(static_cast<Eigen::Index>(rep_iso.dim) * d,
                             static_cast<Eigen::Index>(rep_iso.dim) * d);
  for (int i = 1; i <= m; ++i) {
    vsum += linalg::kron(fock::left_creation(rep_iso, i).mat, x[static_cast<std::size_t>(i - 1)]);
  }
  Matrix ip = linalg::kron(Matrix::Identity(static_cast<Eigen::Index>(rep_iso.dim),
                                            static_cast<Eigen::Index>(rep_iso.dim)),
                           p);
  Matrix n2 = Matrix::Zero(2 * ip.rows(), 2 * ip.cols());
  n2.topLeftCorner(ip.rows(), ip.cols()) = ip;
  n2.bottomRightCorner(ip.rows(), ip.cols()) = ip;
  n2.topRightCorner(ip.rows(), ip.cols()) = vsum;
  n2.bottomLeftCorner(ip.rows(), ip.cols()) = vsum.adjoint();
  auto vn = spectra::psd_check(n2, opt.psd_tol);

  VerificationReport rep;
  rep.inequality = "posi_equivalence";
  rep.tol = opt.tol;
  rep.level = iso_level;
  rep.hypothesis.kind = HypKind::positive;
  rep.hypothesis.verdict = HypVerdict::section_positive_up_to;
  rep.add("verdict agreement", vm.psd == vn.psd ? 0.0 : 1.0, 0.0);
  rep.note(std::string("M form: ") + (vm.psd ? "PSD" : "NotPSD") +
           " min eig " + fmt(vm.min_eigenvalue));
  rep.note(std::string("N form: ") + (vn.psd ? "PSD" : "NotPSD") +
           " min eig " + fmt(vn.min_eigenvalue));
  rep.finalize();
  return rep;
}

std::pair<MultiToeplitzSection, spectra::PsdVerdict> multi_toeplitz_section(
    const CoeffSeries& series, double r, int q, const HypothesisCheck& hyp,
    const CheckOptions& opt) {
  require_established(hyp, "multi_toeplitz_section");
  if (q < 1) throw std::invalid_argument("multi_toeplitz_section: q must be >= 1");
  if (r < 0.0 || r > 1.0) throw std::invalid_argument("multi_toeplitz_section: r in [0,1]");
  const int d = series.coeff_dim();
  const Matrix c0 = 2.0 * (Matrix::Identity(d, d) - series.constant_term());

  std::vector<Word> ws;
  for (int k = 0; k <= q; ++k) {
    for (auto& w : words::enumerate_words(series.n(), k)) ws.push_back(std::move(w));
  }
  const auto blocks = static_cast<Eigen::Index>(ws.size());
  MultiToeplitzSection sec;
  sec.q = q;
  sec.coeff_dim = d;
  sec.n = series.n();
  sec.entries = Matrix::Zero(blocks * d, blocks * d);

  auto c_of = [&](const Word& w) -> Matrix { return -series.term(w); };
  for (Eigen::Index i = 0; i < blocks; ++i) {
    for (Eigen::Index j = 0; j < blocks; ++j) {
      const Word& alpha = ws[static_cast<std::size_t>(i)];
      const Word& beta = ws[static_cast<std::size_t>(j)];
      Matrix block;
      if (alpha == beta) {
        block = c0;
      } else if (auto omega = words::divide(alpha, beta); omega && !omega->is_identity()) {
        // alpha > beta: r^{|w|} C_(reverse w)
        block = std::pow(r, static_cast<double>(omega->length())) * c_of(omega->reversed());
      } else if (auto omega2 = words::divide(beta, alpha); omega2 && !omega2->is_identity()) {
        block = std::pow(r, static_cast<double>(omega2->length())) *
                Matrix(c_of(omega2->reversed()).adjoint());
      } else {
        block = Matrix::Zero(d, d);
      }
      sec.entries.block(i * d, j * d, d, d) = block;
    }
  }
  auto verdict = spectra::psd_check(sec.entries, opt.psd_tol);
  return {std::move(sec), verdict};
}

VerificationReport harmonic_compare(const CoeffSeries& a, const CoeffSeries& b, int m,
                                    const HypothesisCheck& hyp, const CheckOptions& opt) {
  require_established(hyp, "harmonic_compare");
  if (a.n() != b.n() || a.coeff_dim() != b.coeff_dim()) {
    throw std::invalid_argument("harmonic_compare: shape mismatch");
  }
  const int d = a.coeff_dim();
  const int deg = std::max(a.degree(), b.degree());
  if (m != 0 && (m < 2 || deg > m - 1)) {
    throw std::invalid_argument("harmonic_compare: band does not match m");
  }

  CoeffSeries diff(a.n(), SeriesKind::holomorphic, d);
  {
    std::map<Word, Matrix> terms = b.terms();
    for (const auto& [w, c] : a.terms()) {
      auto it = terms.find(w);
      if (it == terms.end()) {
        terms.emplace(w, Matrix(-c));
      } else {
        it->second -= c;
      }
    }
    for (auto& [w, c] : terms) diff.set_term(w, c);
  }
  const Matrix d0 = diff.constant_term();
  const double norm_d0 = linalg::operator_norm(d0);

  VerificationReport rep;
  rep.inequality = m != 0 ? "harmonic_compare_band" : "harmonic_compare";
  rep.tol = opt.tol;
  rep.level = hyp.level;
  rep.hypothesis = hyp;

  if (norm_d0 <= 1e-12) {
    // equal constant terms force coefficient equality
    double worst = 0.0;
    for (const auto& [w, c] : diff.terms()) {
      if (!w.is_identity()) worst = std::max(worst, c.cwiseAbs().maxCoeff());
    }
    rep.add("coefficient equality (A_0 = B_0 branch)", worst, 0.0);
    rep.finalize();
    return rep;
  }

  for (int k = 1; k <= deg; ++k) {
    Matrix h = norm_d0 * d0 - fock::gram_slice(diff, k);
    auto v = spectra::psd_check(h, opt.psd_tol);
    rep.add("(BA) k=" + std::to_string(k), -v.min_eigenvalue,
            opt.psd_tol * linalg::inf_norm_scale(h));
  }

  // transfer sum: at 1/3 for the unbanded route, and additionally at t_m for
  // bands
  std::vector<double> transfer_r = {1.0 / 3.0};
  double tm = 0.0;
  if (m != 0) {
    tm = radii::solve_t(m).value;
  }
  for (double r : transfer_r) {
    long double lhs = 0.0L, rhs = 0.5L * norm_d0;
    long double power = 1.0L;
    for (int k = 1; k <= deg; ++k) {
      power *= r;
      lhs += power * static_cast<long double>(fock::graded_row_norm(a, k));
      rhs += power * static_cast<long double>(fock::graded_row_norm(b, k));
    }
    rep.add("norm transfer r=" + fmt(r), static_cast<double>(lhs),
            static_cast<double>(rhs));
  }

  if (m != 0) {
    std::vector<double> wa(static_cast<std::size_t>(m), 0.0);
    std::vector<double> wb(static_cast<std::size_t>(m), 0.0);
    for (int k = 1; k <= m - 1; ++k) {
      auto wd = spectra::joint_numerical_radius_stabilized(adjoint_slice_tuple(diff, k),
                                                           opt.stab_tol, opt.max_joint_level);
      rep.add("(Wi) joint radius k=" + std::to_string(k), wd.value,
              norm_d0 * fejer_cos(m, k));
      wa[static_cast<std::size_t>(k)] =
          spectra::joint_numerical_radius_stabilized(adjoint_slice_tuple(a, k), opt.stab_tol,
                                                     opt.max_joint_level)
              .value;
      wb[static_cast<std::size_t>(k)] =
          spectra::joint_numerical_radius_stabilized(adjoint_slice_tuple(b, k), opt.stab_tol,
                                                     opt.max_joint_level)
              .value;
    }
    long double lhs = 0.0L, rhs = 0.5L * norm_d0;
    long double power = 1.0L;
    for (int k = 1; k <= m - 1; ++k) {
      power *= tm;
      lhs += power * wa[static_cast<std::size_t>(k)];
      rhs += power * wb[static_cast<std::size_t>(k)];
    }
    rep.add("joint-radius transfer at t_" + std::to_string(m), static_cast<double>(lhs),
            static_cast<double>(rhs));
  }
  rep.finalize();
  return rep;
}

VerificationReport disc_re_equiv_check(const CoeffSeries& series, int level,
                                       std::span<const double> r_grid,
                                       const CheckOptions& opt) {
  if (series.n() != 1) throw std::invalid_argument("disc_re_equiv_check: n = 1 required");
  require_scalar(series, "disc_re_equiv_check");

  VerificationReport rep;
  rep.inequality = "disc_re_equiv";
  rep.tol = opt.tol;
  rep.level = level;
  rep.hypothesis.kind = HypKind::re_leq_I;
  rep.hypothesis.level = level;
  rep.hypothesis.verdict = HypVerdict::section_positive_up_to;

  constexpr int theta_points = 1024;
  FockRep fr(1, level);
  for (double r : r_grid) {
    double point_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < theta_points; ++j) {
      double theta = 2.0 * std::numbers::pi * j / theta_points;
      cxd z = std::polar(r, theta);
      cxd f = 0.0;
      cxd zp = 1.0;
      for (int k = 0; k <= series.degree(); ++k) {
        f += series.scalar_term(Word(std::vector<words::Letter>(
                 static_cast<std::size_t>(k), words::Letter{1}))) *
             zp;
        zp *= z;
      }
      point_min = std::min(point_min, 1.0 - f.real());
    }
    Matrix fm = assemble(series, fr, r).mat;
    Matrix h = 2.0 * Matrix::Identity(fm.rows(), fm.cols()) - fm - fm.adjoint();
    auto v = spectra::psd_check(h, opt.psd_tol);
    bool point_ok = point_min >= -opt.tol;
    bool agree = point_ok == v.psd;
    rep.add("disc/section agreement r=" + fmt(r), agree ? 0.0 : 1.0, 0.0);
    if (!agree) {
      rep.note("numerical-resolution failure at r=" + fmt(r) + ": disc min " +
               fmt(point_min) + " vs section min eig " + fmt(v.min_eigenvalue) +
               " at level " + std::to_string(level));
    }
  }
  rep.finalize();
  return rep;
}

// ---- trigonometric route -----------------------------------------------------

double TrigPoly::eval(double theta) const {
  cxd sum = coeffs.empty() ? cxd(0, 0) : coeffs[0];
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    sum += coeffs[k] * std::polar(1.0, static_cast<double>(k) * theta);
    sum += std::conj(coeffs[k]) * std::polar(1.0, -static_cast<double>(k) * theta);
  }
  return sum.real();
}

void TrigPoly::validate() const {
  if (!coeffs.empty() && std::abs(coeffs[0].imag()) > 1e-12) {
    throw std::invalid_argument("TrigPoly: coefficients not Hermitian-symmetric (c_0 complex)");
  }
}

VerificationReport trig_dominance_check(const TrigPoly& f, const TrigPoly& g, int m,
                                        std::span<const double> r_grid, bool certified,
                                        const CheckOptions& opt) {
  f.validate();
  g.validate();
  if (m != 0 && m < 2) throw std::invalid_argument("trig_dominance_check: bad m");
  const int deg = std::max(f.degree(), g.degree());
  if (m != 0 && deg > m - 1) {
    throw std::invalid_argument("trig_dominance_check: band exceeds m-1");
  }

  VerificationReport rep;
  rep.inequality = "trig_dominance";
  rep.tol = opt.tol;
  rep.hypothesis.kind = HypKind::pointwise_dominance;

  constexpr int grid = 4096;
  double point_min = std::numeric_limits<double>::infinity();
  double witness_theta = 0.0;
  for (int j = 0; j < grid; ++j) {
    double theta = 2.0 * std::numbers::pi * j / grid;
    double gap = g.eval(theta) - f.eval(theta);
    if (gap < point_min) {
      point_min = gap;
      witness_theta = theta;
    }
  }
  bool dominated = certified || point_min >= -opt.tol;
  rep.hypothesis.verdict =
      dominated ? (certified ? HypVerdict::certified_by_construction
                             : HypVerdict::section_positive_up_to)
                : HypVerdict::violated;
  rep.hypothesis.margin = point_min;

  double rmax = m != 0 ? radii::solve_t(m).value : 1.0 / 3.0;
  auto weighted_sum = [&](const TrigPoly& p, double r) {
    long double sum = 0.5L * p.coeffs[0].real();
    long double power = 1.0L;
    for (int k = 1; k <= p.degree(); ++k) {
      power *= r;
      sum += power * std::abs(p.coeffs[static_cast<std::size_t>(k)]);
    }
    return static_cast<double>(sum);
  };
  bool sum_violated = false;
  for (double r : r_grid) {
    if (r > rmax + 1e-15) continue;
    double lhs = weighted_sum(f, r);
    double rhs = weighted_sum(g, r);
    rep.add("weighted sums r=" + fmt(r), lhs, rhs);
    if (lhs > rhs + opt.tol) sum_violated = true;
  }
  if (sum_violated) {
    // contrapositive: a failed sum forces f > g on a set of positive measure
    double worst_gap = -point_min;
    rep.note("sum inequality failed; pointwise witness theta=" + fmt(witness_theta) +
             " with f-g=" + fmt(worst_gap));
  }
  rep.finalize();
  return rep;
}

}  // namespace ncbohr::ineq
