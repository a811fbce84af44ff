#include "ncbohr/symcalc.hpp"

#include <cmath>
#include <stdexcept>

#include "ncbohr/radii.hpp"

namespace ncbohr::symcalc {

using fock::FockRep;
using fock::SeriesKind;
using ineq::HypothesisCheck;
using ineq::VerificationReport;
using words::Word;

int SymSeries::degree() const {
  int deg = 0;
  for (const auto& [p, a] : terms) deg = std::max(deg, p.order());
  return deg;
}

Matrix SymSeries::term(const MultiIndex& p) const {
  auto it = terms.find(p);
  if (it == terms.end()) return Matrix::Zero(coeff_dim, coeff_dim);
  return it->second;
}

cxd SymSeries::scalar_term(const MultiIndex& p) const { return term(p)(0, 0); }

void SymSeries::set_term(const MultiIndex& p, Matrix coeff) {
  if (p.size() != n) throw std::invalid_argument("SymSeries: exponent vector length mismatch");
  for (int e : p.exponents) {
    if (e < 0) throw std::invalid_argument("SymSeries: negative exponent");
  }
  if (coeff.rows() != coeff_dim || coeff.cols() != coeff_dim) {
    throw std::invalid_argument("SymSeries: coefficient dimension mismatch");
  }
  if (coeff.cwiseAbs().maxCoeff() == 0.0) {
    terms.erase(p);
  } else {
    terms[p] = std::move(coeff);
  }
}

Matrix SymSeries::constant_term() const {
  return term(MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)));
}

void SymSeries::validate() const {
  if (n < 1 || coeff_dim < 1) throw std::invalid_argument("SymSeries: bad shape");
  for (const auto& [p, a] : terms) {
    if (p.size() != n) throw std::invalid_argument("SymSeries: exponent vector length mismatch");
    if (a.rows() != coeff_dim || a.cols() != coeff_dim) {
      throw std::invalid_argument("SymSeries: coefficient dimension mismatch");
    }
  }
  if (band != 0 && degree() > band - 1) {
    throw std::invalid_argument("SymSeries: degree exceeds the declared band");
  }
  // growth gate on the stored degrees
  for (int k = 1; k <= degree(); ++k) {
    Matrix g = weighted_gram_slice(*this, k);
    double norm = std::max(0.0, linalg::max_eigenvalue(g));
    if (std::pow(norm, 1.0 / (2.0 * k)) > 1.0 + 1e-6) {
      throw std::invalid_argument("SymSeries: weighted Gram gate failed at degree " +
                                  std::to_string(k));
    }
  }
}

Matrix weighted_gram_slice(const SymSeries& s, int k) {
  Matrix g = Matrix::Zero(s.coeff_dim, s.coeff_dim);
  for (const auto& [p, a] : s.terms) {
    if (p.order() != k) continue;
    g += static_cast<double>(p.multinomial()) * (a.adjoint() * a);
  }
  return g;
}

Matrix sym_gram_slice(const SymSeries& s, int k) {
  Matrix g = Matrix::Zero(s.coeff_dim, s.coeff_dim);
  for (const auto& [p, a] : s.terms) {
    if (p.order() != k) continue;
    g += (1.0 / static_cast<double>(p.multinomial())) * (a.adjoint() * a);
  }
  return g;
}

CoeffSeries free_lift(const SymSeries& s) {
  s.validate();
  CoeffSeries out(s.n, SeriesKind::holomorphic, s.coeff_dim);
  for (const auto& [p, a] : s.terms) {
    if (p.order() == 0) {
      out.set_term(Word::identity(), a);
      continue;
    }
    double weight = 1.0 / static_cast<double>(p.multinomial());
    for (const Word& alpha : words::lambda_set(p)) {
      out.set_term(alpha, Matrix(weight * a));
    }
  }
  return out;
}

double sym_norm(const SymSeries& s, int level, std::span<const double> r_grid) {
  CoeffSeries lift = free_lift(s);
  if (level < lift.degree()) {
    throw std::invalid_argument("sym_norm: level must cover the series degree");
  }
  FockRep rep(s.n, level);
  double best = 0.0;
  for (double r : r_grid) {
    best = std::max(best, linalg::operator_norm(assemble(lift, rep, r).mat));
  }
  return best;
}

namespace {

void require_commuting(const std::vector<Matrix>& t, const char* what) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      Matrix comm = t[i] * t[j] - t[j] * t[i];
      if (linalg::operator_norm(comm) > 1e-10) {
        throw std::invalid_argument(std::string(what) + ": tuple does not commute");
      }
    }
  }
}

Matrix power_product(const std::vector<Matrix>& t, const MultiIndex& p) {
  const Eigen::Index d = t.empty() ? 1 : t[0].rows();
  Matrix out = Matrix::Identity(d, d);
  for (std::size_t i = 0; i < p.exponents.size(); ++i) {
    for (int j = 0; j < p.exponents[i]; ++j) out = out * t[i];
  }
  return out;
}

}  // namespace

VerificationReport commutative_checks(const SymSeries& s, const CommutativeInputs& in,
                                      const HypothesisCheck& hyp,
                                      const ineq::CheckOptions& opt) {
  if (!hyp.established()) {
    throw std::invalid_argument("commutative_checks: hypothesis not established");
  }
  s.validate();
  const int d = s.coeff_dim;
  const Matrix id = Matrix::Identity(d, d);
  const Matrix a0 = s.constant_term();
  const double norm_a0 = linalg::operator_norm(a0);
  const double norm_one_minus = linalg::operator_norm(Matrix(id - a0));
  const int deg = s.degree();
  const int level = in.level > 0 ? in.level : std::max(1, deg);

  VerificationReport rep;
  rep.inequality = "commutative";
  rep.tol = opt.tol;
  rep.level = level;
  rep.hypothesis = hyp;

  // (i) weighted Gram norms against 2||I - A_0||
  for (int k = 1; k <= deg; ++k) {
    double norm = std::sqrt(std::max(0.0, linalg::max_eigenvalue(sym_gram_slice(s, k))));
    rep.add("(i) gram norm k=" + std::to_string(k), norm, 2.0 * norm_one_minus);
  }

  // (ii) scalar sum at r <= 1/3
  {
    const double r = 1.0 / 3.0;
    long double sum = 0.0L;
    long double power = 1.0L;
    for (int k = 0; k <= deg; ++k) {
      sum += power *
             std::sqrt(std::max(0.0, linalg::max_eigenvalue(sym_gram_slice(s, k))));
      power *= r;
    }
    rep.add("(ii) scalar sum r=1/3", static_cast<double>(sum), norm_a0 + norm_one_minus);
  }

  CoeffSeries lift = free_lift(s);
  FockRep fr(s.n, level);

  // (iii) symmetric tensor bound with a Y family on multi-indices
  if (!in.y_family.empty()) {
    const auto dy = in.y_family.begin()->second.rows();
    long double budget = 0.0L;
    for (int k = 1; k <= deg; ++k) {
      Matrix g = Matrix::Zero(dy, dy);
      for (const auto& [p, y] : in.y_family) {
        if (p.order() != k) continue;
        g += static_cast<double>(p.multinomial()) * (y.adjoint() * y);
      }
      budget += std::sqrt(std::max(0.0, linalg::max_eigenvalue(g)));
    }
    double y0 = 1.0;
    {
      MultiIndex zero(std::vector<int>(static_cast<std::size_t>(s.n), 0));
      auto it = in.y_family.find(zero);
      y0 = it == in.y_family.end() ? 0.0 : linalg::operator_norm(it->second);
    }
    if (y0 > 1.0 + opt.tol || static_cast<double>(budget) > 0.5 + opt.tol) {
      throw std::invalid_argument("commutative_checks: Y budget violated");
    }
    CoeffSeries combined(s.n, SeriesKind::holomorphic, d * static_cast<int>(dy));
    for (const auto& [w, c] : lift.terms()) {
      MultiIndex p = words::letter_counts(w, s.n);
      auto it = in.y_family.find(p);
      if (it == in.y_family.end()) continue;
      combined.set_term(w, linalg::kron(c, it->second));
    }
    auto compressed = fock::symmetric_compress(fr, assemble(combined, fr, 1.0));
    rep.add("(iii) symmetric tensor norm", linalg::operator_norm(compressed.mat), 1.0);
    rep.add("(iii) Y budget", static_cast<double>(budget), 0.5);
  } else {
    rep.note("(iii) skipped: no Y family supplied");
  }

  // (iv) commuting Y substitution at row norm <= 1/3
  if (!in.commuting_y.empty()) {
    require_commuting(in.commuting_y, "commutative_checks (iv)");
    double rn = spectra::row_norm(in.commuting_y);
    if (rn > 1.0 / 3.0 + opt.tol) {
      throw std::invalid_argument("commutative_checks (iv): row norm exceeds 1/3");
    }
    const auto dy = in.commuting_y[0].rows();
    CoeffSeries combined(s.n, SeriesKind::holomorphic, static_cast<int>(dy) * d);
    for (const auto& [w, c] : lift.terms()) {
      Matrix yw = Matrix::Identity(dy, dy);
      for (auto l : w.letters()) yw = yw * in.commuting_y[static_cast<std::size_t>(l - 1)];
      combined.set_term(w, linalg::kron(yw, c));
    }
    auto compressed = fock::symmetric_compress(fr, assemble(combined, fr, 1.0));
    rep.add("(iv) commuting-Y norm", linalg::operator_norm(compressed.mat), 1.0);
  } else {
    rep.note("(iv) skipped: no commuting Y tuple supplied");
  }

  // (v) commuting T sum bound
  if (!in.commuting_t.empty()) {
    require_commuting(in.commuting_t, "commutative_checks (v)");
    double rn = spectra::row_norm(in.commuting_t);
    if (rn > 1.0 / 3.0 + opt.tol) {
      throw std::invalid_argument("commutative_checks (v): row norm exceeds 1/3");
    }
    const auto dt = in.commuting_t[0].rows();
    long double total = 0.0L;
    for (int k = 0; k <= deg; ++k) {
      Matrix sum = Matrix::Zero(dt * d, dt * d);
      for (const auto& [p, a] : s.terms) {
        if (p.order() != k) continue;
        sum += linalg::kron(power_product(in.commuting_t, p), a);
      }
      total += linalg::operator_norm(sum);
    }
    rep.add("(v) commuting-T sum", static_cast<double>(total), norm_a0 + norm_one_minus);
  } else {
    rep.note("(v) skipped: no commuting T tuple supplied");
  }

  // scalar Bohr corollary on sphere samples at 1/3 and t_m
  if (d == 1 && !in.lambda_directions.empty()) {
    std::vector<double> radii_list = {1.0 / 3.0};
    if (s.band != 0) radii_list.push_back(radii::solve_t(s.band).value);
    double worst = 0.0;
    for (const auto& dir : in.lambda_directions) {
      if (dir.size() != s.n) {
        throw std::invalid_argument("commutative_checks: lambda sample has wrong length");
      }
      Eigen::VectorXcd unit = dir / dir.norm();
      for (double rho : radii_list) {
        Eigen::VectorXcd lambda = rho * unit;
        long double total = 0.0L;
        for (int k = 0; k <= deg; ++k) {
          cxd inner = 0.0;
          for (const auto& [p, a] : s.terms) {
            if (p.order() != k) continue;
            cxd mono = 1.0;
            for (int i = 0; i < s.n; ++i) {
              for (int j = 0; j < p.exponents[static_cast<std::size_t>(i)]; ++j) {
                mono *= lambda(i);
              }
            }
            inner += mono * std::abs(a(0, 0));
          }
          total += std::abs(inner);
        }
        worst = std::max(worst, static_cast<double>(total));
      }
    }
    rep.add("scalar Bohr corollary (sphere samples)", worst, 1.0);
  } else if (d == 1) {
    rep.note("scalar corollary skipped: no lambda samples supplied");
  }

  rep.finalize();
  return rep;
}

}  // namespace ncbohr::symcalc
