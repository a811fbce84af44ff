#pragma once

#include <map>
#include <span>
#include <vector>

#include "ncbohr/fock.hpp"
#include "ncbohr/inequalities.hpp"

namespace ncbohr::symcalc {

using fock::CoeffSeries;
using fock::Matrix;
using linalg::cxd;
using words::MultiIndex;

/// Multi-index-coefficient series f(lambda) = sum lambda^p A_(p); band = 0
/// marks the unbanded case, otherwise degree <= band - 1.
struct SymSeries {
  int n = 1;
  int coeff_dim = 1;
  int band = 0;
  std::map<MultiIndex, Matrix> terms;

  int degree() const;
  Matrix term(const MultiIndex& p) const;
  cxd scalar_term(const MultiIndex& p) const;
  void set_term(const MultiIndex& p, Matrix coeff);
  Matrix constant_term() const;
  void validate() const;
};

/// sum_{|p|=k} (|p|!/p!) A_(p)^* A_(p): the weighted Gram controlling the
/// growth gate.
Matrix weighted_gram_slice(const SymSeries& s, int k);

/// sum_{|p|=k} (p!/|p|!) A_(p)^* A_(p): equals the free lift's degree-k Gram.
Matrix sym_gram_slice(const SymSeries& s, int k);

/// Free series with C_(alpha) = (p!/|p|!) A_(p) on each alpha in Lambda_p.
CoeffSeries free_lift(const SymSeries& s);

/// max over the grid of ||assemble(free_lift(s), L, r)||: a certified lower
/// bound of the symmetric sup-norm with (L, grid) provenance.
double sym_norm(const SymSeries& s, int level, std::span<const double> r_grid);

struct CommutativeInputs {
  std::map<MultiIndex, Matrix> y_family;           // item (iii); empty skips
  std::vector<Matrix> commuting_y;                 // item (iv); empty skips
  std::vector<Matrix> commuting_t;                 // item (v); empty skips
  std::vector<Eigen::VectorXcd> lambda_directions; // scalar corollary samples
  int level = 0;                                   // 0 = use the series degree
};

ineq::VerificationReport commutative_checks(const SymSeries& s, const CommutativeInputs& in,
                                            const ineq::HypothesisCheck& hyp,
                                            const ineq::CheckOptions& opt = {});

}  // namespace ncbohr::symcalc
