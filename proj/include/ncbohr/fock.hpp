#pragma once

#include <map>
#include <optional>
#include <string>

#include "ncbohr/linalg.hpp"
#include "ncbohr/words.hpp"

namespace ncbohr::fock {

using linalg::cxd;
using linalg::Matrix;
using linalg::Vector;
using words::MultiIndex;
using words::Word;

/// Hard guard on the number of basis words in a truncated representation.
std::size_t max_basis_words();

/// Guard on the side length of dense assembled operators (basis words times
/// coefficient dimension). Overridable through NCBOHR_MAX_DIM.
std::size_t max_dense_dim();

/// Truncated full Fock space at level L: basis {e_alpha : |alpha| <= L} in
/// level-major order, dim = sum_{k<=L} n^k.
struct FockRep {
  int n = 1;
  int level = 0;
  std::size_t dim = 1;

  FockRep(int n_, int level_);

  std::size_t rank(const Word& w) const { return words::rank(n, w); }
  Word unrank(std::size_t i) const { return words::unrank(n, i); }
};

enum class SeriesKind { holomorphic, harmonic, polynomial };

std::string to_string(SeriesKind k);
SeriesKind series_kind_from_string(const std::string& s);

/// Finitely supported word-indexed coefficient family with d x d matrix
/// values (d = 1 for scalars). Harmonic kind requires a selfadjoint constant
/// coefficient.
class CoeffSeries {
 public:
  CoeffSeries(int n, SeriesKind kind, int coeff_dim);

  int n() const { return n_; }
  SeriesKind kind() const { return kind_; }
  int coeff_dim() const { return dim_; }
  int degree() const;

  const std::map<Word, Matrix>& terms() const { return terms_; }
  void set_term(const Word& w, Matrix coeff);
  void set_scalar_term(const Word& w, cxd value);
  /// Coefficient of w (zero matrix when absent).
  Matrix term(const Word& w) const;
  cxd scalar_term(const Word& w) const;
  bool has_term(const Word& w) const { return terms_.count(w) > 0; }

  Matrix constant_term() const { return term(Word::identity()); }

  /// Terms of exact degree k.
  std::map<Word, Matrix> slice(int k) const;

  void validate() const;

  CoeffSeries with_kind(SeriesKind k) const;

 private:
  int n_;
  SeriesKind kind_;
  int dim_;
  std::map<Word, Matrix> terms_;
};

/// Q*Q positivity witness: the coefficients of a designated polynomial Q.
struct QCertificate {
  std::map<Word, Matrix> q_terms;
};

struct AssembledOperator {
  Matrix mat;
  int n = 1;
  int level = 0;
  double radius = 1.0;
  int coeff_dim = 1;
  std::string label;
};

/// S_i: e_beta -> e_{g_i beta} for |beta| < L, kills the top level.
AssembledOperator left_creation(const FockRep& rep, int i);
/// R_i: e_beta -> e_{beta g_i} for |beta| < L; equals U* S_i U.
AssembledOperator right_creation(const FockRep& rep, int i);
/// Flip unitary e_alpha -> e_{alpha reversed}; an involutive permutation.
AssembledOperator flip_unitary(const FockRep& rep);

/// Holomorphic/polynomial: sum r^{|a|} S_a (x) A_a. Harmonic: the selfadjoint
/// sum with the adjoint part and the identity-tensor constant term.
AssembledOperator assemble(const CoeffSeries& series, const FockRep& rep, double r);

/// Exact norm of the degree-k slice of sum S_a (x) A_a: Euclidean norm of the
/// coefficients for scalars, ||sum A*A||^{1/2} for matrix coefficients.
double graded_row_norm(const CoeffSeries& series, int k);

/// sum_{|alpha|=k} A_(alpha)^* A_(alpha) for the degree-k slice.
Matrix gram_slice(const CoeffSeries& series, int k);

/// Multi-indices of order <= L in the symmetric-basis order.
std::vector<MultiIndex> symmetric_basis_indices(const FockRep& rep);

/// Isometry whose columns are the normalized Lambda_p indicator vectors
/// (sum_{a in Lambda_p} e_a)/sqrt(|Lambda_p|), |p| <= L.
Matrix symmetric_isometry(const FockRep& rep);

/// Compression W* X W to the symmetric subspace; block_dim tells how many
/// coefficient dimensions ride along each basis vector.
AssembledOperator symmetric_compress(const FockRep& rep, const AssembledOperator& x);

}  // namespace ncbohr::fock
