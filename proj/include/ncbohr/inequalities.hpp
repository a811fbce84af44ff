#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncbohr/fock.hpp"
#include "ncbohr/spectra.hpp"

namespace ncbohr::ineq {

using fock::CoeffSeries;
using fock::Matrix;
using fock::QCertificate;
using linalg::cxd;
using words::Word;

/// Coefficient band of Q*Q via the word-divisibility expansion
/// S_alpha^* S_beta: c_gamma = sum_alpha q_alpha^* q_{alpha gamma}, with the
/// constant c_0 = sum q^* q included under the identity word.
std::map<Word, Matrix> qq_band(const std::map<Word, Matrix>& q, int coeff_dim);

enum class HypVerdict { certified_by_construction, section_positive_up_to, violated };
enum class HypKind { re_leq_I, norm_leq_1, positive, pointwise_dominance };

/// Trichotomy verdict for an operator hypothesis: violations at a finite
/// section are definitive, section positivity is necessary-condition evidence
/// only, certificates are exact.
struct HypothesisCheck {
  HypKind kind = HypKind::re_leq_I;
  int level = 0;
  double r = 0.0;       // radius at violation, else last radius examined
  HypVerdict verdict = HypVerdict::section_positive_up_to;
  double margin = 0.0;  // worst min-eigenvalue (or norm slack) observed

  bool established() const { return verdict != HypVerdict::violated; }
};

std::string to_string(HypVerdict v);
std::string to_string(HypKind k);

struct Margin {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return rhs - lhs; }
};

struct VerificationReport {
  std::string inequality;
  std::string digest;
  std::vector<Margin> margins;
  std::vector<std::string> notes;
  double tol = 1e-8;
  int level = 0;
  HypothesisCheck hypothesis;
  bool pass = true;

  void add(std::string check, double lhs, double rhs);
  void note(std::string text);
  void finalize();  // pass iff every slack >= -tol
  double worst_slack() const;
};

struct CheckOptions {
  double tol = 1e-8;       // inequality slack on unit-normalized instances
  double psd_tol = 1e-9;   // scaled PSD tolerance
  std::uint64_t seed = 20240517;
  int spot_checks = 3;     // random row-contraction spot checks
  double stab_tol = 1e-3;  // joint-radius stabilization
  int max_joint_level = 24;
};

// ---- hypothesis machinery ------------------------------------------------

/// Re F(rS) <= I checked by sections of 2I - F(rS) - F(rS)^*, or validated
/// exactly from a Q*Q certificate (2I - F - F^* = Q^*Q as coefficients).
HypothesisCheck check_re_leq_I(const CoeffSeries& series, int level,
                               std::span<const double> r_grid,
                               const QCertificate* cert = nullptr,
                               const CheckOptions& opt = {});

/// Positivity of a selfadjoint harmonic band, section-checked or certified
/// as series == Q^*Q.
HypothesisCheck check_positive(const CoeffSeries& series, int level,
                               std::span<const double> r_grid,
                               const QCertificate* cert = nullptr,
                               const CheckOptions& opt = {});

/// ||assemble(series, L, r)|| <= 1 on an r-grid (banded callers use r = 1).
HypothesisCheck check_norm_leq_1(const CoeffSeries& series, int level,
                                 std::span<const double> r_grid,
                                 const CheckOptions& opt = {});

/// H_A(rS) <= H_B(rS) section-checked on a grid, or certified via
/// B = A + Q^*Q.
HypothesisCheck check_dominance(const CoeffSeries& a, const CoeffSeries& b, int level,
                                std::span<const double> r_grid,
                                const QCertificate* cert = nullptr,
                                const CheckOptions& opt = {});

// ---- scalar-coefficient verifiers ----------------------------------------

/// Coefficient bounds (sum_{|a|=k} |a|^2)^{1/2} <= a_0 cos(pi/(floor((m-1)/k)+2))
/// for a positive harmonic band of width m-1.
VerificationReport fejer_bound_check(const CoeffSeries& series, int m,
                                     const HypothesisCheck& hyp,
                                     const CheckOptions& opt = {});

/// sum_k r^k (degree-k coefficient Euclidean norm); operator coefficients
/// use the Gram operator norm.
double bohr_majorant(const CoeffSeries& series, double r);

VerificationReport bohr_polynomial_check(const CoeffSeries& series, int m,
                                         const HypothesisCheck& hyp,
                                         const CheckOptions& opt = {});

VerificationReport boh2_check(const CoeffSeries& series, const HypothesisCheck& hyp,
                              const CheckOptions& opt = {});

/// Selfadjoint harmonic bounds; m >= 2 for bands, m = 0 for the unbanded
/// (m = infinity) statement.
VerificationReport harmonic_check(const CoeffSeries& series, int m,
                                  const HypothesisCheck& hyp, const CheckOptions& opt = {});

// ---- operator-coefficient verifiers --------------------------------------

/// Positivity of the bordered matrix with diagonal 2(I - A_0) and border row
/// [A_a^* : |a| = k].
spectra::PsdVerdict pk_positivity(const CoeffSeries& series, int k,
                                  const HypothesisCheck& hyp, const CheckOptions& opt = {});

VerificationReport tensor_bound_check(const CoeffSeries& series,
                                      const std::map<Word, Matrix>& y, int level,
                                      const HypothesisCheck& hyp,
                                      const CheckOptions& opt = {});

VerificationReport bohr_gen_checks(const CoeffSeries& series, std::span<const double> r_grid,
                                   const HypothesisCheck& hyp, const CheckOptions& opt = {});

VerificationReport oper_gen_checks(const CoeffSeries& series, int level,
                                   std::span<const double> r_grid,
                                   const HypothesisCheck& hyp, const CheckOptions& opt = {});

VerificationReport joint_radius_bohr_check(const CoeffSeries& series, int m,
                                           const HypothesisCheck& hyp,
                                           const CheckOptions& opt = {});

/// Lemma-style equivalence of the bordered form M(P, X_i) and the
/// two-by-two form N(P, X_i) built from creation-operator isometries.
VerificationReport posi_equivalence_check(const Matrix& p, const std::vector<Matrix>& x,
                                          int iso_level = 1, const CheckOptions& opt = {});

struct MultiToeplitzSection {
  int q = 0;
  int coeff_dim = 1;
  int n = 1;
  Matrix entries;
};

/// Kernel section [K_{F,r}(alpha,beta)] for |alpha|,|beta| <= q with
/// C_0 = 2(I - A_0), C_a = -A_a, quotient words reversed, plus its PSD
/// verdict.
std::pair<MultiToeplitzSection, spectra::PsdVerdict> multi_toeplitz_section(
    const CoeffSeries& series, double r, int q, const HypothesisCheck& hyp,
    const CheckOptions& opt = {});

/// Wiener/Bohr transfer between dominated harmonic series; m >= 2 adds the
/// banded joint-radius route, m = 0 runs the unbanded route only.
VerificationReport harmonic_compare(const CoeffSeries& a, const CoeffSeries& b, int m,
                                    const HypothesisCheck& hyp, const CheckOptions& opt = {});

/// n = 1 cross-validation of the disc picture against shift sections.
VerificationReport disc_re_equiv_check(const CoeffSeries& series, int level,
                                       std::span<const double> r_grid,
                                       const CheckOptions& opt = {});

/// Real trigonometric polynomial sum_{|k|<=deg} c_k e^{ik theta} stored by
/// nonnegative frequencies; c_{-k} = conj(c_k).
struct TrigPoly {
  std::vector<cxd> coeffs;  // coeffs[k] for k >= 0; coeffs[0] real

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double theta) const;
  void validate() const;
};

VerificationReport trig_dominance_check(const TrigPoly& f, const TrigPoly& g, int m,
                                        std::span<const double> r_grid, bool certified,
                                        const CheckOptions& opt = {});

}  // namespace ncbohr::ineq
