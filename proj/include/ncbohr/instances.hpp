#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "ncbohr/fock.hpp"
#include "ncbohr/symcalc.hpp"

namespace ncbohr::harness {

using fock::CoeffSeries;
using fock::Matrix;
using fock::QCertificate;
using words::MultiIndex;
using words::Word;

struct Provenance {
  std::uint64_t seed = 0;
  std::string generator;
  double margin = 0.0;
};

/// On-disk instance: a coefficient family plus the hypothesis it claims and,
/// when generated, the Q*Q witness that certifies it.
struct InstanceFile {
  int schema_version = 1;
  int n = 1;
  std::string kind;        // holomorphic | harmonic | polynomial | symmetric
  int coeff_dim = 1;
  std::string hypothesis;  // re_leq_I | positive | norm_leq_1 | dominated
  std::optional<CoeffSeries> series;
  std::optional<symcalc::SymSeries> sym;
  std::optional<QCertificate> certificate;
  std::optional<std::map<MultiIndex, Matrix>> sym_certificate;
  std::optional<Provenance> provenance;

  const CoeffSeries& free_series() const;
  const symcalc::SymSeries& sym_series() const;

  /// Lift of the symmetric certificate into free q-terms.
  std::optional<QCertificate> lifted_certificate() const;
};

nlohmann::json instance_to_json(const InstanceFile& inst);
InstanceFile instance_from_json(const nlohmann::json& j);
std::string serialize_instance(const InstanceFile& inst);
InstanceFile load_instance(const std::string& path);
void save_instance(const InstanceFile& inst, const std::string& path);

std::uint64_t fnv1a(std::string_view data);
std::string instance_digest(const InstanceFile& inst);

// ---- certified generators --------------------------------------------------

/// Positive harmonic band Q*Q with embedded certificate.
InstanceFile generate_qq_positive(int n, int degree, std::uint64_t seed, int d = 1);

/// Holomorphic polynomial with F(0) = a0 I >= 0 and 2I - F - F* = Q*Q exactly.
InstanceFile generate_re_leq_I(int n, int degree, std::uint64_t seed, int d = 1,
                               double margin = 0.05,
                               std::optional<double> a0_override = std::nullopt);

/// Dominated harmonic pair (A, B = A + Q*Q); zero_gap forces the degenerate
/// A = B branch.
std::pair<InstanceFile, InstanceFile> generate_dominated_pair(int n, int degree,
                                                              std::uint64_t seed, int d = 1,
                                                              bool zero_gap = false);

/// Selfadjoint harmonic contraction I - Q*Q / nu with nu an exact upper bound
/// of ||Q(S)||^2 (sum of graded slice norms, squared).
InstanceFile generate_harmonic_contraction(int n, int degree, std::uint64_t seed);

/// Random polynomial scaled by its section norm at level = degree.
InstanceFile generate_contractive(int n, int degree, std::uint64_t seed, int d = 1);

/// Scalar symmetric instance whose free lift satisfies Re F(rS) <= I with an
/// exact lifted certificate.
InstanceFile generate_sym_certified(int n, int degree, std::uint64_t seed);

// ---- default verification inputs --------------------------------------------

/// Y_alpha = Y^alpha from a seeded tuple with row norm exactly 1/3, so the
/// budget telescopes to sum_k 3^{-k} <= 1/2.
std::map<Word, Matrix> default_y_family(int n, int degree, std::uint64_t seed, int dy);

/// Seeded commuting tuples, multi-index Y family at 90% of the budget, and
/// unit sphere directions for the scalar corollary.
symcalc::CommutativeInputs default_commutative_inputs(const symcalc::SymSeries& s,
                                                      std::uint64_t seed,
                                                      int sphere_samples = 50);

}  // namespace ncbohr::harness
