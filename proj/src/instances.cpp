#include "ncbohr/instances.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ncbohr/inequalities.hpp"
#include "ncbohr/spectra.hpp"

namespace ncbohr::harness {

using json = nlohmann::json;
using fock::SeriesKind;
using linalg::cxd;

namespace {

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(json{{"im", m(i, j).imag()}, {"re", m(i, j).real()}});
    }
  }
  return entries;
}

Matrix matrix_from_json(const json& entries, int d) {
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * d) {
    throw std::invalid_argument("instance JSON: coefficient entry count mismatch");
  }
  Matrix m(d, d);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const json& e = entries[idx++];
      m(i, j) = cxd(e.at("re").get<double>(), e.at("im").get<double>());
    }
  }
  return m;
}

json word_to_json(const Word& w) {
  json a = json::array();
  for (auto l : w.letters()) a.push_back(static_cast<int>(l));
  return a;
}

Word word_from_json(const json& a) {
  std::vector<words::Letter> letters;
  for (const auto& v : a) letters.push_back(static_cast<words::Letter>(v.get<int>()));
  return Word(std::move(letters));
}

json terms_to_json(const std::map<Word, Matrix>& terms) {
  json arr = json::array();
  for (const auto& [w, c] : terms) {
    arr.push_back(json{{"coeff", matrix_to_json(c)}, {"word", word_to_json(w)}});
  }
  return arr;
}

json sym_terms_to_json(const std::map<MultiIndex, Matrix>& terms) {
  json arr = json::array();
  for (const auto& [p, c] : terms) {
    arr.push_back(json{{"coeff", matrix_to_json(c)}, {"exponents", p.exponents}});
  }
  return arr;
}

std::map<Word, Matrix> terms_from_json(const json& arr, int d) {
  std::map<Word, Matrix> out;
  for (const auto& e : arr) {
    out.emplace(word_from_json(e.at("word")), matrix_from_json(e.at("coeff"), d));
  }
  return out;
}

std::map<MultiIndex, Matrix> sym_terms_from_json(const json& arr, int d) {
  std::map<MultiIndex, Matrix> out;
  for (const auto& e : arr) {
    out.emplace(MultiIndex(e.at("exponents").get<std::vector<int>>()),
                matrix_from_json(e.at("coeff"), d));
  }
  return out;
}

}  // namespace

const CoeffSeries& InstanceFile::free_series() const {
  if (!series) throw std::invalid_argument("instance carries no free coefficient series");
  return *series;
}

const symcalc::SymSeries& InstanceFile::sym_series() const {
  if (!sym) throw std::invalid_argument("instance carries no symmetric series");
  return *sym;
}

std::optional<QCertificate> InstanceFile::lifted_certificate() const {
  if (certificate) return certificate;
  if (!sym_certificate) return std::nullopt;
  QCertificate cert;
  for (const auto& [p, c] : *sym_certificate) {
    if (p.order() == 0) {
      cert.q_terms.emplace(Word::identity(), c);
      continue;
    }
    double weight = 1.0 / static_cast<double>(p.multinomial());
    for (const Word& alpha : words::lambda_set(p)) {
      cert.q_terms.emplace(alpha, Matrix(weight * c));
    }
  }
  return cert;
}

json instance_to_json(const InstanceFile& inst) {
  json j;
  j["schema_version"] = inst.schema_version;
  j["n"] = inst.n;
  j["kind"] = inst.kind;
  j["coeff_dim"] = inst.coeff_dim;
  j["hypothesis"] = inst.hypothesis;
  if (inst.kind == "symmetric") {
    const auto& s = inst.sym_series();
    j["band"] = s.band;
    j["terms"] = sym_terms_to_json(s.terms);
    if (inst.sym_certificate) {
      j["certificate"] = json{{"q_terms", sym_terms_to_json(*inst.sym_certificate)}};
    }
  } else {
    j["terms"] = terms_to_json(inst.free_series().terms());
    if (inst.certificate) {
      j["certificate"] = json{{"q_terms", terms_to_json(inst.certificate->q_terms)}};
    }
  }
  if (inst.provenance) {
    j["provenance"] = json{{"generator", inst.provenance->generator},
                           {"margin", inst.provenance->margin},
                           {"seed", inst.provenance->seed}};
  }
  return j;
}

InstanceFile instance_from_json(const json& j) {
  InstanceFile inst;
  inst.schema_version = j.at("schema_version").get<int>();
  if (inst.schema_version != 1) {
    throw std::invalid_argument("unsupported instance schema version");
  }
  inst.n = j.at("n").get<int>();
  inst.kind = j.at("kind").get<std::string>();
  inst.coeff_dim = j.at("coeff_dim").get<int>();
  inst.hypothesis = j.value("hypothesis", std::string{});
  if (inst.kind == "symmetric") {
    symcalc::SymSeries s;
    s.n = inst.n;
    s.coeff_dim = inst.coeff_dim;
    s.band = j.value("band", 0);
    for (auto& [p, c] : sym_terms_from_json(j.at("terms"), inst.coeff_dim)) s.set_term(p, c);
    s.validate();
    inst.sym = std::move(s);
    if (j.contains("certificate")) {
      inst.sym_certificate =
          sym_terms_from_json(j.at("certificate").at("q_terms"), inst.coeff_dim);
    }
  } else {
    CoeffSeries s(inst.n, fock::series_kind_from_string(inst.kind), inst.coeff_dim);
    for (auto& [w, c] : terms_from_json(j.at("terms"), inst.coeff_dim)) s.set_term(w, c);
    s.validate();
    inst.series = std::move(s);
    if (j.contains("certificate")) {
      QCertificate cert;
      cert.q_terms = terms_from_json(j.at("certificate").at("q_terms"), inst.coeff_dim);
      inst.certificate = std::move(cert);
    }
  }
  if (j.contains("provenance")) {
    Provenance p;
    p.seed = j.at("provenance").at("seed").get<std::uint64_t>();
    p.generator = j.at("provenance").at("generator").get<std::string>();
    p.margin = j.at("provenance").at("margin").get<double>();
    inst.provenance = std::move(p);
  }
  return inst;
}

std::string serialize_instance(const InstanceFile& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  json j;
  in >> j;
  return instance_from_json(j);
}

void save_instance(const InstanceFile& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write instance file: " + path);
  out << serialize_instance(inst);
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string instance_digest(const InstanceFile& inst) {
  std::ostringstream os;
  os << std::hex << fnv1a(serialize_instance(inst));
  return os.str();
}

// ---- generators --------------------------------------------------------------

namespace {

Matrix random_matrix(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = cxd(gauss(rng), gauss(rng));
  }
  return m;
}

/// Sparse random support: the identity word plus up to `per_level` words per
/// degree 1..degree.
std::map<Word, Matrix> random_q(std::mt19937_64& rng, int n, int degree, int d,
                                int per_level = 4) {
  std::map<Word, Matrix> q;
  q.emplace(Word::identity(), random_matrix(rng, d));
  for (int k = 1; k <= degree; ++k) {
    std::size_t level_count = 1;
    for (int i = 0; i < k; ++i) level_count *= static_cast<std::size_t>(n);
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(per_level), level_count);
    std::set<std::size_t> chosen;
    std::uniform_int_distribution<std::size_t> pick(0, level_count - 1);
    while (chosen.size() < take) chosen.insert(pick(rng));
    for (std::size_t off : chosen) {
      Word w = words::unrank(n, words::level_offset(n, k) + off);
      q.emplace(w, random_matrix(rng, d));
    }
  }
  return q;
}

double scalar_slice_norm(const std::map<Word, Matrix>& q, int k) {
  double s = 0.0;
  for (const auto& [w, c] : q) {
    if (static_cast<int>(w.length()) == k) s += std::norm(c(0, 0));
  }
  return std::sqrt(s);
}

int map_degree(const std::map<Word, Matrix>& q) {
  int deg = 0;
  for (const auto& [w, c] : q) deg = std::max<int>(deg, static_cast<int>(w.length()));
  return deg;
}

}  // namespace

InstanceFile generate_qq_positive(int n, int degree, std::uint64_t seed, int d) {
  if (degree < 1) throw std::invalid_argument("generate_qq_positive: degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::map<Word, Matrix> q = random_q(rng, n, degree, d);
  std::map<Word, Matrix> band = ineq::qq_band(q, d);

  CoeffSeries series(n, SeriesKind::harmonic, d);
  for (const auto& [w, c] : band) series.set_term(w, c);

  InstanceFile inst;
  inst.n = n;
  inst.kind = "harmonic";
  inst.coeff_dim = d;
  inst.hypothesis = "positive";
  inst.series = std::move(series);
  inst.certificate = QCertificate{std::move(q)};
  inst.provenance = Provenance{seed, "qq_positive", 0.0};
  return inst;
}

InstanceFile generate_re_leq_I(int n, int degree, std::uint64_t seed, int d, double margin,
                               std::optional<double> a0_override) {
  if (margin <= 0.0 || margin >= 1.0) {
    throw std::invalid_argument("generate_re_leq_I: margin must lie in (0,1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0 - margin);
  double a0 = a0_override ? *a0_override : unif(rng);
  if (a0 < 0.0 || a0 > 1.0) throw std::invalid_argument("generate_re_leq_I: a0 out of [0,1]");

  CoeffSeries series(n, SeriesKind::polynomial, d);
  series.set_scalar_term(Word::identity(), a0);
  QCertificate cert;

  if (a0 < 1.0) {
    std::map<Word, Matrix> q = random_q(rng, n, degree, d);
    // right-normalize so that sum q*q = 2(1 - a0) I exactly
    Matrix g = Matrix::Zero(d, d);
    for (const auto& [w, c] : q) g += c.adjoint() * c;
    double gmin = linalg::min_eigenvalue(g);
    if (gmin <= 1e-10) throw std::invalid_argument("generate_re_leq_I: infeasible normalization");
    Matrix scale = std::sqrt(2.0 * (1.0 - a0)) *
                   linalg::psd_sqrt(linalg::hermitian_inverse(g));
    for (auto& [w, c] : q) c = c * scale;
    std::map<Word, Matrix> band = ineq::qq_band(q, d);
    for (const auto& [w, c] : band) {
      if (!w.is_identity()) series.set_term(w, Matrix(-c));
    }
    cert.q_terms = std::move(q);
  }
  // a0 == 1: F = I with the empty certificate (2I - F - F* = 0 = Q*Q)

  InstanceFile inst;
  inst.n = n;
  inst.kind = "polynomial";
  inst.coeff_dim = d;
  inst.hypothesis = "re_leq_I";
  inst.series = std::move(series);
  inst.certificate = std::move(cert);
  inst.provenance = Provenance{seed, "re_leq_I", margin};
  return inst;
}

std::pair<InstanceFile, InstanceFile> generate_dominated_pair(int n, int degree,
                                                              std::uint64_t seed, int d,
                                                              bool zero_gap) {
  std::mt19937_64 rng(seed);
  CoeffSeries a(n, SeriesKind::harmonic, d);
  {
    Matrix a0 = random_matrix(rng, d);
    a.set_term(Word::identity(), Matrix(0.5 * (a0 + a0.adjoint())));
    std::map<Word, Matrix> body = random_q(rng, n, degree, d, 3);
    for (const auto& [w, c] : body) {
      if (!w.is_identity()) {
        a.set_term(w, Matrix(std::pow(0.4, static_cast<double>(w.length())) * c));
      }
    }
  }

  CoeffSeries b = a;
  QCertificate cert;
  if (!zero_gap) {
    std::map<Word, Matrix> q = random_q(rng, n, degree, d, 3);
    for (auto& [w, c] : q) c *= 0.5;
    for (const auto& [w, c] : ineq::qq_band(q, d)) {
      b.set_term(w, Matrix(b.term(w) + c));
    }
    cert.q_terms = std::move(q);
  }

  InstanceFile lower;
  lower.n = n;
  lower.kind = "harmonic";
  lower.coeff_dim = d;
  lower.hypothesis = "dominated";
  lower.series = std::move(a);
  lower.provenance = Provenance{seed, "dominated_pair_lower", 0.0};

  InstanceFile upper;
  upper.n = n;
  upper.kind = "harmonic";
  upper.coeff_dim = d;
  upper.hypothesis = "dominates";
  upper.series = std::move(b);
  upper.certificate = std::move(cert);
  upper.provenance = Provenance{seed, "dominated_pair_upper", 0.0};
  return {std::move(lower), std::move(upper)};
}

InstanceFile generate_harmonic_contraction(int n, int degree, std::uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("generate_harmonic_contraction: degree >= 1");
  std::mt19937_64 rng(seed);
  std::map<Word, Matrix> q = random_q(rng, n, degree, 1);
  std::map<Word, Matrix> band = ineq::qq_band(q, 1);

  // nu = (sum_k ||q slice||_2)^2 >= ||Q(S)||^2, so 0 <= Q*Q/nu <= I exactly
  double sigma = 0.0;
  for (int k = 0; k <= map_degree(q); ++k) sigma += scalar_slice_norm(q, k);
  double nu = sigma * sigma;

  CoeffSeries series(n, SeriesKind::harmonic, 1);
  for (const auto& [w, c] : band) {
    cxd value = -c(0, 0) / nu;
    if (w.is_identity()) value = 1.0 - c(0, 0).real() / nu;
    series.set_scalar_term(w, value);
  }

  InstanceFile inst;
  inst.n = n;
  inst.kind = "harmonic";
  inst.coeff_dim = 1;
  inst.hypothesis = "norm_leq_1";
  inst.series = std::move(series);
  inst.certificate = QCertificate{std::move(q)};
  inst.provenance = Provenance{seed, "harmonic_contraction", 0.0};
  return inst;
}

InstanceFile generate_contractive(int n, int degree, std::uint64_t seed, int d) {
  if (degree < 1) throw std::invalid_argument("generate_contractive: degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::map<Word, Matrix> g = random_q(rng, n, degree, d);
  CoeffSeries raw(n, SeriesKind::polynomial, d);
  for (const auto& [w, c] : g) raw.set_term(w, c);
  fock::FockRep rep(n, degree);
  double s = linalg::operator_norm(assemble(raw, rep, 1.0).mat);
  if (s <= 1e-12) throw std::invalid_argument("generate_contractive: degenerate draw");

  CoeffSeries series(n, SeriesKind::polynomial, d);
  for (const auto& [w, c] : g) series.set_term(w, Matrix(c / s));

  InstanceFile inst;
  inst.n = n;
  inst.kind = "polynomial";
  inst.coeff_dim = d;
  inst.hypothesis = "norm_leq_1";
  inst.series = std::move(series);
  inst.provenance = Provenance{seed, "contractive_section_normalized", 0.0};
  return inst;
}

InstanceFile generate_sym_certified(int n, int degree, std::uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("generate_sym_certified: degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 0.9);
  double a0 = unif(rng);

  // commutative q, then the lift normalization sum |q_alpha|^2 = 2(1 - a0)
  std::map<MultiIndex, Matrix> qsym;
  for (int k = 0; k <= degree; ++k) {
    for (const MultiIndex& p : words::enumerate_multi_indices(n, k)) {
      Matrix c(1, 1);
      c(0, 0) = cxd(gauss(rng), gauss(rng));
      qsym.emplace(p, c);
    }
  }
  double total = 0.0;
  for (const auto& [p, c] : qsym) {
    double mult = static_cast<double>(p.multinomial());
    // |Lambda_p| words each carrying (p!/|p|!) q_p
    total += mult * std::norm(c(0, 0) / mult);
  }
  double t = std::sqrt(2.0 * (1.0 - a0) / total);
  for (auto& [p, c] : qsym) c *= t;

  // free band of the lifted Q is fiber-constant; transport it back
  QCertificate lifted;
  for (const auto& [p, c] : qsym) {
    if (p.order() == 0) {
      lifted.q_terms.emplace(Word::identity(), c);
      continue;
    }
    double weight = 1.0 / static_cast<double>(p.multinomial());
    for (const Word& alpha : words::lambda_set(p)) {
      lifted.q_terms.emplace(alpha, Matrix(weight * c));
    }
  }
  std::map<Word, Matrix> band = ineq::qq_band(lifted.q_terms, 1);

  symcalc::SymSeries s;
  s.n = n;
  s.coeff_dim = 1;
  s.band = degree + 1;
  {
    MultiIndex zero(std::vector<int>(static_cast<std::size_t>(n), 0));
    Matrix c0(1, 1);
    c0(0, 0) = a0;
    s.set_term(zero, c0);
  }
  for (const auto& [w, c] : band) {
    if (w.is_identity()) continue;
    MultiIndex p = words::letter_counts(w, n);
    Matrix coeff(1, 1);
    coeff(0, 0) = -c(0, 0) * static_cast<double>(p.multinomial());
    s.set_term(p, coeff);
  }

  InstanceFile inst;
  inst.n = n;
  inst.kind = "symmetric";
  inst.coeff_dim = 1;
  inst.hypothesis = "re_leq_I";
  inst.sym = std::move(s);
  std::map<MultiIndex, Matrix> symcert;
  for (const auto& [p, c] : qsym) symcert.emplace(p, c);
  inst.sym_certificate = std::move(symcert);
  inst.provenance = Provenance{seed, "sym_certified", 0.0};
  return inst;
}

std::map<Word, Matrix> default_y_family(int n, int degree, std::uint64_t seed, int dy) {
  std::mt19937_64 rng(seed ^ 0xabcdef12345ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> y;
  for (int i = 0; i < n; ++i) y.push_back(random_matrix(rng, dy));
  double rn = spectra::row_norm(y);
  for (Matrix& m : y) m *= (1.0 / 3.0) / rn;
  std::map<Word, Matrix> fam;
  fam.emplace(Word::identity(), Matrix::Identity(dy, dy));
  for (int k = 1; k <= degree; ++k) {
    for (const Word& w : words::enumerate_words(n, k)) {
      Matrix prod = Matrix::Identity(dy, dy);
      for (auto l : w.letters()) prod = prod * y[static_cast<std::size_t>(l - 1)];
      fam.emplace(w, prod);
    }
  }
  return fam;
}

symcalc::CommutativeInputs default_commutative_inputs(const symcalc::SymSeries& s,
                                                      std::uint64_t seed,
                                                      int sphere_samples) {
  symcalc::CommutativeInputs in;
  std::mt19937_64 rng(seed ^ 0x5ca1ab1eull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dy = 2;

  // diagonal tuples commute by construction
  auto diagonal_tuple = [&](double row_target) {
    std::vector<Matrix> t;
    for (int i = 0; i < s.n; ++i) {
      Matrix m = Matrix::Zero(dy, dy);
      for (int j = 0; j < dy; ++j) m(j, j) = cxd(gauss(rng), gauss(rng));
      t.push_back(m);
    }
    double rn = spectra::row_norm(t);
    for (Matrix& m : t) m *= row_target / rn;
    return t;
  };
  in.commuting_y = diagonal_tuple(1.0 / 3.0);
  in.commuting_t = diagonal_tuple(1.0 / 3.0);

  // scalar Y family scaled to 90% of the 1/2 budget
  std::map<MultiIndex, Matrix> fam;
  double budget = 0.0;
  for (int k = 1; k <= s.degree(); ++k) {
    double level_norm = 0.0;
    for (const MultiIndex& p : words::enumerate_multi_indices(s.n, k)) {
      Matrix c(1, 1);
      c(0, 0) = cxd(gauss(rng), gauss(rng));
      fam.emplace(p, c);
      level_norm += static_cast<double>(p.multinomial()) * std::norm(c(0, 0));
    }
    budget += std::sqrt(level_norm);
  }
  double scale = budget > 0 ? 0.45 / budget : 1.0;
  for (auto& [p, c] : fam) c *= scale;
  {
    Matrix one(1, 1);
    one(0, 0) = 1.0;
    fam.emplace(MultiIndex(std::vector<int>(static_cast<std::size_t>(s.n), 0)), one);
  }
  in.y_family = std::move(fam);

  for (int i = 0; i < sphere_samples; ++i) {
    Eigen::VectorXcd dir(s.n);
    for (int j = 0; j < s.n; ++j) dir(j) = cxd(gauss(rng), gauss(rng));
    in.lambda_directions.push_back(dir);
  }
  return in;
}

}  // namespace ncbohr::harness
