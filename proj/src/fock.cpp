#include "ncbohr/fock.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace ncbohr::fock {

std::size_t max_basis_words() { return 200000; }

std::size_t max_dense_dim() {
  static std::size_t cap = [] {
    if (const char* env = std::getenv("NCBOHR_MAX_DIM")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{4096};
  }();
  return cap;
}

FockRep::FockRep(int n_, int level_) : n(n_), level(level_) {
  if (n < 1) throw std::invalid_argument("FockRep: n must be >= 1");
  if (level < 0) throw std::invalid_argument("FockRep: level must be >= 0");
  dim = words::graded_dim(n, level, max_basis_words());
}

std::string to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::holomorphic: return "holomorphic";
    case SeriesKind::harmonic: return "harmonic";
    case SeriesKind::polynomial: return "polynomial";
  }
  return "holomorphic";
}

SeriesKind series_kind_from_string(const std::string& s) {
  if (s == "holomorphic") return SeriesKind::holomorphic;
  if (s == "harmonic") return SeriesKind::harmonic;
  if (s == "polynomial") return SeriesKind::polynomial;
  throw std::invalid_argument("unknown series kind: " + s);
}

CoeffSeries::CoeffSeries(int n, SeriesKind kind, int coeff_dim)
    : n_(n), kind_(kind), dim_(coeff_dim) {
  if (n_ < 1) throw std::invalid_argument("CoeffSeries: n must be >= 1");
  if (dim_ < 1) throw std::invalid_argument("CoeffSeries: coeff_dim must be >= 1");
}

int CoeffSeries::degree() const {
  int deg = 0;
  for (const auto& [w, a] : terms_) deg = std::max<int>(deg, static_cast<int>(w.length()));
  return deg;
}

void CoeffSeries::set_term(const Word& w, Matrix coeff) {
  if (!w.valid_for(n_)) throw std::invalid_argument("set_term: word has letters out of range");
  if (coeff.rows() != dim_ || coeff.cols() != dim_) {
    throw std::invalid_argument("set_term: coefficient must be coeff_dim x coeff_dim");
  }
  if (coeff.cwiseAbs().maxCoeff() == 0.0) {
    terms_.erase(w);
  } else {
    terms_[w] = std::move(coeff);
  }
}

void CoeffSeries::set_scalar_term(const Word& w, cxd value) {
  set_term(w, value * Matrix::Identity(dim_, dim_));
}

Matrix CoeffSeries::term(const Word& w) const {
  auto it = terms_.find(w);
  if (it == terms_.end()) return Matrix::Zero(dim_, dim_);
  return it->second;
}

cxd CoeffSeries::scalar_term(const Word& w) const {
  auto it = terms_.find(w);
  if (it == terms_.end()) return cxd(0, 0);
  return it->second(0, 0);
}

std::map<Word, Matrix> CoeffSeries::slice(int k) const {
  std::map<Word, Matrix> out;
  for (const auto& [w, a] : terms_) {
    if (static_cast<int>(w.length()) == k) out.emplace(w, a);
  }
  return out;
}

void CoeffSeries::validate() const {
  for (const auto& [w, a] : terms_) {
    if (!w.valid_for(n_)) throw std::invalid_argument("CoeffSeries: invalid word");
    if (a.rows() != dim_ || a.cols() != dim_) {
      throw std::invalid_argument("CoeffSeries: coefficient dimension mismatch");
    }
  }
  if (kind_ == SeriesKind::harmonic) {
    Matrix a0 = constant_term();
    if (!linalg::is_hermitian(a0, 1e-12)) {
      throw std::invalid_argument("CoeffSeries: harmonic kind requires selfadjoint constant term");
    }
  }
}

CoeffSeries CoeffSeries::with_kind(SeriesKind k) const {
  CoeffSeries out(n_, k, dim_);
  for (const auto& [w, a] : terms_) out.set_term(w, a);
  return out;
}

namespace {

Matrix zero_operator(const FockRep& rep, int block) {
  std::size_t side = rep.dim * static_cast<std::size_t>(block);
  if (side > max_dense_dim()) {
    throw std::invalid_argument("assembled operator side " + std::to_string(side) +
                                " exceeds dense cap " + std::to_string(max_dense_dim()));
  }
  return Matrix::Zero(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
}

}  // namespace

AssembledOperator left_creation(const FockRep& rep, int i) {
  if (i < 1 || i > rep.n) throw std::invalid_argument("left_creation: generator index out of range");
  Matrix m = zero_operator(rep, 1);
  Word gi({i});
  for (int k = 0; k < rep.level; ++k) {
    for (const Word& beta : words::enumerate_words(rep.n, k)) {
      m(static_cast<Eigen::Index>(rep.rank(gi.concat(beta))),
        static_cast<Eigen::Index>(rep.rank(beta))) = 1.0;
    }
  }
  AssembledOperator out{std::move(m), rep.n, rep.level, 1.0, 1, "S_" + std::to_string(i)};
  return out;
}

AssembledOperator right_creation(const FockRep& rep, int i) {
  if (i < 1 || i > rep.n) throw std::invalid_argument("right_creation: generator index out of range");
  Matrix m = zero_operator(rep, 1);
  Word gi({i});
  for (int k = 0; k < rep.level; ++k) {
    for (const Word& beta : words::enumerate_words(rep.n, k)) {
      m(static_cast<Eigen::Index>(rep.rank(beta.concat(gi))),
        static_cast<Eigen::Index>(rep.rank(beta))) = 1.0;
    }
  }
  AssembledOperator out{std::move(m), rep.n, rep.level, 1.0, 1, "R_" + std::to_string(i)};
  return out;
}

AssembledOperator flip_unitary(const FockRep& rep) {
  Matrix m = zero_operator(rep, 1);
  for (int k = 0; k <= rep.level; ++k) {
    for (const Word& alpha : words::enumerate_words(rep.n, k)) {
      m(static_cast<Eigen::Index>(rep.rank(alpha.reversed())),
        static_cast<Eigen::Index>(rep.rank(alpha))) = 1.0;
    }
  }
  AssembledOperator out{std::move(m), rep.n, rep.level, 1.0, 1, "U"};
  return out;
}

AssembledOperator assemble(const CoeffSeries& series, const FockRep& rep, double r) {
  if (series.n() != rep.n) throw std::invalid_argument("assemble: generator count mismatch");
  if (r < 0.0 || r > 1.0) throw std::invalid_argument("assemble: radius must lie in [0,1]");
  series.validate();

  const int d = series.coeff_dim();
  Matrix m = zero_operator(rep, d);
  const bool harmonic = series.kind() == SeriesKind::harmonic;

  // triplet-style scatter: each word term S_alpha places one block per
  // retained basis word beta with |alpha beta| <= L
  for (const auto& [alpha, coeff] : series.terms()) {
    const int ka = static_cast<int>(alpha.length());
    const double scale = std::pow(r, ka);
    const Matrix block = scale * coeff;
    if (alpha.is_identity()) {
      // I (x) A_0; appears once in both kinds (harmonic counts it unmirrored)
      for (std::size_t b = 0; b < rep.dim; ++b) {
        m.block(static_cast<Eigen::Index>(b * static_cast<std::size_t>(d)),
                static_cast<Eigen::Index>(b * static_cast<std::size_t>(d)), d, d) += block;
      }
      continue;
    }
    const Matrix block_adj = block.adjoint();
    for (int k = 0; k + ka <= rep.level; ++k) {
      for (const Word& beta : words::enumerate_words(rep.n, k)) {
        auto row = static_cast<Eigen::Index>(rep.rank(alpha.concat(beta)) *
                                             static_cast<std::size_t>(d));
        auto col = static_cast<Eigen::Index>(rep.rank(beta) * static_cast<std::size_t>(d));
        m.block(row, col, d, d) += block;
        if (harmonic) m.block(col, row, d, d) += block_adj;
      }
    }
  }

  AssembledOperator out{std::move(m), rep.n, rep.level, r, d, to_string(series.kind())};
  return out;
}

Matrix gram_slice(const CoeffSeries& series, int k) {
  const int d = series.coeff_dim();
  Matrix g = Matrix::Zero(d, d);
  for (const auto& [w, a] : series.slice(k)) g += a.adjoint() * a;
  return g;
}

double graded_row_norm(const CoeffSeries& series, int k) {
  if (k < 0) throw std::invalid_argument("graded_row_norm: k must be >= 0");
  if (series.coeff_dim() == 1) {
    double s = 0.0;
    for (const auto& [w, a] : series.slice(k)) s += std::norm(a(0, 0));
    return std::sqrt(s);
  }
  Matrix g = gram_slice(series, k);
  return std::sqrt(std::max(0.0, linalg::max_eigenvalue(g)));
}

std::vector<MultiIndex> symmetric_basis_indices(const FockRep& rep) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= rep.level; ++k) {
    for (auto& p : words::enumerate_multi_indices(rep.n, k)) out.push_back(std::move(p));
  }
  return out;
}

Matrix symmetric_isometry(const FockRep& rep) {
  std::vector<MultiIndex> idx = symmetric_basis_indices(rep);
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(rep.dim),
                          static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    std::vector<Word> fiber = words::lambda_set(idx[j]);
    double weight = 1.0 / std::sqrt(static_cast<double>(fiber.size()));
    for (const Word& alpha : fiber) {
      w(static_cast<Eigen::Index>(rep.rank(alpha)), static_cast<Eigen::Index>(j)) = weight;
    }
  }
  return w;
}

AssembledOperator symmetric_compress(const FockRep& rep, const AssembledOperator& x) {
  const int d = x.coeff_dim;
  if (x.mat.rows() != static_cast<Eigen::Index>(rep.dim * static_cast<std::size_t>(d))) {
    throw std::invalid_argument("symmetric_compress: operator does not match representation");
  }
  Matrix w = symmetric_isometry(rep);
  Matrix wd = d == 1 ? w : linalg::kron(w, Matrix::Identity(d, d));
  AssembledOperator out{wd.adjoint() * x.mat * wd, rep.n, rep.level, x.radius, d,
                        x.label + "|sym"};
  return out;
}

}  // namespace ncbohr::fock
