#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ncbohr/fock.hpp"

using namespace ncbohr;
using namespace ncbohr::fock;
using ncbohr::words::Word;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

CoeffSeries random_scalar_slice(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoeffSeries s(n, SeriesKind::holomorphic, 1);
  for (const Word& w : words::enumerate_words(n, k)) {
    s.set_scalar_term(w, cxd(gauss(rng), gauss(rng)));
  }
  return s;
}

CoeffSeries random_harmonic(std::mt19937_64& rng, int n, int degree) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoeffSeries s(n, SeriesKind::harmonic, 1);
  s.set_scalar_term(Word::identity(), gauss(rng));
  for (int k = 1; k <= degree; ++k) {
    for (const Word& w : words::enumerate_words(n, k)) {
      s.set_scalar_term(w, 0.3 * cxd(gauss(rng), gauss(rng)));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("left creation matrices") {
  FockRep rep1(1, 3);
  Matrix s = left_creation(rep1, 1).mat;
  CHECK(s.rows() == 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(s(i, j) == (i == j + 1 ? cxd(1, 0) : cxd(0, 0)));
    }
  }

  FockRep rep2(2, 1);
  Matrix s2 = left_creation(rep2, 2).mat;
  CHECK(s2(2, 0) == cxd(1, 0));         // e_0 -> e_{g2}
  CHECK(max_abs(s2.col(1)) == 0.0);     // top level killed
  CHECK(max_abs(s2.col(2)) == 0.0);
  CHECK_THROWS_AS(left_creation(rep2, 3), std::invalid_argument);
}

TEST_CASE("creation operators have orthogonal ranges and isometric columns") {
  FockRep rep(2, 4);
  Matrix s1 = left_creation(rep, 1).mat;
  Matrix s2 = left_creation(rep, 2).mat;
  CHECK(max_abs(s1.adjoint() * s2) == 0.0);

  // S_i^* S_i is the projection onto levels < L
  Matrix p = s1.adjoint() * s1;
  for (std::size_t b = 0; b < rep.dim; ++b) {
    double expect = words::unrank(2, b).length() < 4 ? 1.0 : 0.0;
    CHECK(p(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real() ==
          doctest::Approx(expect));
  }

  FockRep rep3(2, 3);
  Matrix r1 = right_creation(rep3, 1).mat;
  Matrix r2 = right_creation(rep3, 2).mat;
  CHECK(max_abs(r1.adjoint() * r2) == 0.0);
}

TEST_CASE("right creation is the flip conjugate exactly") {
  for (int n = 1; n <= 3; ++n) {
    for (int level = 1; level <= 4; ++level) {
      if (n == 3 && level == 4) continue;  // keep the matrices small
      FockRep rep(n, level);
      Matrix u = flip_unitary(rep).mat;
      for (int i = 1; i <= n; ++i) {
        Matrix lhs = right_creation(rep, i).mat;
        Matrix rhs = u.adjoint() * left_creation(rep, i).mat * u;
        CHECK(max_abs(lhs - rhs) == 0.0);
      }
    }
  }
  FockRep rep1(1, 4);
  CHECK(max_abs(right_creation(rep1, 1).mat - left_creation(rep1, 1).mat) == 0.0);
}

TEST_CASE("flip unitary is an involutive permutation") {
  FockRep rep1(1, 3);
  CHECK(max_abs(flip_unitary(rep1).mat - Matrix::Identity(4, 4)) == 0.0);

  FockRep rep(2, 2);
  Matrix u = flip_unitary(rep).mat;
  CHECK(u(static_cast<Eigen::Index>(rep.rank(Word{2, 1})),
          static_cast<Eigen::Index>(rep.rank(Word{1, 2}))) == cxd(1, 0));

  FockRep rep3(3, 3);
  Matrix u3 = flip_unitary(rep3).mat;
  CHECK(max_abs(u3 * u3 - Matrix::Identity(u3.rows(), u3.cols())) == 0.0);
  CHECK(max_abs(u3 - u3.adjoint()) == 0.0);
}

TEST_CASE("assemble basics") {
  FockRep rep(1, 3);
  CoeffSeries zero(1, SeriesKind::holomorphic, 1);
  CHECK(max_abs(assemble(zero, rep, 0.7).mat) == 0.0);

  CoeffSeries single(1, SeriesKind::holomorphic, 1);
  single.set_scalar_term(Word{1}, 1.0);
  CHECK(max_abs(assemble(single, rep, 0.5).mat - 0.5 * left_creation(rep, 1).mat) == 0.0);

  CoeffSeries constant(1, SeriesKind::harmonic, 1);
  constant.set_scalar_term(Word::identity(), 1.0);
  CHECK(max_abs(assemble(constant, rep, 0.3).mat - Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("graded norm identity against the assembled operator") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    int k = 1 + static_cast<int>(rng() % 4);
    CoeffSeries s = random_scalar_slice(rng, n, k);
    double direct = 0.0;
    for (const auto& [w, a] : s.terms()) direct += std::norm(a(0, 0));
    direct = std::sqrt(direct);
    CHECK(graded_row_norm(s, k) == doctest::Approx(direct).epsilon(1e-12));

    FockRep rep(n, k);
    double assembled = linalg::operator_norm(assemble(s, rep, 1.0).mat);
    CHECK(std::abs(assembled - direct) <= 1e-10 * std::max(1.0, direct));
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("row contraction norm is one at every level") {
  for (int n = 1; n <= 3; ++n) {
    for (int level = 1; level <= 4; ++level) {
      if (n == 3 && level == 4) continue;
      FockRep rep(n, level);
      Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(rep.dim),
                                static_cast<Eigen::Index>(rep.dim));
      for (int i = 1; i <= n; ++i) {
        Matrix s = left_creation(rep, i).mat;
        sum += s * s.adjoint();
      }
      CHECK(linalg::max_eigenvalue(sum) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("harmonic assembly is selfadjoint and degree-wise linear") {
  std::mt19937_64 rng(13);
  FockRep rep(2, 3);
  for (int trial = 0; trial < 10; ++trial) {
    CoeffSeries h = random_harmonic(rng, 2, 2);
    Matrix m = assemble(h, rep, 0.8).mat;
    CHECK(max_abs(m - m.adjoint()) <= 1e-12);
  }

  CoeffSeries a = random_scalar_slice(rng, 2, 2);
  CoeffSeries b = random_scalar_slice(rng, 2, 1);
  CoeffSeries sum(2, SeriesKind::holomorphic, 1);
  for (const auto& [w, c] : a.terms()) sum.set_term(w, Matrix(2.0 * c));
  for (const auto& [w, c] : b.terms()) sum.set_term(w, Matrix(sum.term(w) + c));
  Matrix lhs = assemble(sum, rep, 0.6).mat;
  Matrix rhs = 2.0 * assemble(a, rep, 0.6).mat + assemble(b, rep, 0.6).mat;
  CHECK(max_abs(lhs - rhs) <= 1e-13);
}

TEST_CASE("level compressions of a fixed harmonic form are monotone") {
  std::mt19937_64 rng(17);
  CoeffSeries h = random_harmonic(rng, 2, 2);
  double prev = -1e300;
  for (int level = 1; level <= 5; ++level) {
    FockRep rep(2, level);
    double top = linalg::max_eigenvalue(assemble(h, rep, 0.9).mat);
    CHECK(top >= prev - 1e-12);
    prev = top;
  }
}

TEST_CASE("symmetric compression") {
  // n = 1: the symmetric subspace is everything
  FockRep rep1(1, 3);
  Matrix w1 = symmetric_isometry(rep1);
  CHECK(w1.rows() == 4);
  CHECK(w1.cols() == 4);
  CHECK(max_abs(w1 - Matrix::Identity(4, 4)) == 0.0);

  FockRep rep(2, 2);
  Matrix w = symmetric_isometry(rep);
  CHECK(max_abs(w.adjoint() * w - Matrix::Identity(w.cols(), w.cols())) <= 1e-14);

  // compress(S_1 + S_2): degree-0 column has norm sqrt(2)
  AssembledOperator x{left_creation(rep, 1).mat + left_creation(rep, 2).mat, 2, 2, 1.0, 1,
                      "S1+S2"};
  Matrix c = symmetric_compress(rep, x).mat;
  CHECK(c.col(0).norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  AssembledOperator id{Matrix::Identity(static_cast<Eigen::Index>(rep.dim),
                                        static_cast<Eigen::Index>(rep.dim)),
                       2, 2, 1.0, 1, "I"};
  Matrix ci = symmetric_compress(rep, id).mat;
  CHECK(max_abs(ci - Matrix::Identity(ci.rows(), ci.cols())) <= 1e-14);
}

TEST_CASE("dense cap guards assembly") {
  CHECK_THROWS_AS(FockRep(3, 15), std::invalid_argument);
  FockRep rep(2, 11);  // 4095 basis words: within the cap at d = 1
  CoeffSeries two(2, SeriesKind::holomorphic, 2);
  two.set_scalar_term(Word{1}, 1.0);
  CHECK_THROWS_AS(assemble(two, rep, 1.0), std::invalid_argument);
}
