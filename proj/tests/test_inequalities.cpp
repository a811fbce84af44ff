#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncbohr/inequalities.hpp"
#include "ncbohr/instances.hpp"
#include "ncbohr/radii.hpp"

using namespace ncbohr;
using namespace ncbohr::ineq;
using fock::CoeffSeries;
using fock::FockRep;
using fock::SeriesKind;
using linalg::cxd;
using linalg::Matrix;
using words::Word;

namespace {

const std::vector<double> kGrid = {0.0, 0.3, 0.6, 0.9};

Word power_word(int k) {
  return Word(std::vector<words::Letter>(static_cast<std::size_t>(k), words::Letter{1}));
}

CoeffSeries moebius_series(double a, int degree) {
  CoeffSeries s(1, SeriesKind::holomorphic, 1);
  s.set_scalar_term(Word::identity(), a);
  double power = 1.0;
  for (int k = 1; k <= degree; ++k) {
    s.set_scalar_term(power_word(k), -(1.0 - a * a) * power);
    power *= a;
  }
  return s;
}

/// |1 + z|^2 = S* + 2I + S: the band attaining the coefficient bound.
CoeffSeries fejer_equality_instance() {
  CoeffSeries s(1, SeriesKind::harmonic, 1);
  s.set_scalar_term(Word::identity(), 2.0);
  s.set_scalar_term(Word{1}, 1.0);
  return s;
}

HypothesisCheck assume_established(HypKind kind) {
  HypothesisCheck hyp;
  hyp.kind = kind;
  hyp.verdict = HypVerdict::certified_by_construction;
  return hyp;
}

}  // namespace

TEST_CASE("check_re_leq_I basics") {
  CoeffSeries zero(1, SeriesKind::holomorphic, 1);
  auto hz = check_re_leq_I(zero, 3, kGrid);
  CHECK(hz.verdict == HypVerdict::section_positive_up_to);

  CoeffSeries constant(2, SeriesKind::holomorphic, 1);
  constant.set_scalar_term(Word::identity(), 0.8);
  CHECK(check_re_leq_I(constant, 2, kGrid).established());

  // F = 2S: Re of 1.8 S has top eigenvalue 1.8 cos(pi/4) > 1 at L >= 2
  CoeffSeries big(1, SeriesKind::holomorphic, 1);
  big.set_scalar_term(Word{1}, 2.0);
  std::vector<double> at9 = {0.9};
  auto hb = check_re_leq_I(big, 2, at9);
  CHECK(hb.verdict == HypVerdict::violated);

  // sections nest: a violation stays violated at deeper levels
  for (int level = 3; level <= 5; ++level) {
    CHECK(check_re_leq_I(big, level, at9).verdict == HypVerdict::violated);
  }
}

TEST_CASE("certificates certify and tampering throws") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto inst = harness::generate_re_leq_I(2, 3, seed);
    auto hyp = check_re_leq_I(inst.free_series(), 3, kGrid, &*inst.certificate);
    CHECK(hyp.verdict == HypVerdict::certified_by_construction);
    // the certified identity also holds at the section level
    CHECK(check_re_leq_I(inst.free_series(), 3, kGrid).established());
  }

  auto inst = harness::generate_re_leq_I(2, 2, 99);
  CoeffSeries tampered = inst.free_series();
  tampered.set_scalar_term(Word{1}, tampered.scalar_term(Word{1}) + 0.5);
  CHECK_THROWS_AS(check_re_leq_I(tampered, 2, kGrid, &*inst.certificate),
                  std::invalid_argument);
}

TEST_CASE("fejer bound: equality instance and random certified bands") {
  auto eq = fejer_equality_instance();
  std::vector<double> at1 = {1.0};
  auto hyp = check_positive(eq, 4, at1);
  CHECK(hyp.established());
  auto rep = fejer_bound_check(eq, 2, hyp);
  CHECK(rep.pass);
  REQUIRE(rep.margins.size() == 1);
  // |a_1| = 1 = a_0 cos(pi/3): slack vanishes
  CHECK(std::abs(rep.margins[0].slack()) <= 1e-9);

  CoeffSeries constant(1, SeriesKind::harmonic, 1);
  constant.set_scalar_term(Word::identity(), 1.0);
  CHECK(fejer_bound_check(constant, 3, check_positive(constant, 2, at1)).pass);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 1 + static_cast<int>(seed % 3);
    int degree = 1 + static_cast<int>(seed % 3);
    auto inst = harness::generate_qq_positive(n, degree, seed);
    auto h = check_positive(inst.free_series(), degree, at1, &*inst.certificate);
    CHECK(h.verdict == HypVerdict::certified_by_construction);
    CHECK(fejer_bound_check(inst.free_series(), degree + 1, h).pass);
  }
}

TEST_CASE("bohr majorant closed forms") {
  CoeffSeries constant(2, SeriesKind::holomorphic, 1);
  constant.set_scalar_term(Word::identity(), cxd(0.3, -0.4));
  CHECK(bohr_majorant(constant, 0.0) == doctest::Approx(0.5));

  double a = 0.9;
  CoeffSeries mo = moebius_series(a, 300);
  for (double r : {0.1, 1.0 / 3.0, 0.35}) {
    double closed = a + (1.0 - a * a) * r / (1.0 - a * r);
    CHECK(std::abs(bohr_majorant(mo, r) - closed) <= 1e-12);
  }

  // sharpness beyond 1/3
  CoeffSeries mo99 = moebius_series(0.99, 400);
  CHECK(bohr_majorant(mo99, 1.0 / 3.0) <= 1.0);
  CHECK(bohr_majorant(mo99, 0.35) > 1.0);

  double prev = -1.0;
  for (double r = 0.0; r <= 0.9; r += 0.05) {
    double v = bohr_majorant(mo, r);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("bohr polynomial check") {
  CoeffSeries constant(2, SeriesKind::polynomial, 1);
  constant.set_scalar_term(Word::identity(), 0.7);
  CHECK(bohr_polynomial_check(constant, 2, assume_established(HypKind::re_leq_I)).pass);

  // n = 1, m = 2 certified instances run at t_2 = 1
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = harness::generate_re_leq_I(1, 1, seed);
    auto hyp = check_re_leq_I(inst.free_series(), 2, kGrid, &*inst.certificate);
    CHECK(bohr_polynomial_check(inst.free_series(), 2, hyp).pass);
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = harness::generate_re_leq_I(2, 3, seed + 100);
    auto hyp = check_re_leq_I(inst.free_series(), 3, kGrid, &*inst.certificate);
    auto rep = bohr_polynomial_check(inst.free_series(), 4, hyp);
    CHECK(rep.pass);
    CHECK(rep.worst_slack() > -1e-8);
  }
}

TEST_CASE("boh2 check with Moebius numbers and spot checks") {
  double a = 0.9;
  CoeffSeries mo = moebius_series(a, 60);
  auto hyp = check_re_leq_I(mo, 6, kGrid);
  CHECK(hyp.established());
  auto rep = boh2_check(mo, hyp);
  CHECK(rep.pass);
  double expected = a + (1.0 - a * a) * (1.0 / 3.0) / (1.0 - a / 3.0);
  for (const auto& m : rep.margins) {
    if (m.check == "majorant at 1/3") CHECK(m.lhs == doctest::Approx(expected).epsilon(1e-10));
  }

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = harness::generate_re_leq_I(3, 2, seed);
    auto h = check_re_leq_I(inst.free_series(), 2, kGrid, &*inst.certificate);
    CHECK(boh2_check(inst.free_series(), h).pass);
  }
}

TEST_CASE("scaling covariance preserves pass verdicts") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto inst = harness::generate_re_leq_I(2, 2, seed);
    const auto& s = inst.free_series();
    double a0 = s.scalar_term(Word::identity()).real();
    for (double c : {0.3, 0.7}) {
      CoeffSeries scaled(2, SeriesKind::polynomial, 1);
      scaled.set_scalar_term(Word::identity(), a0);
      for (const auto& [w, coeff] : s.terms()) {
        if (!w.is_identity()) scaled.set_term(w, Matrix(c * coeff));
      }
      auto hyp = check_re_leq_I(scaled, 3, kGrid);
      CHECK(hyp.established());
      CHECK(bohr_polynomial_check(scaled, 3, hyp).pass);
      CHECK(boh2_check(scaled, hyp).pass);
    }
  }
}

TEST_CASE("harmonic check") {
  std::vector<double> at1 = {1.0};
  CoeffSeries constant(2, SeriesKind::harmonic, 1);
  constant.set_scalar_term(Word::identity(), 0.8);
  auto hyp = check_norm_leq_1(constant, 2, at1);
  CHECK(harmonic_check(constant, 3, hyp).pass);
  CHECK(harmonic_check(constant, 0, hyp).pass);

  // real part of a Moebius contraction, unbanded route at 1/3
  double a = 0.8;
  CoeffSeries re_mo(1, SeriesKind::harmonic, 1);
  re_mo.set_scalar_term(Word::identity(), a);
  double power = 1.0;
  for (int k = 1; k <= 40; ++k) {
    re_mo.set_scalar_term(power_word(k), -0.5 * (1.0 - a * a) * power);
    power *= a;
  }
  auto hmo = check_norm_leq_1(re_mo, 12, at1);
  CHECK(hmo.established());
  CHECK(harmonic_check(re_mo, 0, hmo).pass);

  // banded contractions built as I - Q*Q/nu
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    int n = 1 + static_cast<int>(seed % 2);
    auto inst = harness::generate_harmonic_contraction(n, 2 + static_cast<int>(seed % 2), seed);
    const auto& s = inst.free_series();
    auto h = check_norm_leq_1(s, s.degree() + 1, at1);
    CHECK(h.established());
    CHECK(harmonic_check(s, s.degree() + 1, h).pass);
    CHECK(harmonic_check(s, 0, h).pass);
  }
}

TEST_CASE("pk positivity") {
  auto hyp = assume_established(HypKind::re_leq_I);
  CoeffSeries zero(2, SeriesKind::holomorphic, 1);
  auto v = pk_positivity(zero, 1, hyp);
  CHECK(v.psd);
  CHECK(v.min_eigenvalue == doctest::Approx(2.0));

  // border attaining ||a_k|| = 2(1 - a_0): P_k singular but PSD
  CoeffSeries edge(1, SeriesKind::holomorphic, 1);
  edge.set_scalar_term(Word{1, 1}, 2.0);
  auto ve = pk_positivity(edge, 2, hyp);
  CHECK(std::abs(ve.min_eigenvalue) <= 1e-12);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = harness::generate_re_leq_I(2, 2, seed, 2);
    auto h = check_re_leq_I(inst.free_series(), 2, kGrid, &*inst.certificate);
    for (int k = 1; k <= 2; ++k) CHECK(pk_positivity(inst.free_series(), k, h).psd);
  }
}

TEST_CASE("tensor bound check") {
  auto hyp = assume_established(HypKind::re_leq_I);

  CoeffSeries constant(2, SeriesKind::holomorphic, 2);
  constant.set_scalar_term(Word::identity(), 0.6);
  std::map<Word, Matrix> y0_only;
  y0_only.emplace(Word::identity(), Matrix::Identity(2, 2));
  auto rep = tensor_bound_check(constant, y0_only, 1, hyp);
  CHECK(rep.pass);

  // Y_alpha = Y^alpha with sum Y_i* Y_i = I/9 saturates the 1/2 budget
  std::vector<Matrix> y;
  Matrix u1 = Matrix::Identity(2, 2);
  Matrix u2 = Matrix::Zero(2, 2);
  u2(0, 1) = 1.0;
  u2(1, 0) = 1.0;
  double scale = 1.0 / (3.0 * std::sqrt(2.0));
  y = {scale * u1, scale * u2};
  std::map<Word, Matrix> fam;
  fam.emplace(Word::identity(), Matrix::Identity(2, 2));
  for (int k = 1; k <= 3; ++k) {
    for (const Word& w : words::enumerate_words(2, k)) {
      Matrix prod = Matrix::Identity(2, 2);
      for (auto l : w.letters()) prod = prod * y[static_cast<std::size_t>(l - 1)];
      fam.emplace(w, prod);
    }
  }
  auto inst = harness::generate_re_leq_I(2, 3, 17, 2);
  auto h = check_re_leq_I(inst.free_series(), 3, kGrid, &*inst.certificate);
  auto rep2 = tensor_bound_check(inst.free_series(), fam, 3, h);
  CHECK(rep2.pass);
  for (const auto& m : rep2.margins) {
    if (m.check == "Y budget") CHECK(m.lhs == doctest::Approx(0.5).epsilon(1e-12));
  }

  // over-budget family is rejected
  std::map<Word, Matrix> bad = fam;
  bad[Word{1}] *= 4.0;
  CHECK_THROWS_AS(tensor_bound_check(inst.free_series(), bad, 3, h), std::invalid_argument);
}

TEST_CASE("bohr_gen checks") {
  auto hyp = assume_established(HypKind::re_leq_I);
  std::vector<double> grid;
  for (double r = 0.0; r <= 0.951; r += 0.05) grid.push_back(r);

  CoeffSeries zero(2, SeriesKind::holomorphic, 2);
  CHECK(bohr_gen_checks(zero, grid, hyp).pass);

  // scalar Moebius: the (vi) budget equals a + (1 - a) = 1
  CoeffSeries mo = moebius_series(0.7, 50);
  auto hmo = check_re_leq_I(mo, 6, kGrid);
  auto rep = bohr_gen_checks(mo, grid, hmo);
  CHECK(rep.pass);
  for (const auto& m : rep.margins) {
    if (m.check.rfind("(vi)", 0) == 0) CHECK(m.rhs == doctest::Approx(1.0).epsilon(1e-12));
  }

  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = harness::generate_re_leq_I(2, 3, seed, 2);
    auto h = check_re_leq_I(inst.free_series(), 3, kGrid, &*inst.certificate);
    CHECK(bohr_gen_checks(inst.free_series(), grid, h).pass);
  }
}

TEST_CASE("oper_gen checks") {
  std::vector<double> at1 = {1.0};
  std::vector<double> grid = {0.0, 0.2, 0.5, 0.8};

  // constant contraction
  CoeffSeries constant(2, SeriesKind::polynomial, 2);
  constant.set_scalar_term(Word::identity(), 0.6);
  auto hc = check_norm_leq_1(constant, 1, at1);
  CHECK(oper_gen_checks(constant, 1, grid, hc).pass);

  // the unilateral shift: (i) is an equality at k = 1
  CoeffSeries shift(1, SeriesKind::polynomial, 1);
  shift.set_scalar_term(Word{1}, 1.0);
  auto hs = check_norm_leq_1(shift, 1, at1);
  auto rep = oper_gen_checks(shift, 1, grid, hs);
  CHECK(rep.pass);
  bool saw_equality = false;
  for (const auto& m : rep.margins) {
    if (m.check.rfind("(i)", 0) == 0) {
      // slack = psd tolerance exactly when the difference vanishes
      CHECK(std::abs(m.lhs) <= 1e-8);
      saw_equality = true;
    }
  }
  CHECK(saw_equality);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int d = 1 + static_cast<int>(seed % 2);
    auto inst = harness::generate_contractive(2, 2, seed, d);
    const auto& s = inst.free_series();
    auto h = check_norm_leq_1(s, s.degree(), at1);
    CHECK(h.established());
    CHECK(oper_gen_checks(s, s.degree(), grid, h).pass);
  }
}

TEST_CASE("joint radius bohr check") {
  // constant series: the sum collapses to w(A_0^*) <= ||A_0|| + ||I - A_0||
  CoeffSeries constant(1, SeriesKind::polynomial, 2);
  constant.set_scalar_term(Word::identity(), 0.5);
  auto rep = joint_radius_bohr_check(constant, 2, assume_established(HypKind::re_leq_I));
  CHECK(rep.pass);

  // scalar collapse: the joint radius reduces to moduli within the
  // stabilization tolerance
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto inst = harness::generate_re_leq_I(1, 2, seed);
    auto h = check_re_leq_I(inst.free_series(), 2, kGrid, &*inst.certificate);
    CheckOptions opt;
    opt.stab_tol = 1e-4;
    opt.max_joint_level = 40;
    auto r = joint_radius_bohr_check(inst.free_series(), 3, h, opt);
    CHECK(r.pass);
    for (const auto& m : r.margins) {
      if (m.check == "joint radius bound k=1") {
        double modulus = std::abs(inst.free_series().scalar_term(Word{1}));
        CHECK(m.lhs == doctest::Approx(modulus).epsilon(2e-2));
        CHECK(m.lhs <= modulus + 1e-10);
      }
    }
  }

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto inst = harness::generate_re_leq_I(2, 2, seed, 2);
    auto h = check_re_leq_I(inst.free_series(), 2, kGrid, &*inst.certificate);
    CHECK(joint_radius_bohr_check(inst.free_series(), 3, h).pass);
  }
}

TEST_CASE("posi equivalence") {
  Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> zeros = {Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  CHECK(posi_equivalence_check(id, zeros).pass);

  // m = 1, X = 2I: both forms fail positivity together
  std::vector<Matrix> two = {2.0 * id};
  auto rep = posi_equivalence_check(id, two);
  CHECK(rep.pass);
  CHECK(rep.notes.size() == 2);
  CHECK(rep.notes[0].find("NotPSD") != std::string::npos);
  CHECK(rep.notes[1].find("NotPSD") != std::string::npos);

  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 3);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) g(i, j) = cxd(gauss(rng), gauss(rng));
    }
    Matrix p = g.adjoint() * g / static_cast<double>(d);
    std::vector<Matrix> x;
    for (int i = 0; i < m; ++i) {
      Matrix xi(d, d);
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) xi(r, c) = 0.7 * cxd(gauss(rng), gauss(rng));
      }
      x.push_back(xi);
    }
    CHECK(posi_equivalence_check(p, x).pass);
  }
}

TEST_CASE("multi-Toeplitz sections") {
  auto hyp = assume_established(HypKind::re_leq_I);

  CoeffSeries zero(2, SeriesKind::holomorphic, 1);
  auto [sec, verdict] = multi_toeplitz_section(zero, 1.0, 2, hyp);
  CHECK(verdict.psd);
  CHECK((sec.entries - 2.0 * Matrix::Identity(sec.entries.rows(), sec.entries.cols()))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // n = 1: the section is the classical Toeplitz matrix of the band,
  // identical to the level-q harmonic assembly of 2I - F - F*
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto inst = harness::generate_re_leq_I(1, 2, seed);
    const auto& s = inst.free_series();
    double a0 = s.scalar_term(Word::identity()).real();
    int q = 3;
    double r = 0.8;
    auto h = check_re_leq_I(s, q, kGrid, &*inst.certificate);
    auto [section, v] = multi_toeplitz_section(s, r, q, h);

    CoeffSeries band(1, SeriesKind::harmonic, 1);
    band.set_scalar_term(Word::identity(), 2.0 * (1.0 - a0));
    for (const auto& [w, c] : s.terms()) {
      if (!w.is_identity()) band.set_term(w, Matrix(-c));
    }
    FockRep rep(1, q);
    Matrix direct = assemble(band, rep, r).mat;
    CHECK((section.entries - direct).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(v.psd == spectra::psd_check(direct).psd);
  }

  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = harness::generate_re_leq_I(2, 2, seed, 2);
    auto h = check_re_leq_I(inst.free_series(), 2, kGrid, &*inst.certificate);
    auto [section, v] = multi_toeplitz_section(inst.free_series(), 1.0, 3, h);
    CHECK(v.psd);
  }
}

TEST_CASE("multi-Toeplitz kernel matches the right-creation expansion") {
  // brute force: compress I (x) C_0 + sum_g r^{|g|} (R_g (x) C_g + adj) to
  // words of length <= q; the reversal convention comes out of R_g e_b =
  // e_{b g~}
  std::mt19937_64 rng(43);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2, q = 2, deg = 2;
    CoeffSeries f(n, SeriesKind::holomorphic, 1);
    f.set_scalar_term(Word::identity(), 0.4);
    for (int k = 1; k <= deg; ++k) {
      for (const Word& w : words::enumerate_words(n, k)) {
        f.set_scalar_term(w, 0.25 * cxd(gauss(rng), gauss(rng)));
      }
    }
    double r = 0.9;
    auto hyp = assume_established(HypKind::re_leq_I);
    auto [section, verdict] = multi_toeplitz_section(f, r, q, hyp);

    FockRep rep(n, q + deg);
    const auto dim = static_cast<Eigen::Index>(rep.dim);
    Matrix big = 2.0 * (1.0 - f.scalar_term(Word::identity()).real()) *
                 Matrix::Identity(dim, dim);
    for (const auto& [w, c] : f.terms()) {
      if (w.is_identity()) continue;
      Matrix rw = Matrix::Identity(dim, dim);
      // R_w = R_{i1} ... R_{ik} applied right-to-left
      for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
        rw = fock::right_creation(rep, *it).mat * rw;
      }
      double scale = std::pow(r, static_cast<double>(w.length()));
      big += scale * (-c(0, 0)) * rw;
      big += scale * std::conj(-c(0, 0)) * rw.adjoint();
    }
    auto head = static_cast<Eigen::Index>(words::graded_dim(n, q, 100000));
    CHECK((section.entries - big.topLeftCorner(head, head)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("harmonic compare") {
  // degenerate branch: equal constants force equal coefficients
  auto [a0, b0] = harness::generate_dominated_pair(2, 2, 5, 1, true);
  auto hyp0 = check_dominance(a0.free_series(), b0.free_series(), 2, kGrid, nullptr);
  auto rep0 = harmonic_compare(a0.free_series(), b0.free_series(), 0, hyp0);
  CHECK(rep0.pass);
  REQUIRE(rep0.margins.size() == 1);
  CHECK(rep0.margins[0].check.find("equality") != std::string::npos);
  CHECK(rep0.margins[0].lhs == 0.0);

  // |1 + z|^2 band on top of a base harmonic series
  CoeffSeries base(1, SeriesKind::harmonic, 1);
  base.set_scalar_term(Word::identity(), 0.1);
  base.set_scalar_term(Word{1}, cxd(0.05, 0.02));
  CoeffSeries upper = base;
  upper.set_scalar_term(Word::identity(), 0.1 + 2.0);
  upper.set_scalar_term(Word{1}, cxd(0.05, 0.02) + 1.0);
  auto hyp1 = check_dominance(base, upper, 4, kGrid, nullptr);
  CHECK(hyp1.established());
  CHECK(harmonic_compare(base, upper, 2, hyp1).pass);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int d = 1 + static_cast<int>(seed % 2);
    auto [lo, hi] = harness::generate_dominated_pair(2, 2, seed, d);
    auto hyp = check_dominance(lo.free_series(), hi.free_series(), 2, kGrid,
                               &*hi.certificate);
    CHECK(hyp.verdict == HypVerdict::certified_by_construction);
    CHECK(harmonic_compare(lo.free_series(), hi.free_series(), 0, hyp).pass);
    CHECK(harmonic_compare(lo.free_series(), hi.free_series(), 3, hyp).pass);
  }
}

TEST_CASE("disc/shift cross-validation at n = 1") {
  std::vector<double> grid = {0.0, 0.3, 0.6, 0.9};
  CoeffSeries zero(1, SeriesKind::holomorphic, 1);
  CHECK(disc_re_equiv_check(zero, 4, grid).pass);

  // f = 2z: both pictures detect the violation near r = 0.9
  CoeffSeries big(1, SeriesKind::holomorphic, 1);
  big.set_scalar_term(Word{1}, 2.0);
  CHECK(disc_re_equiv_check(big, 4, grid).pass);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = harness::generate_re_leq_I(1, 3, seed);
    CHECK(disc_re_equiv_check(inst.free_series(), 5, grid).pass);
  }
}

TEST_CASE("trig dominance") {
  std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};

  TrigPoly f{{cxd(1.0, 0), cxd(0.2, 0.1)}};
  auto rep_eq = trig_dominance_check(f, f, 2, grid, false);
  CHECK(rep_eq.pass);
  for (const auto& m : rep_eq.margins) CHECK(std::abs(m.slack()) <= 1e-14);

  // f = 0 <= g = |1 + e^{i theta}|^2: sums read 0 <= 1 + r
  TrigPoly zerop{{cxd(0, 0)}};
  TrigPoly g{{cxd(2.0, 0), cxd(1.0, 0)}};
  auto rep = trig_dominance_check(zerop, g, 2, grid, false);
  CHECK(rep.pass);
  for (const auto& m : rep.margins) CHECK(m.lhs == 0.0);

  // contrapositive: a failing sum names a pointwise witness
  TrigPoly fcos{{cxd(0, 0), cxd(1.0, 0)}};
  auto bad = trig_dominance_check(fcos, zerop, 2, grid, false);
  CHECK(!bad.pass);
  CHECK(bad.hypothesis.verdict == HypVerdict::violated);
  REQUIRE(!bad.notes.empty());
  CHECK(bad.notes[0].find("witness") != std::string::npos);

  // certified pairs built as g = f + |h|^2
  std::mt19937_64 rng(47);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 3;
    TrigPoly base;
    base.coeffs = {cxd(gauss(rng), 0), cxd(gauss(rng), gauss(rng)),
                   cxd(gauss(rng), gauss(rng))};
    cxd h0(gauss(rng), gauss(rng)), h1(gauss(rng), gauss(rng)), h2(gauss(rng), gauss(rng));
    TrigPoly upper = base;
    upper.coeffs[0] += std::norm(h0) + std::norm(h1) + std::norm(h2);
    upper.coeffs[1] += std::conj(h0) * h1 + std::conj(h1) * h2;
    upper.coeffs[2] += std::conj(h0) * h2;
    double tm = radii::solve_t(m).value;
    std::vector<double> rr = {0.0, tm - 0.01};
    CHECK(trig_dominance_check(base, upper, m, rr, true).pass);
  }
}

TEST_CASE("hypothesis gating") {
  CoeffSeries big(1, SeriesKind::holomorphic, 1);
  big.set_scalar_term(Word{1}, 2.0);
  std::vector<double> at9 = {0.9};
  auto hyp = check_re_leq_I(big, 3, at9);
  CHECK(!hyp.established());
  CHECK_THROWS_AS(bohr_polynomial_check(big, 2, hyp), std::invalid_argument);
  CHECK_THROWS_AS(boh2_check(big, hyp), std::invalid_argument);
  CHECK_THROWS_AS(pk_positivity(big, 1, hyp), std::invalid_argument);
}
