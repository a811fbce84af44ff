#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncbohr/inequalities.hpp"
#include "ncbohr/instances.hpp"
#include "ncbohr/parallel.hpp"
#include "ncbohr/radii.hpp"
#include "ncbohr/report.hpp"
#include "ncbohr/symcalc.hpp"

namespace {

using namespace ncbohr;
using ineq::CheckOptions;
using ineq::HypothesisCheck;
using ineq::VerificationReport;
using harness::InstanceFile;
using fock::Matrix;
using linalg::cxd;
using words::MultiIndex;
using words::Word;

std::vector<double> parse_r_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0) {
      throw std::invalid_argument("bad r-grid spec: " + spec);
    }
    for (double r = lo; r <= hi + 1e-12; r += step) grid.push_back(r);
  } else {
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (!tok.empty()) grid.push_back(std::stod(tok));
    }
  }
  if (grid.empty()) throw std::invalid_argument("empty r-grid");
  return grid;
}

std::vector<double> clip_below_one(const std::vector<double>& grid) {
  std::vector<double> out;
  for (double r : grid) {
    if (r < 1.0) out.push_back(r);
  }
  if (out.empty()) out.push_back(0.5);
  return out;
}

std::vector<VerificationReport> verify_instance(const InstanceFile& inst,
                                                const InstanceFile* pair_with, int level,
                                                const std::vector<double>& r_grid,
                                                const CheckOptions& opt) {
  std::vector<VerificationReport> reports;
  const std::string digest = harness::instance_digest(inst);
  auto tag = [&](VerificationReport rep) {
    rep.digest = digest;
    reports.push_back(std::move(rep));
  };
  std::uint64_t seed = inst.provenance ? inst.provenance->seed : opt.seed;

  if (pair_with) {
    const auto& a = inst.free_series();
    const auto& b = pair_with->free_series();
    const fock::QCertificate* cert =
        pair_with->certificate ? &*pair_with->certificate : nullptr;
    HypothesisCheck hyp =
        ineq::check_dominance(a, b, level, clip_below_one(r_grid), cert, opt);
    int deg = std::max(a.degree(), b.degree());
    tag(ineq::harmonic_compare(a, b, 0, hyp, opt));
    if (deg >= 1 && deg <= 3) tag(ineq::harmonic_compare(a, b, deg + 1, hyp, opt));
    if (a.n() == 1 && a.coeff_dim() == 1) {
      ineq::TrigPoly f, g;
      for (int k = 0; k <= deg; ++k) {
        Word w(std::vector<words::Letter>(static_cast<std::size_t>(k), words::Letter{1}));
        f.coeffs.push_back(a.scalar_term(w));
        g.coeffs.push_back(b.scalar_term(w));
      }
      tag(ineq::trig_dominance_check(f, g, deg + 1, r_grid, cert != nullptr, opt));
    }
    return reports;
  }

  if (inst.kind == "symmetric") {
    const auto& s = inst.sym_series();
    fock::CoeffSeries lift = symcalc::free_lift(s);
    auto cert = inst.lifted_certificate();
    HypothesisCheck hyp = ineq::check_re_leq_I(lift, std::max(level, lift.degree()),
                                               clip_below_one(r_grid),
                                               cert ? &*cert : nullptr, opt);
    tag(symcalc::commutative_checks(s, harness::default_commutative_inputs(s, seed), hyp, opt));
    return reports;
  }

  const auto& series = inst.free_series();
  const int deg = series.degree();
  const fock::QCertificate* cert = inst.certificate ? &*inst.certificate : nullptr;

  if (inst.hypothesis == "positive") {
    std::vector<double> at_one = {1.0};
    HypothesisCheck hyp = ineq::check_positive(series, level, at_one, cert, opt);
    if (series.coeff_dim() == 1 && deg >= 1) {
      tag(ineq::fejer_bound_check(series, deg + 1, hyp, opt));
    } else {
      VerificationReport rep;
      rep.inequality = "positivity";
      rep.hypothesis = hyp;
      rep.tol = opt.tol;
      rep.level = level;
      rep.note("operator-coefficient positive band: hypothesis check only");
      rep.finalize();
      tag(std::move(rep));
    }
    return reports;
  }

  if (inst.hypothesis == "norm_leq_1") {
    std::vector<double> at_one = {1.0};
    if (series.kind() == fock::SeriesKind::harmonic) {
      HypothesisCheck hyp = ineq::check_norm_leq_1(series, level, at_one, opt);
      if (deg >= 1) tag(ineq::harmonic_check(series, deg + 1, hyp, opt));
      tag(ineq::harmonic_check(series, 0, hyp, opt));
    } else {
      // section-normalized instances carry their norm constraint at
      // level = degree; the column compressions behind the conclusions
      // live inside that section
      int hyp_level = std::max(1, deg);
      HypothesisCheck hyp = ineq::check_norm_leq_1(series, hyp_level, at_one, opt);
      tag(ineq::oper_gen_checks(series, hyp_level, clip_below_one(r_grid), hyp, opt));
    }
    return reports;
  }

  // default: Re F <= I route
  HypothesisCheck hyp = ineq::check_re_leq_I(series, level, clip_below_one(r_grid), cert, opt);
  if (series.coeff_dim() == 1) {
    if (deg >= 1) tag(ineq::bohr_polynomial_check(series, deg + 1, hyp, opt));
    tag(ineq::boh2_check(series, hyp, opt));
    if (series.n() == 1) {
      tag(ineq::disc_re_equiv_check(series, level, clip_below_one(r_grid), opt));
    }
  } else {
    VerificationReport pk;
    pk.inequality = "pk_positivity";
    pk.hypothesis = hyp;
    pk.tol = opt.tol;
    pk.level = level;
    for (int k = 1; k <= std::max(1, deg); ++k) {
      auto v = ineq::pk_positivity(series, k, hyp, opt);
      pk.add("P_k PSD k=" + std::to_string(k), -v.min_eigenvalue, opt.tol);
    }
    pk.finalize();
    tag(std::move(pk));

    tag(ineq::bohr_gen_checks(series, clip_below_one(r_grid), hyp, opt));

    int q = std::min(3, std::max(1, deg));
    auto [sec, verdict] = ineq::multi_toeplitz_section(series, 1.0, q, hyp, opt);
    VerificationReport toep;
    toep.inequality = "multi_toeplitz";
    toep.hypothesis = hyp;
    toep.tol = opt.tol;
    toep.level = level;
    toep.add("section PSD q=" + std::to_string(q) + " r=1", -verdict.min_eigenvalue, opt.tol);
    toep.finalize();
    tag(std::move(toep));

    tag(ineq::tensor_bound_check(series, harness::default_y_family(series.n(), deg, seed, 2),
                                 std::max(level, deg), hyp, opt));

    std::size_t top_words = 1;
    for (int i = 0; i < deg; ++i) top_words *= static_cast<std::size_t>(series.n());
    if (deg >= 1 && top_words <= 8) {
      tag(ineq::joint_radius_bohr_check(series, deg + 1, hyp, opt));
    }
  }
  return reports;
}

int run_radii(const std::string& kind, int m_max, double tol, const std::string& format,
              const std::string& out_path) {
  radii::RadiusTable table = radii::RadiusTable::build(
      kind == "gamma" ? radii::TableKind::gamma : radii::TableKind::t, m_max, tol);
  table.validate();
  std::string text = format == "json" ? table.to_json() + "\n" : table.to_csv();
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verifiers for multivariable Bohr-type inequalities on truncated "
               "Fock representations"};
  app.require_subcommand(1);

  auto* radii_cmd = app.add_subcommand("radii", "solve the Bohr radius equations");
  std::string radii_kind = "t";
  int m_max = 10;
  double radii_tol = 1e-12;
  std::string radii_format = "csv";
  std::string radii_out;
  radii_cmd->add_option("--kind", radii_kind)->check(CLI::IsMember({"t", "gamma"}));
  radii_cmd->add_option("--m-max", m_max)->check(CLI::Range(2, 100000));
  radii_cmd->add_option("--tol", radii_tol);
  radii_cmd->add_option("--format", radii_format)->check(CLI::IsMember({"csv", "json"}));
  radii_cmd->add_option("-o,--output", radii_out);

  auto* gen_cmd = app.add_subcommand("generate", "emit certified instance files");
  std::string gen_kind = "qq";
  int gen_n = 2, gen_degree = 2, gen_dim = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen_cmd->add_option("--kind", gen_kind)
      ->check(CLI::IsMember({"qq", "holo", "pair", "sym", "harm", "contractive"}));
  gen_cmd->add_option("--n", gen_n)->check(CLI::Range(1, 8));
  gen_cmd->add_option("--degree", gen_degree)->check(CLI::Range(1, 12));
  gen_cmd->add_option("--dim", gen_dim)->check(CLI::Range(1, 8));
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("-o,--output", gen_out)->required();

  auto* ver_cmd = app.add_subcommand("verify", "run the inequality battery on instances");
  std::vector<std::string> ver_paths;
  std::string pair_with, ver_report, ver_format = "json", r_grid_spec = "0:0.9:0.1";
  int ver_level = 4, jobs = 0;
  ver_cmd->add_option("--instance", ver_paths)->required();
  ver_cmd->add_option("--pair-with", pair_with);
  ver_cmd->add_option("--level", ver_level)->check(CLI::Range(1, 16));
  ver_cmd->add_option("--r-grid", r_grid_spec);
  ver_cmd->add_option("--report", ver_report);
  ver_cmd->add_option("--format", ver_format)->check(CLI::IsMember({"json", "md"}));
  ver_cmd->add_option("--jobs", jobs);

  auto* demo_cmd = app.add_subcommand("demo", "closed-form demonstrations");
  auto* sharp_cmd = demo_cmd->add_subcommand("sharpness", "Moebius majorant values");
  double demo_a = 0.99, demo_r = 1.0 / 3.0;
  sharp_cmd->add_option("--a", demo_a)->check(CLI::Range(0.0, 0.999999));
  sharp_cmd->add_option("--r", demo_r)->check(CLI::Range(0.0, 0.999999));
  auto* jordan_cmd = demo_cmd->add_subcommand("jordan", "numerical radius of Jordan blocks");
  int jordan_m = 8;
  jordan_cmd->add_option("--m", jordan_m)->check(CLI::Range(2, 64));
  demo_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*radii_cmd) return run_radii(radii_kind, m_max, radii_tol, radii_format, radii_out);

    if (*gen_cmd) {
      if (gen_kind == "pair") {
        auto [a, b] = harness::generate_dominated_pair(gen_n, gen_degree, gen_seed, gen_dim);
        harness::save_instance(a, gen_out + ".a.json");
        harness::save_instance(b, gen_out + ".b.json");
        std::cout << "wrote " << gen_out << ".a.json and " << gen_out << ".b.json\n";
        return 0;
      }
      InstanceFile inst;
      if (gen_kind == "qq") {
        inst = harness::generate_qq_positive(gen_n, gen_degree, gen_seed, gen_dim);
      } else if (gen_kind == "holo") {
        inst = harness::generate_re_leq_I(gen_n, gen_degree, gen_seed, gen_dim);
      } else if (gen_kind == "sym") {
        inst = harness::generate_sym_certified(gen_n, gen_degree, gen_seed);
      } else if (gen_kind == "harm") {
        inst = harness::generate_harmonic_contraction(gen_n, gen_degree, gen_seed);
      } else {
        inst = harness::generate_contractive(gen_n, gen_degree, gen_seed, gen_dim);
      }
      harness::save_instance(inst, gen_out);
      std::cout << "wrote " << gen_out << " (digest " << harness::instance_digest(inst)
                << ")\n";
      return 0;
    }

    if (*ver_cmd) {
      if (jobs > 0) par::openmp_enabled() = jobs > 1;
      std::vector<double> grid = parse_r_grid(r_grid_spec);
      CheckOptions opt;
      std::vector<InstanceFile> instances;
      for (const auto& p : ver_paths) instances.push_back(harness::load_instance(p));
      InstanceFile pair_inst;
      const InstanceFile* pair_ptr = nullptr;
      if (!pair_with.empty()) {
        if (instances.size() != 1) {
          throw std::invalid_argument("--pair-with expects exactly one --instance");
        }
        pair_inst = harness::load_instance(pair_with);
        pair_ptr = &pair_inst;
      }

      // exceptions must not cross the parallel region; carry them out as text
      struct Outcome {
        std::vector<VerificationReport> reports;
        std::string error;
      };
      auto batches = par::map_indices<Outcome>(instances.size(), [&](std::size_t i) {
        Outcome out;
        try {
          out.reports = verify_instance(instances[i], pair_ptr, ver_level, grid, opt);
        } catch (const std::exception& e) {
          out.error = ver_paths[i] + ": " + e.what();
        }
        return out;
      });

      std::vector<VerificationReport> all;
      for (auto& b : batches) {
        if (!b.error.empty()) throw std::invalid_argument(b.error);
        for (auto& r : b.reports) all.push_back(std::move(r));
      }
      bool all_pass = true;
      for (const auto& r : all) all_pass = all_pass && r.pass;

      nlohmann::json jrep = nlohmann::json::array();
      for (const auto& r : all) jrep.push_back(harness::report_to_json(r));
      if (!ver_report.empty()) {
        std::ofstream out(ver_report, std::ios::binary);
        out << jrep.dump(2) << "\n";
      }
      if (ver_format == "md") {
        std::cout << harness::reports_markdown(all);
      } else {
        for (const auto& r : all) {
          std::cout << (r.pass ? "pass " : "FAIL ") << r.inequality << " [" << r.digest
                    << "] worst slack " << (r.margins.empty() ? 0.0 : r.worst_slack())
                    << "\n";
        }
      }
      return all_pass ? 0 : 1;
    }

    if (*sharp_cmd) {
      double closed = demo_a + (1.0 - demo_a * demo_a) * demo_r / (1.0 - demo_a * demo_r);
      fock::CoeffSeries moebius(1, fock::SeriesKind::holomorphic, 1);
      moebius.set_scalar_term(Word::identity(), demo_a);
      double power = 1.0;
      for (int k = 1; k <= 400; ++k) {
        moebius.set_scalar_term(
            Word(std::vector<words::Letter>(static_cast<std::size_t>(k), words::Letter{1})),
            -(1.0 - demo_a * demo_a) * power);
        power *= demo_a;
      }
      double series_value = ineq::bohr_majorant(moebius, demo_r);
      std::printf("moebius majorant  a=%.6f r=%.6f\n", demo_a, demo_r);
      std::printf("  closed form : %.15f\n", closed);
      std::printf("  series sum  : %.15f\n", series_value);
      std::printf("  %s 1\n", closed > 1.0 ? ">" : "<=");
      return 0;
    }

    if (*jordan_cmd) {
      std::printf("m   omega(J_m)          cos(pi/(m+1))       diff\n");
      for (int m = 2; m <= jordan_m; ++m) {
        Matrix j = Matrix::Zero(m, m);
        for (int i = 0; i + 1 < m; ++i) j(i, i + 1) = 1.0;
        double omega = spectra::numerical_radius(j).value;
        double expected = std::cos(std::numbers::pi / (m + 1));
        std::printf("%-3d %.15f  %.15f  %.2e\n", m, omega, expected,
                    std::abs(omega - expected));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
