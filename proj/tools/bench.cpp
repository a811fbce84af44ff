#include <chrono>
#include <cstdio>
#include <random>

#include "ncbohr/parallel.hpp"
#include "ncbohr/radii.hpp"
#include "ncbohr/spectra.hpp"

// Times the OpenMP kernels against the serial reference path. Both paths run
// identical arithmetic per index, so the printed checksums must match.

namespace {

using namespace ncbohr;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Case {
  const char* name;
  double serial_s = 0.0;
  double parallel_s = 0.0;
  double checksum_serial = 0.0;
  double checksum_parallel = 0.0;
};

template <typename F>
void run_case(Case& c, F&& body) {
  par::openmp_enabled() = false;
  auto t0 = Clock::now();
  c.checksum_serial = body();
  c.serial_s = seconds_since(t0);

  par::openmp_enabled() = true;
  t0 = Clock::now();
  c.checksum_parallel = body();
  c.parallel_s = seconds_since(t0);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", par::max_threads());
  std::vector<Case> cases;

  {
    Case c{"radii table t_m, m <= 2000"};
    run_case(c, [] {
      auto table = radii::RadiusTable::build(radii::TableKind::t, 2000, 1e-12);
      double sum = 0.0;
      for (const auto& [m, e] : table.entries) sum += e.value;
      return sum;
    });
    cases.push_back(c);
  }

  {
    Case c{"numerical radius, dense 120x120"};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    linalg::Matrix t(120, 120);
    for (int i = 0; i < 120; ++i) {
      for (int j = 0; j < 120; ++j) t(i, j) = linalg::cxd(gauss(rng), gauss(rng));
    }
    run_case(c, [&] { return spectra::numerical_radius(t).value; });
    cases.push_back(c);
  }

  {
    Case c{"euclidean joint radius, 512 restarts"};
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<linalg::Matrix> x;
    for (int i = 0; i < 3; ++i) {
      linalg::Matrix m(24, 24);
      for (int r = 0; r < 24; ++r) {
        for (int col = 0; col < 24; ++col) m(r, col) = linalg::cxd(gauss(rng), gauss(rng));
      }
      x.push_back(m);
    }
    run_case(c, [&] { return spectra::euclidean_joint_radius(x, 512).value; });
    cases.push_back(c);
  }

  std::printf("%-36s %10s %10s %8s  %s\n", "kernel", "serial", "openmp", "speedup",
              "checksums match");
  for (const Case& c : cases) {
    std::printf("%-36s %9.3fs %9.3fs %7.2fx  %s\n", c.name, c.serial_s, c.parallel_s,
                c.parallel_s > 0 ? c.serial_s / c.parallel_s : 0.0,
                c.checksum_serial == c.checksum_parallel ? "yes" : "NO");
  }
  return 0;
}
