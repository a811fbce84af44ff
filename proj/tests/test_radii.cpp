#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "ncbohr/radii.hpp"

using namespace ncbohr::radii;

TEST_CASE("f_m closed forms") {
  CHECK(f_m(2, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  // f_3(t) = t cos(pi/4) + t^2 cos(pi/3)
  CHECK(f_m(3, 0.5) == doctest::Approx(0.4785533905932738).epsilon(1e-14));
  for (int m = 2; m <= 60; ++m) CHECK(f_m(m, 0.0) == 0.0);
}

TEST_CASE("f_m is strictly increasing in t") {
  for (int m : {2, 3, 5, 9, 20}) {
    double prev = -1.0;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
      double v = f_m(m, t);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("t_m closed-form values") {
  auto t2 = solve_t(2);
  CHECK(std::abs(t2.value - 1.0) <= 1e-12);
  CHECK(t2.residual <= 1e-12 * 1.5);

  auto t3 = solve_t(3);
  CHECK(std::abs(t3.value - (std::sqrt(6.0) - std::sqrt(2.0)) / 2.0) <= 1e-10);
}

TEST_CASE("gamma_m closed-form values and the m = 2 clamp") {
  auto g3 = solve_gamma(3);
  CHECK(std::abs(g3.value - (std::sqrt(10.0) - std::sqrt(2.0)) / 2.0) <= 1e-10);
  CHECK(!g3.clamped);

  auto g2 = solve_gamma(2);
  CHECK(g2.value == 1.0);
  CHECK(g2.clamped);
}

TEST_CASE("f_m < f_{m+1} < t/(1-t) on a grid") {
  for (int m = 2; m <= 50; ++m) {
    for (double t = 0.05; t < 1.0; t += 0.05) {
      double a = f_m(m, t);
      double b = f_m(m + 1, t);
      CHECK(a < b);
      CHECK(b < t / (1.0 - t) + 1e-14);
    }
  }
}

TEST_CASE("tables are certified and monotone") {
  auto t = RadiusTable::build(TableKind::t, 60);
  t.validate();
  double prev = 2.0;
  for (const auto& [m, e] : t.entries) {
    CHECK(e.value > 1.0 / 3.0);
    CHECK(e.value < prev);
    prev = e.value;
    CHECK(std::abs(f_m(m, e.value) - 0.5) <= 1e-12 * 1.5);
  }

  auto g = RadiusTable::build(TableKind::gamma, 60);
  g.validate();
  prev = 2.0;
  for (const auto& [m, e] : g.entries) {
    if (m == 2) continue;
    CHECK(e.value > 0.5);
    CHECK(e.value < prev);
    prev = e.value;
    CHECK(std::abs(f_m(m, e.value) - 1.0) <= 1e-12 * 2.5);
  }
}

TEST_CASE("Lagrange tail bound brackets the limits") {
  // f'_m >= 1/2 turns a value gap at the limit point into a root bracket
  double bound_t = 2.0 * (0.5 - f_m(200, 1.0 / 3.0));
  CHECK(bound_t < 1e-3);
  CHECK(solve_t(200).value - 1.0 / 3.0 <= bound_t + 1e-12);

  double bound_g = 2.0 * (1.0 - f_m(300, 0.5));
  CHECK(bound_g < 1e-3);
  CHECK(solve_gamma(300).value - 0.5 <= bound_g + 1e-12);
}

TEST_CASE("piecewise bounds: values, breakpoints, monotonicity") {
  CHECK(bound_M(0.0) == 1.0);
  CHECK(bound_K(0.0) == 1.0);
  CHECK(bound_N(0.0) == 1.0);

  // continuity at the switch points, evaluated from both branch formulas
  CHECK(std::abs(bound_M(0.5) - 2.0) <= 1e-12);
  CHECK(std::abs((1.0 + 0.25 / 0.25) - (2.0 * 0.5 / 0.5)) <= 1e-12);
  CHECK(std::abs(bound_K(0.2) - 1.0) <= 1e-12);
  CHECK(std::abs(4.0 * 0.2 / 0.8 - 1.0) <= 1e-12);
  CHECK(std::abs(bound_N(0.5) - 1.0) <= 1e-12);
  CHECK(std::abs(0.5 / 0.5 - 1.0) <= 1e-12);

  for (auto f : {bound_M, bound_K, bound_N}) {
    double prev = 0.0;
    for (double r = 0.0; r < 0.999; r += 0.001) {
      double v = f(r);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
  CHECK_THROWS_AS(bound_M(1.0), std::invalid_argument);
}

TEST_CASE("table emission") {
  auto t = RadiusTable::build(TableKind::t, 4);
  std::string csv = t.to_csv();
  CHECK(csv.find("m,value,residual,clamped") == 0);
  auto j = nlohmann::json::parse(t.to_json());
  CHECK(j.at("kind") == "t");
  CHECK(j.at("entries").size() == 3);
  CHECK(j.at("entries")[0].at("m") == 2);
}
