#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "harmtori/config.hpp"
#include "harmtori/report.hpp"

using namespace harmtori;

TEST_CASE("config parsing") {
  const RunConfig c = parse_config("# comment\nmax_den = 12\nk_min=0.3 # trailing\n\nseed = 7\nout = a.csv\n");
  CHECK(c.max_den == 12);
  CHECK(c.k_min == 0.3);
  CHECK(c.seed == 7);
  CHECK(c.out_path == "a.csv");
  CHECK(c.k_grid == RunConfig{}.k_grid);
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("max_den = x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("k_min = 0.9\nk_max = 0.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("solver_tol = 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), std::invalid_argument);

  const SweepOptions s = parse_config("k_grid = 5\nangle_grid = 7\n").sweep_options();
  CHECK(s.k_grid == 5);
  CHECK(s.angle_grid == 7);
}

TEST_CASE("config file and environment") {
  const auto path = std::filesystem::temp_directory_path() / "harmtori_test_cfg.txt";
  {
    std::ofstream f(path);
    f << "detection_tol = 1e-8\nq_range = 2\n";
  }
  const RunConfig c = load_config_file(path.string());
  CHECK(c.detection_tol == 1e-8);
  CHECK(c.q_range == 2);
  ::setenv(kConfigEnv, path.string().c_str(), 1);
  CHECK(config_from_environment().q_range == 2);
  ::unsetenv(kConfigEnv);
  CHECK(config_from_environment().q_range == 1);
  CHECK_THROWS_AS(load_config_file("/nonexistent/cfg"), std::invalid_argument);
  std::filesystem::remove(path);

  // rendering parses back to the same values
  RunConfig d;
  d.solver_tol = 1.0 / 3.0 * 1e-10;
  d.max_den = 9;
  std::string text = to_string(d);
  for (char& ch : text)
    if (ch == ' ') ch = '\n';
  const RunConfig e = parse_config(text);
  CHECK(e.solver_tol == d.solver_tol);
  CHECK(e.max_den == 9);
}

TEST_CASE("number formatting round trips") {
  for (double x : {1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.0}) CHECK(std::stod(fmt17(x)) == x);
  CHECK(fmt17(cplx(1.5, -2.0)) == "1.5,-2");
}

TEST_CASE("curve report on a symmetric curve") {
  const cplx a = std::polar(0.3, 0.4);
  const CurveReport r = curve_report({a, -a}, 64);
  REQUIRE(r.spectral());
  CHECK(r.checklist.size() == 9);
  for (const auto& c : r.checklist) {
    INFO(c.id << " " << c.condition << " residual " << c.residual);
    CHECK(c.passed);
    CHECK(c.residual <= c.tolerance);
  }
  const std::string text = to_text(r);
  CHECK(text.find("q: 0") != std::string::npos);
  CHECK(text.find("component: annulus p=1 q=0") != std::string::npos);
  CHECK(r.closing->l == 1);
}

TEST_CASE("curve report on a generic curve") {
  const CurveReport r = curve_report({cplx(0.3, 0.2), cplx(0.4, -0.1)}, 20);
  CHECK_FALSE(r.spectral());
  CHECK(r.checklist.size() == 9);
  for (const auto& c : r.checklist) {
    if (c.id == "P.8")
      CHECK_FALSE(c.passed);
    else
      CHECK(c.passed);
  }
  CHECK_THROWS_AS(curve_report({cplx(0.3, 0.2), cplx(0.3, 0.2)}, 20), DomainError);
}

TEST_CASE("genus-zero report") {
  const Genus0Report r = genus0_report({0.0, {0, 1, 1, 0}});
  CHECK(std::abs(r.energy - M_PI * M_PI) < 1e-12);
  CHECK_FALSE(r.large_energy);
  CHECK(r.period_residual < 1e-11);
  CHECK(r.eigenline_residual < 1e-9);
  CHECK(r.scalar_residual < 1e-10);
  CHECK(to_text(r).find("energy: 9.869604401089358") != std::string::npos);
  const Genus0Report big = genus0_report({0.999, {0, 1, 1, 0}});
  CHECK(big.large_energy);
  CHECK(to_text(big).find("warning") != std::string::npos);
}
