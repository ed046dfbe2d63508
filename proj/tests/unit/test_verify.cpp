#include <doctest.h>

#include <random>

#include "harmtori/curve_geometry.hpp"
#include "harmtori/verify.hpp"

using namespace harmtori;

TEST_CASE("suite names") {
  for (const char* s : {"all", "elliptic", "curves", "differentials", "moduli"}) CHECK(is_suite_name(s));
  CHECK_FALSE(is_suite_name("nope"));
  CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
}

TEST_CASE("random pairs stay inside the sampling region") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const BranchPair bp = random_branch_pair(rng);
    CHECK(std::abs(bp.alpha) <= 0.85);
    CHECK(std::abs(bp.beta) <= 0.85);
    const double k = jacobi_modulus(bp);
    CHECK(k >= 0.05);
    CHECK(k <= 0.95);
  }
}

TEST_CASE("elliptic and curve suites pass and are reproducible") {
  for (const char* name : {"elliptic", "curves"}) {
    const auto par = run_suite(name, {42, true});
    const auto ser = run_suite(name, {42, false});
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      INFO(par[i].name << " " << par[i].max_residual);
      CHECK(par[i].passed);
      CHECK(par[i].max_residual == ser[i].max_residual);
      CHECK(par[i].worst_sample == ser[i].worst_sample);
    }
  }
  const std::string text = to_text(run_suite("elliptic", {7, true}));
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("moduli suite passes") {
  for (const auto& r : run_suite("moduli", {42, true})) {
    INFO(r.name << " " << r.max_residual << " " << r.worst_sample);
    CHECK(r.passed);
  }
}
