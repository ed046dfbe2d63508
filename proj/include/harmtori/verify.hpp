#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "harmtori/curve_geometry.hpp"

namespace harmtori {

struct InvariantResult {
  std::string suite, name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool passed = false;
  std::string worst_sample;  // replayable description of the worst sample
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  bool parallel = true;
};

bool is_suite_name(const std::string& name);  // all, elliptic, curves, differentials, moduli

// Throws std::invalid_argument for an unknown suite.
std::vector<InvariantResult> run_suite(const std::string& name, const VerifyOptions& opt = {});

std::string to_text(const std::vector<InvariantResult>& results);

// Random branch pair inside the disc of radius 0.85 with modulus in [0.05, 0.95].
BranchPair random_branch_pair(std::mt19937_64& rng);

}  // namespace harmtori
