#pragma once

#include <cstdint>
#include <string>

#include "harmtori/sweep.hpp"

namespace harmtori {

// Environment variable naming the config file.
inline constexpr const char* kConfigEnv = "HARMTORI_CONFIG";

struct RunConfig {
  double solver_tol = 1e-10;
  double detection_tol = 1e-9;
  double quadrature_tol = 1e-12;
  int k_grid = 8;
  int angle_grid = 33;
  double k_min = 0.2;
  double k_max = 0.8;
  double span = 6.283185307179586;
  double start_angle = 0.3;
  std::int64_t max_den = 64;
  std::int64_t q_range = 1;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string mesh_path;

  SweepOptions sweep_options() const;
};

// Throws std::invalid_argument on unknown keys, malformed values or violated ranges.
void validate(const RunConfig& c);

// Flat "key = value" lines; '#' starts a comment.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Defaults overlaid with the file named by HARMTORI_CONFIG, if set.
RunConfig config_from_environment();

// Single-line key=value rendering used in provenance headers.
std::string to_string(const RunConfig& c);

}  // namespace harmtori
