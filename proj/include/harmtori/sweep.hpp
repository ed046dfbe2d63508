#pragma once

#include <string>
#include <vector>

#include "harmtori/moduli_explorer.hpp"

namespace harmtori {

struct SweepOptions {
  int k_grid = 8;
  int angle_grid = 33;
  double span = 6.283185307179586;  // advance of the rescaled free angle
  double k_min = 0.2;
  double k_max = 0.8;
  double start_angle = 0.3;
  SolveOptions solve;
};

void validate(const SweepOptions& opt);

struct LevelSetRecord {
  int k_index = 0, angle_index = 0;
  double k = 0.0;
  double free_angle = 0.0;  // lifted angle held fixed by the solver
  ModuliPoint mp;
  BranchPair bp;
  double residual = 0.0;  // |T~ - q|
  bool ok = false;
  std::string error;
};

struct LevelSetMesh {
  Rational p, q;
  SweepOptions opt;
  std::vector<LevelSetRecord> records;  // k-major: index = k_index * angle_grid + angle_index

  const LevelSetRecord& at(int ki, int ai) const {
    return records[static_cast<std::size_t>(ki) * opt.angle_grid + ai];
  }
  int failures() const;
};

// Rescaled free-angle samples run from rescale(start_angle) over span; the
// solver convention of solve_level decides which angle is free.
LevelSetMesh sweep_level_set(const Rational& p, const Rational& q, const SweepOptions& opt);
LevelSetMesh sweep_level_set_serial(const Rational& p, const Rational& q, const SweepOptions& opt);

// Deck-action check on each k row, advancing the rescaled free angle by pi.
struct TopologyRow {
  double k;
  double closure_error;  // p = 1: unordered branch-pair distance between start and end
  double deck_error;     // p != 1: end vs lambda~ of the start on level q - (p-1)
  double level_shift;    // T~(lambda~ start) - q, expected p - 1
};

struct TopologyReport {
  Rational shift;  // p - 1
  std::vector<TopologyRow> rows;
  double max_closure = 0.0, max_deck = 0.0, max_shift_error = 0.0;
};

TopologyReport sweep_topology(const Rational& p, const Rational& q, const SweepOptions& opt);

}  // namespace harmtori
