#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "harmtori/sweep.hpp"

namespace harmtori {

// Column order of the level-set CSV.
inline constexpr const char* kLevelSetHeader = "p,q,k,u_t,v_t,re_alpha,im_alpha,re_beta,im_beta";

// '#' comment lines (provenance, topology, failures), then the header and one
// row per solved grid point. Failed points are listed in a comment, not as rows.
void write_level_set_csv(std::ostream& os, const LevelSetMesh& mesh, const std::string& provenance,
                         const TopologyReport* topology = nullptr);

// ASCII OBJ with one vertex per grid point at (Re alpha, Im alpha, k); faces
// join neighbouring grid cells whose four corners all solved.
void write_level_set_obj(std::ostream& os, const LevelSetMesh& mesh);

struct LevelSetRow {
  Rational p, q;
  double k, u_t, v_t;
  BranchPair bp;
};

// Parses a file written by write_level_set_csv; throws std::invalid_argument on malformed rows.
std::vector<LevelSetRow> read_level_set_csv(std::istream& is);

}  // namespace harmtori
