#include "harmtori/export.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "harmtori/report.hpp"

namespace harmtori {

void write_level_set_csv(std::ostream& os, const LevelSetMesh& mesh, const std::string& provenance,
                         const TopologyReport* topology) {
  os << "# harmtori level-set p=" << mesh.p.str() << " q=" << mesh.q.str() << "\n";
  os << "# config " << provenance << "\n";
  os << "# free_angle " << (solves_for_v(mesh.p.value()) ? "u_t" : "v_t") << "\n";
  if (topology) {
    os << "# deck_shift " << topology->shift.str() << " max_closure " << fmt17(topology->max_closure)
       << " max_deck_error " << fmt17(topology->max_deck) << " max_shift_error "
       << fmt17(topology->max_shift_error) << "\n";
  }
  const int fails = mesh.failures();
  if (fails > 0) {
    os << "# partial " << fails << " failed points:";
    for (const auto& r : mesh.records)
      if (!r.ok) os << " (" << r.k_index << "," << r.angle_index << ")";
    os << "\n";
  }
  os << kLevelSetHeader << "\n";
  for (const auto& r : mesh.records) {
    if (!r.ok) continue;
    os << mesh.p.str() << "," << mesh.q.str() << "," << fmt17(r.k) << "," << fmt17(r.mp.u_t) << ","
       << fmt17(r.mp.v_t) << "," << fmt17(r.bp.alpha) << "," << fmt17(r.bp.beta) << "\n";
  }
}

void write_level_set_obj(std::ostream& os, const LevelSetMesh& mesh) {
  os << "# harmtori level-set p=" << mesh.p.str() << " q=" << mesh.q.str() << " embedding (Re alpha, Im alpha, k)\n";
  for (const auto& r : mesh.records) {
    // Failed points keep their slot so that indices stay on the grid.
    const cplx a = r.ok ? r.bp.alpha : cplx(0.0, 0.0);
    os << "v " << fmt17(a.real()) << " " << fmt17(a.imag()) << " " << fmt17(r.k) << "\n";
  }
  const int K = mesh.opt.k_grid, A = mesh.opt.angle_grid;
  auto idx = [&](int ki, int ai) { return ki * A + ai + 1; };
  for (int ki = 0; ki + 1 < K; ++ki)
    for (int ai = 0; ai + 1 < A; ++ai) {
      if (!(mesh.at(ki, ai).ok && mesh.at(ki + 1, ai).ok && mesh.at(ki, ai + 1).ok && mesh.at(ki + 1, ai + 1).ok))
        continue;
      os << "f " << idx(ki, ai) << " " << idx(ki + 1, ai) << " " << idx(ki + 1, ai + 1) << "\n";
      os << "f " << idx(ki, ai) << " " << idx(ki + 1, ai + 1) << " " << idx(ki, ai + 1) << "\n";
    }
}

std::vector<LevelSetRow> read_level_set_csv(std::istream& is) {
  std::vector<LevelSetRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kLevelSetHeader) throw std::invalid_argument("unexpected level-set header: " + line);
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) throw std::invalid_argument("level-set row needs 9 fields: " + line);
    auto num = [&](int i) {
      char* end = nullptr;
      const double v = std::strtod(f[i].c_str(), &end);
      if (end == f[i].c_str() || *end != '\0') throw std::invalid_argument("bad number '" + f[i] + "'");
      return v;
    };
    LevelSetRow r;
    r.p = parse_rational(f[0]);
    r.q = parse_rational(f[1]);
    r.k = num(2);
    r.u_t = num(3);
    r.v_t = num(4);
    r.bp = {{num(5), num(6)}, {num(7), num(8)}};
    rows.push_back(r);
  }
  if (!header) throw std::invalid_argument("level-set file has no header");
  return rows;
}

}  // namespace harmtori
