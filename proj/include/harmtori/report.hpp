#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmtori/differentials.hpp"
#include "harmtori/genus_zero.hpp"
#include "harmtori/moduli_explorer.hpp"

namespace harmtori {

// Shortest round-trip-safe rendering with 17 significant digits.
std::string fmt17(double x);
std::string fmt17(cplx z);

struct CheckEntry {
  std::string id;         // "P.1" ... "P.9"
  std::string condition;  // short name
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct CurveReport {
  BranchPair bp;
  double k = 0.0;
  ModuliPoint coords;
  SpectralTestResult detection;
  std::optional<ComponentId> component;
  std::optional<ModuliSummary> summary;
  std::optional<ClosingData> closing;
  std::vector<CheckEntry> checklist;  // exactly one entry per P.1 - P.9
  std::string line_bundle;
  bool spectral() const { return closing.has_value(); }
};

// Builds the report; the checklist is evaluated on (Psi^E, Psi^P) when the
// pair is detected as spectral and on (Theta^E, Theta^P) otherwise.
CurveReport curve_report(const BranchPair& bp, std::int64_t max_den, double detection_tol = 1e-9,
                         double quadrature_tol = 1e-12);

std::string to_text(const CurveReport& r);

struct Genus0Report {
  Genus0Data data;
  Genus0Map map;
  PeriodLattice lattice;
  cplx tau, tau_oriented;
  cplx r1, r2;
  double energy = 0.0;
  bool large_energy = false;
  double period_residual = 0.0;     // |g(tau_l) - I|
  double eigenline_residual = 0.0;  // coincidence points vs branch point
  double scalar_residual = 0.0;     // r1 through the map parameters vs closed form
};

Genus0Report genus0_report(const Genus0Data& d);
std::string to_text(const Genus0Report& r);

// |E| above this triggers the large-energy warning.
inline constexpr double kLargeEnergy = 100.0;

}  // namespace harmtori
