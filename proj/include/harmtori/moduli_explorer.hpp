#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "harmtori/curve_geometry.hpp"
#include "harmtori/rational.hpp"

namespace harmtori {

// T0 on the finite chart (u, v real, u != v).
double T0_value(const ChartCoords& c);

// T on the universal cover; total on the band u_t < v_t < u_t + 2 pi.
double T_tilde(const ModuliPoint& mp);

// dT0/du on the finite chart.
double dT0_du(const ChartCoords& c);

// Derivatives of T~ with respect to the lifted angles; valid in every chart.
double dT_tilde_du(const ModuliPoint& mp);
double dT_tilde_dv(const ModuliPoint& mp);

// dT~/du_t at u_t = pi (u at infinity), as a function of (p, k, v).
double dT_tilde_du_at_infinity(double p, double k, double v);

struct SolveOptions {
  double residual = 1e-10;
  double band_shrink = 1e-6;
  int max_iter = 200;
};

struct SolveFailure : std::runtime_error {
  double lo, hi;
  SolveFailure(const std::string& what, double lo_, double hi_)
      : std::runtime_error(what), lo(lo_), hi(hi_) {}
};

// Level-set solve T~ = q. For p <= 1 the fixed angle is u_t and v_t is found
// in (u_t, u_t + 2 pi); for p > 1 the fixed angle is v_t and u_t is found in
// (v_t - 2 pi, v_t).
ModuliPoint solve_level(double p, double q, double k, double fixed_angle, const SolveOptions& opt = {});

// True when the solver holds u_t fixed for this p.
inline bool solves_for_v(double p) { return p <= 1.0; }

// Angle held fixed by the solver convention for this p.
double fixed_angle_of(const ModuliPoint& mp);

struct Annulus {
  Rational q;
};
struct Helicoid {
  Rational p;
  Rational q_class;  // residue in [0, |p-1|)
};
using ComponentId = std::variant<Annulus, Helicoid>;

ComponentId classify_component(const Rational& p, const Rational& q);
bool same_component(const ComponentId& a, const ComponentId& b);
std::string describe(const ComponentId& c);

// T on the principal paths: T~ at the principal representative minus the
// winding correction. Exact in rationals given the solver level q.
Rational principal_T(const Rational& p, const Rational& q, const ModuliPoint& mp);

// Numerical T on the principal paths for a branch pair.
double principal_T_value(const BranchPair& bp);

struct SpectralCandidate {
  Rational p;
  Rational q;       // canonical representative of T modulo Z<1, p>, in [0, 1/den(p))
  Rational path_T;  // T on the principal paths, the value the closing construction needs
  double p_residual, q_residual;
};

struct SpectralTestResult {
  double S, T;  // T on the principal paths
  double p_residual, q_residual;
  std::optional<SpectralCandidate> candidate;
};

// T is defined only modulo Z<1, S> = (1/m) Z for S = n/m, so the reported q is
// reduced to [0, 1/m).
SpectralTestResult spectral_test(const BranchPair& bp, std::int64_t max_den, double tol = 1e-9);

struct ModuliSummary {
  ComponentId component;
  std::int64_t l;
  std::optional<std::int64_t> monodromy;  // -m' on annuli
  std::string fibre;
};

ModuliSummary moduli_summary(const Rational& p, const Rational& q);

// Distinct components with q-denominator <= max_den; for p = 1, q is also
// limited to [-q_range, q_range].
std::vector<ComponentId> enumerate_components(const Rational& p, std::int64_t max_den,
                                              std::int64_t q_range = 1);

struct MonodromyResult {
  std::int64_t shift;           // c with Psi^P(1) - Psi^P(0) = c Psi^E
  double shift_real;            // before rounding
  double lifted_shift;          // same quantity from the lifted closed form
  double increment_over_2pi;    // change of the gamma+ integral of Theta^P over 2 pi i
  double closure_error;         // endpoint curve vs start curve (unordered)
  int samples;
};

// Tracks Psi^P around the loop of the annulus S_1(1, q) obtained by advancing
// the rescaled u angle by pi at fixed k.
MonodromyResult monodromy_track(const Rational& q, int loop_samples, double k = 0.5, double start_angle = 0.3);

// Unwrapped change (over 2 pi) of the gamma+ integral of Theta^P along a closed
// sequence of moduli points.
double unwrapped_gamma_increment(const std::vector<ModuliPoint>& loop);

}  // namespace harmtori
