#pragma once

#include <array>
#include <complex>
#include <functional>
#include <cstdint>
#include <string>
#include <vector>

#include "harmtori/curve_geometry.hpp"
#include "harmtori/rational.hpp"

namespace harmtori {

enum class Differential { Omega, Second, Epsilon, ThetaE, ThetaP };

std::string to_string(Differential d);

// Constants shared by all differentials of one frame.
struct DifferentialContext {
  JacobiFrame frame;
  double K, E;
  cplx sheet_c;  // w = C eta / (zeta - nu)^2
};

DifferentialContext make_context(const JacobiFrame& fr);

// Coefficient h(z, w) of the differential h dz at a point (z, w) of the Jacobi curve.
cplx differential_coefficient(Differential d, const DifferentialContext& ctx, cplx z, cplx w);

// Derivative of w along the curve: w' = -z (1 + k^2 - 2 k^2 z^2) / w.
cplx w_derivative(cplx z, cplx w, double k);

// A piecewise path in the z-plane: straight segments and elliptic arcs.
struct PathPiece {
  enum Kind { Line, Arc } kind = Line;
  cplx from, to;  // line endpoints
  cplx center;    // elliptic arc: center + rx cos(theta) + i ry sin(theta)
  double rx = 0.0, ry = 0.0;
  double theta0 = 0.0, theta1 = 0.0;

  cplx point(double t) const;    // t in [0,1]
  cplx tangent(double t) const;  // dz/dt
};

struct PathSpec {
  std::vector<PathPiece> pieces;
  cplx w_start;  // sheet at the first point
  PathPiece& add_line(cplx a, cplx b);
  PathPiece& add_arc(cplx center, double rx, double ry, double theta0, double theta1);
  cplx start() const;
  cplx end() const;
};

struct ContourOptions {
  double abs_tol = 1e-12;
  double clearance = 1e-3;
  double step_fraction = 0.25;
};

struct ContourResult {
  cplx value;
  cplx w_end;  // continued sheet value at the end of the path
};

// Line integral with sheet tracking: at every node the sign of w is the one
// nearest the value carried from the start of the current step.
ContourResult contour_integral(Differential d, const DifferentialContext& ctx, const PathSpec& path,
                               const ContourOptions& opt = {});

// Integral of coef(z, w) dz along a path with sheet tracking.
using Integrand = std::function<cplx(cplx z, cplx w)>;
ContourResult contour_integral(const Integrand& coef, const DifferentialContext& ctx,
                               const PathSpec& path, const ContourOptions& opt = {});

// Linear combination sum c_i D_i integrated along a path.
struct DifferentialCombo {
  std::vector<std::pair<Differential, cplx>> terms;
};
ContourResult contour_integral(const DifferentialCombo& combo, const DifferentialContext& ctx,
                               const PathSpec& path, const ContourOptions& opt = {});

// Homology loops. A: clockwise around [-1,1]; B: clockwise around [1,1/k]
// on the principal sheet. Shapes are chosen to keep clear of the poles.
PathSpec loop_A(const DifferentialContext& ctx);
PathSpec loop_B(const DifferentialContext& ctx);

// Principal path from f(+-1) on the lower sheet, around z = 1, back to f(+-1)
// on the upper sheet, inside the slit plane.
PathSpec principal_gamma_path(const DifferentialContext& ctx, int sign);

// Period table entry by quadrature.
cplx period(Differential d, const DifferentialContext& ctx, char loop);

// Exact integrals of Theta^E: 2 i eta+(1) for sign +1, -2 i eta+(-1) for sign -1.
cplx theta_E_gamma(int sign, const BranchPair& bp);

// Closed form of the Theta^P integral over the principal path; purely imaginary.
// Throws DomainError when nu is within 1e-9 of +-1.
cplx theta_P_gamma_closed(int sign, const JacobiFrame& fr);

// Same integral expressed on the universal cover: continuous in (u_t, v_t).
cplx theta_P_gamma_lifted(int sign, const ModuliPoint& mp);

// Leading Laurent coefficient ratio pp(Theta^P + s Theta^E) / pp(Theta^E) at zeta = 0,
// by contour quadrature on a small circle about z0.
cplx principal_part_ratio(const DifferentialContext& ctx, double shift = 0.0);

// Same ratio in closed form: i K C (f^-1)'(z0) / nu^2 (shift = 0).
cplx principal_part_ratio_closed(const DifferentialContext& ctx);

// |Re r| / |r| for r = principal_part_ratio; zero for Theta^P.
double theta_P_characterization_check(const JacobiFrame& fr, double shift = 0.0);

struct ClosingData {
  std::int64_t n = 1, m = 1;    // S = n/m
  std::int64_t np = 0, mp = 1;  // T = np/mp
  std::int64_t l = 1;
  std::int64_t y = 0;
  double a = 0.0, b = 0.0;
  std::int64_t gamma_plus = 0, gamma_minus = 0;
  // Closing integrals divided by 2 pi i: (Psi^E on gamma+, gamma-), (Psi^P on gamma+, gamma-).
  std::array<cplx, 4> closing{};
  double integrality_residual = 0.0;
};

// Builds the minimal closing pair Psi^E = a Theta^E, Psi^P = b Theta^E + l Theta^P
// for the principal paths. T must be the value on those paths.
ClosingData construct_psi(const Rational& S, const Rational& T, const JacobiFrame& fr,
                          double match_tol = 1e-9);

// Closing integrals (over 2 pi i) of x Psi^E + y Psi^P along the principal paths,
// by contour quadrature.
std::array<cplx, 2> closing_integrals_quadrature(const ClosingData& cd, const JacobiFrame& fr,
                                                 double xE, double xP);

}  // namespace harmtori
