#pragma once

#include <complex>
#include <utility>

#include "harmtori/elliptic_core.hpp"

namespace harmtori {

using cplx = std::complex<double>;

// Ordered pair of distinct points of the open unit disc.
struct BranchPair {
  cplx alpha;
  cplx beta;
};

// Throws DomainError if the pair leaves the disc or hits the diagonal.
void validate(const BranchPair& bp);

// A point of the Riemann sphere in homogeneous coordinates (x : y).
struct HPoint {
  cplx x;
  cplx y = 1.0;
  static HPoint infinity() { return {1.0, 0.0}; }
  bool is_infinite(double tol = 0.0) const { return std::abs(y) <= tol * std::abs(x); }
  cplx value() const { return x / y; }
};

// z -> (a z + b) / (c z + d).
struct Mobius {
  cplx a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }
  HPoint apply(const HPoint& p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
  cplx derivative(cplx z) const {
    const cplx den = c * z + d;
    return (a * d - b * c) / (den * den);
  }
  Mobius inverse() const { return {d, -b, -c, a}; }
  Mobius compose(const Mobius& inner) const;  // this o inner
};

// The Mobius map with z1 -> w1, z2 -> w2, z3 -> w3.
Mobius mobius_from_points(const HPoint& z1, const HPoint& z2, const HPoint& z3, const HPoint& w1,
                          const HPoint& w2, const HPoint& w3);

// Reflection through the unit circle, 1 / conj(z), in homogeneous form.
HPoint reflect_unit(cplx z);

double jacobi_modulus(const BranchPair& bp);

// Intersections of the branch circle with the unit circle, labeled so that
// mu lies between alpha and its reflection and nu between beta and its reflection.
std::pair<cplx, cplx> circle_points(const BranchPair& bp);

// Normalization of the curve to Jacobi form w^2 = (1-z^2)(1-k^2z^2).
struct JacobiFrame {
  BranchPair bp;
  double k = 0.5;
  cplx mu, nu;  // preimages of 0 and infinity
  cplx z0;      // image of zeta = 0
  Mobius f;     // zeta -> z
  Mobius finv;  // z -> zeta

  cplx to_z(cplx zeta) const { return f(zeta); }
  cplx to_zeta(cplx z) const { return finv(z); }
};

JacobiFrame build_frame(const BranchPair& bp);

// Point of the universal cover: p > 0, 0 < k < 1, u_t < v_t < u_t + 2 pi.
// u = tan(u_t/2), v = tan(v_t/2) are the finite-chart coordinates.
struct ModuliPoint {
  double p = 1.0;
  double k = 0.5;
  double u_t = 0.0;
  double v_t = 1.0;
};

void validate(const ModuliPoint& mp);

double S_value(const BranchPair& bp);

// Forward coordinates with u_t in (-pi, pi] and v_t in (u_t, u_t + 2 pi).
ModuliPoint forward_coords(const BranchPair& bp);

// z0 = f(0) in terms of (p, k, u_t, v_t); valid in every chart.
cplx z0_of(const ModuliPoint& mp);

// f^-1 built from the coordinates, normalized so f^-1(iu) = 1.
Mobius inverse_map(const ModuliPoint& mp);

BranchPair inverse_coords(const ModuliPoint& mp);

BranchPair lambda_swap(const BranchPair& bp);
BranchPair chi_negate(const BranchPair& bp);

// Finite-chart form of the swap: (p,k,u,v) -> (p,k,-1/(ku),-1/(kv)).
struct ChartCoords {
  double p, k, u, v;
};
ChartCoords lambda_chart(const ChartCoords& c);
// (p,k,u,v) -> (1/p,k,v,u).
ChartCoords chi_chart(const ChartCoords& c);

// Rescaled lifted angle: tan(X/2) = sqrt(k) tan(x/2), continuous and
// commuting with translation by 2 pi.
double rescale_angle(double angle, double k);
double unrescale_angle(double rescaled, double k);

// Deck generator: rescaled angles advance by pi.
ModuliPoint deck_lambda_tilde(const ModuliPoint& mp);
// (u_t, v_t) -> (u_t + 2 pi, v_t + 2 pi).
ModuliPoint deck_iota_tilde(const ModuliPoint& mp);

// eta+(zeta) = zeta |zeta - alpha| |zeta - beta| on the unit circle.
cplx eta_plus(cplx zeta, const BranchPair& bp);

// P(zeta) = (zeta-alpha)(1-conj(alpha) zeta)(zeta-beta)(1-conj(beta) zeta).
cplx branch_polynomial(cplx zeta, const BranchPair& bp);

// Principal Jacobi square root w = sqrt(1-z) sqrt(1+z) sqrt(1-kz) sqrt(1+kz);
// positive on the imaginary axis, cuts along [1,1/k] and [-1/k,-1].
cplx w_principal(cplx z, double k);

// Constant C with w = C eta / (zeta - nu)^2 on the sheet that carries eta+ to w+.
cplx sheet_constant(const JacobiFrame& fr);

// eta on the sheet matching a given w at the point z.
cplx eta_from_w(const JacobiFrame& fr, cplx z, cplx w);

}  // namespace harmtori
