#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>

#include "harmtori/curve_geometry.hpp"

namespace harmtori {

// 2x2 complex matrix, row major.
struct Mat2 {
  cplx a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return {}; }
  static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(cplx s) const { return {s * a, s * b, s * c, s * d}; }
  Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  // Largest entry modulus.
  double max_abs() const;
};

// The map w -> exp(-4 Re(w) X) exp(4 Im(w) Y) with
// X = [[0,1],[-1,0]] and Y = ratio [[0, e^{i angle}], [-e^{-i angle}, 0]].
struct Genus0Map {
  double ratio;  // |Y| / |X| > 0
  double angle;  // angle between X and Y, in (0, pi)
};

void validate(const Genus0Map& m);

// Winding matrix rows (n1, m1), (n2, m2).
struct WindingMatrix {
  std::int64_t n1 = 1, m1 = 0, n2 = 0, m2 = 1;
  std::int64_t det() const { return n1 * m2 - m1 * n2; }
};

struct Genus0Data {
  cplx alpha;
  WindingMatrix M;
};

void validate(const Genus0Data& d);

struct PeriodLattice {
  cplx kappa1, kappa2;
};

cplx branch_point(const Genus0Map& m);
Genus0Map map_params(cplx alpha);

Mat2 generator_X();
Mat2 generator_Y(const Genus0Map& m);

// exp Z = I cos|Z| + Z sin|Z| / |Z| for traceless anti-hermitian Z.
Mat2 su2_exp(const Mat2& Z);

Mat2 harmonic_map_eval(const Genus0Map& m, cplx w);

PeriodLattice period_lattice(double ratio);

// tau_2 / tau_1 for (tau_1, tau_2) = M (kappa_1, kappa_2); the sign of Im is not adjusted.
cplx conformal_type(const WindingMatrix& M, double ratio);
// Same lattice with the basis (tau_1, -tau_2) when needed so that Im tau >= 0.
cplx conformal_type_oriented(const WindingMatrix& M, double ratio);

// Holonomy exponent B^l(zeta) for the loop from 0 to tau_l.
Mat2 holonomy_B(cplx zeta, const Genus0Map& m, cplx tau_l);

// Points where the eigenlines of B^l coincide: alpha and 1/conj(alpha)
// (the latter may be infinite). Throws DomainError if they disagree with
// branch_point(m) by more than 1e-9.
std::pair<HPoint, HPoint> eigenline_branch_points(const Genus0Map& m);

// Signed energy pi^2 (1 + |alpha|^2)(m1 n2 - n1 m2) / |1 - alpha^2|.
double energy(const Genus0Data& d);

struct DifferentialScalars {
  cplx r1, r2;
};

// r_l = i kappa_l |1 - i x e^{i delta}| through the map parameters.
DifferentialScalars differential_scalars(cplx alpha);
// (pi/2)(1/|1+alpha| + i/|1-alpha|), the closed form in alpha alone.
cplx differential_scalar_closed(cplx alpha);

// Spectral data of the pointwise inverse map: alpha -> -alpha.
Genus0Data invert_map(const Genus0Data& d);

}  // namespace harmtori
