#include "harmtori/curve_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <tuple>

#include "harmtori/elliptic_core.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Matrix sending z1 -> 0, z2 -> infinity, z3 -> 1.
Mobius to_standard(const HPoint& z1, const HPoint& z2, const HPoint& z3) {
  const cplx l1z3 = z3.x * z1.y - z3.y * z1.x;
  const cplx l2z3 = z3.x * z2.y - z3.y * z2.x;
  Mobius m{z1.y * l2z3, -z1.x * l2z3, z2.y * l1z3, -z2.x * l1z3};
  const double s = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  m.a /= s;
  m.b /= s;
  m.c /= s;
  m.d /= s;
  return m;
}

double wrap_2pi(double x) {
  double r = std::fmod(x, 2.0 * kPi);
  if (r < 0) r += 2.0 * kPi;
  return r;
}

}  // namespace

Mobius Mobius::compose(const Mobius& in) const {
  return {a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c, c * in.b + d * in.d};
}

Mobius mobius_from_points(const HPoint& z1, const HPoint& z2, const HPoint& z3, const HPoint& w1,
                          const HPoint& w2, const HPoint& w3) {
  return to_standard(w1, w2, w3).inverse().compose(to_standard(z1, z2, z3));
}

HPoint reflect_unit(cplx z) { return {1.0, std::conj(z)}; }

void validate(const BranchPair& bp) {
  if (!(std::abs(bp.alpha) < 1.0) || !(std::abs(bp.beta) < 1.0))
    throw DomainError("branch points must lie in the open unit disc");
  if (bp.alpha == bp.beta) throw DomainError("branch points must be distinct");
}

double jacobi_modulus(const BranchPair& bp) {
  validate(bp);
  const double s = std::abs(1.0 - std::conj(bp.alpha) * bp.beta);
  const double d = std::abs(bp.alpha - bp.beta);
  const double k = (s - d) / (s + d);
  if (k < 1e-12 || k > 1.0 - 1e-12) throw DomainError("elliptic modulus degenerates");
  return k;
}

std::pair<cplx, cplx> circle_points(const BranchPair& bp) {
  validate(bp);
  // Generalized circle A|z|^2 + 2 Re(conj(B) z) + C = 0 through alpha, its
  // reflection and beta; homogeneous rows keep the reflection well scaled.
  auto row = [](const HPoint& p) {
    const cplx xy = p.x * std::conj(p.y);
    return std::array<double, 4>{std::norm(p.x), 2.0 * xy.real(), 2.0 * xy.imag(), std::norm(p.y)};
  };
  const std::array<std::array<double, 4>, 3> M = {row({bp.alpha, 1.0}), row(reflect_unit(bp.alpha)),
                                                  row({bp.beta, 1.0})};
  std::array<double, 4> n{};
  for (int j = 0; j < 4; ++j) {
    double sub[3][3];
    for (int r = 0; r < 3; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c)
        if (c != j) sub[r][cc++] = M[r][c];
    }
    const double det = sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
                       sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
                       sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
    n[j] = (j % 2 == 0) ? det : -det;
  }
  const double A = n[0], Bx = n[1], By = n[2], C = n[3];
  const double nb2 = Bx * Bx + By * By;
  if (nb2 == 0.0) throw DomainError("branch circle does not meet the unit circle");
  const double d = -(A + C) / 2.0;
  const double h2 = 1.0 - d * d / nb2;
  if (h2 <= 1e-24) throw DomainError("branch circle is tangent to the unit circle");
  const double nb = std::sqrt(nb2);
  const cplx foot(d * Bx / nb2, d * By / nb2);
  const cplx tangent(-By / nb, Bx / nb);
  const double h = std::sqrt(h2);
  const cplx P1 = foot + h * tangent;
  const cplx P2 = foot - h * tangent;

  const double scale = std::max({std::abs(A), nb, std::abs(C)});
  bool mu_is_p1;
  if (std::abs(A) <= 1e-12 * scale) {
    auto t = [&](cplx z) { return (z * std::conj(tangent)).real(); };
    const double dir = t(P2) - t(P1);
    mu_is_p1 = dir * (t(bp.alpha) - t(bp.beta)) < 0;
  } else {
    const cplx center(-Bx / A, -By / A);
    auto theta = [&](cplx z) { return std::arg(z - center); };
    auto off = [&](cplx z, cplx from) { return wrap_2pi(theta(z) - theta(from)); };
    if (off(bp.alpha, P1) < off(P2, P1))
      mu_is_p1 = off(bp.alpha, P1) < off(bp.beta, P1);
    else
      mu_is_p1 = !(off(bp.alpha, P2) < off(bp.beta, P2));
  }
  cplx mu = mu_is_p1 ? P1 : P2;
  cplx nu = mu_is_p1 ? P2 : P1;
  mu /= std::abs(mu);
  nu /= std::abs(nu);
  return {mu, nu};
}

JacobiFrame build_frame(const BranchPair& bp) {
  JacobiFrame fr;
  fr.bp = bp;
  fr.k = jacobi_modulus(bp);
  fr.f = mobius_from_points({bp.alpha, 1.0}, reflect_unit(bp.alpha), {bp.beta, 1.0}, {1.0, 1.0},
                            {-1.0, 1.0}, {1.0 / fr.k, 1.0});
  fr.finv = fr.f.inverse();
  std::tie(fr.mu, fr.nu) = circle_points(bp);
  fr.z0 = fr.f.b / fr.f.d;
  return fr;
}

void validate(const ModuliPoint& mp) {
  if (!(mp.p > 0.0)) throw DomainError("p must be positive");
  require_modulus(mp.k);
  if (!(mp.u_t < mp.v_t && mp.v_t < mp.u_t + 2.0 * kPi))
    throw DomainError("lifted angles must satisfy u < v < u + 2 pi");
}

double S_value(const BranchPair& bp) {
  validate(bp);
  return std::abs(1.0 - bp.alpha) * std::abs(1.0 - bp.beta) /
         (std::abs(1.0 + bp.alpha) * std::abs(1.0 + bp.beta));
}

ModuliPoint forward_coords(const BranchPair& bp) {
  const JacobiFrame fr = build_frame(bp);
  auto angle = [&](cplx zeta) {
    const HPoint h = fr.f.apply({zeta, 1.0});
    // f(zeta) = i tan(angle/2) = N/D with N, D sharing one phase; remove it
    // through the larger entry so that zeta -> infinity stays well defined
    const cplx n = -I * h.x, d = h.y;
    const cplx ref = std::abs(n) > std::abs(d) ? n : d;
    const cplx ph = std::conj(ref) / std::abs(ref);
    double t = 2.0 * std::atan2((n * ph).real(), (d * ph).real());
    while (t <= -kPi) t += 2.0 * kPi;
    while (t > kPi) t -= 2.0 * kPi;
    return t;
  };
  ModuliPoint mp;
  mp.p = S_value(bp);
  mp.k = fr.k;
  mp.u_t = angle(1.0);
  mp.v_t = angle(-1.0);
  while (mp.v_t <= mp.u_t) mp.v_t += 2.0 * kPi;
  while (mp.v_t >= mp.u_t + 2.0 * kPi) mp.v_t -= 2.0 * kPi;
  return mp;
}

cplx z0_of(const ModuliPoint& mp) {
  validate(mp);
  const double k = mp.k;
  const double a = std::sin(0.5 * mp.u_t), b = std::cos(0.5 * mp.u_t);
  const double c = std::sin(0.5 * mp.v_t), d = std::cos(0.5 * mp.v_t);
  const double Wa = std::sqrt(b * b + k * k * a * a);
  const double Wc = std::sqrt(d * d + k * k * c * c);
  const double den = mp.p * Wc * b * b + Wa * d * d;
  const double re = std::sqrt(mp.p * Wa * Wc) * std::abs(a * d - b * c) / den;
  const double im = (mp.p * a * b * Wc + c * d * Wa) / den;
  return {re, im};
}

Mobius inverse_map(const ModuliPoint& mp) {
  const cplx z0 = z0_of(mp);
  const double a = std::sin(0.5 * mp.u_t), b = std::cos(0.5 * mp.u_t);
  const cplx sc = (I * a + b * std::conj(z0)) / (I * a - b * z0);
  return {sc, -sc * z0, 1.0, std::conj(z0)};
}

BranchPair inverse_coords(const ModuliPoint& mp) {
  const Mobius g = inverse_map(mp);
  return {g(1.0), g(1.0 / mp.k)};
}

BranchPair lambda_swap(const BranchPair& bp) { return {bp.beta, bp.alpha}; }
BranchPair chi_negate(const BranchPair& bp) { return {-bp.alpha, -bp.beta}; }

ChartCoords lambda_chart(const ChartCoords& c) {
  return {c.p, c.k, -1.0 / (c.k * c.u), -1.0 / (c.k * c.v)};
}

ChartCoords chi_chart(const ChartCoords& c) { return {1.0 / c.p, c.k, c.v, c.u}; }

double rescale_angle(double angle, double k) {
  const double W = std::nearbyint(angle / (2.0 * kPi));
  const double r = angle - 2.0 * kPi * W;
  return 2.0 * kPi * W + 2.0 * std::atan2(std::sqrt(k) * std::sin(0.5 * r), std::cos(0.5 * r));
}

double unrescale_angle(double rescaled, double k) {
  const double W = std::nearbyint(rescaled / (2.0 * kPi));
  const double r = rescaled - 2.0 * kPi * W;
  return 2.0 * kPi * W + 2.0 * std::atan2(std::sin(0.5 * r) / std::sqrt(k), std::cos(0.5 * r));
}

ModuliPoint deck_lambda_tilde(const ModuliPoint& mp) {
  ModuliPoint out = mp;
  out.u_t = unrescale_angle(rescale_angle(mp.u_t, mp.k) + kPi, mp.k);
  out.v_t = unrescale_angle(rescale_angle(mp.v_t, mp.k) + kPi, mp.k);
  return out;
}

ModuliPoint deck_iota_tilde(const ModuliPoint& mp) {
  ModuliPoint out = mp;
  out.u_t += 2.0 * kPi;
  out.v_t += 2.0 * kPi;
  return out;
}

cplx eta_plus(cplx zeta, const BranchPair& bp) {
  return zeta * std::abs(zeta - bp.alpha) * std::abs(zeta - bp.beta);
}

cplx branch_polynomial(cplx zeta, const BranchPair& bp) {
  return (zeta - bp.alpha) * (1.0 - std::conj(bp.alpha) * zeta) * (zeta - bp.beta) *
         (1.0 - std::conj(bp.beta) * zeta);
}

cplx w_principal(cplx z, double k) {
  return std::sqrt(1.0 - z) * std::sqrt(1.0 + z) * std::sqrt(1.0 - k * z) * std::sqrt(1.0 + k * z);
}

cplx sheet_constant(const JacobiFrame& fr) {
  // f(mu) = 0 where w+ = 1.
  const cplx d = fr.mu - fr.nu;
  return d * d / eta_plus(fr.mu, fr.bp);
}

cplx eta_from_w(const JacobiFrame& fr, cplx z, cplx w) {
  const cplx zeta = fr.to_zeta(z);
  const cplx d = zeta - fr.nu;
  return w * d * d / sheet_constant(fr);
}

}  // namespace harmtori
