#include "harmtori/genus_zero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmtori/elliptic_core.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

cplx polar_param(const Genus0Map& m) { return std::polar(m.ratio, m.angle); }

}  // namespace

double Mat2::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

void validate(const Genus0Map& m) {
  if (!(m.ratio > 0.0) || !std::isfinite(m.ratio)) throw DomainError("ratio must be positive");
  if (!(m.angle > 0.0 && m.angle < kPi)) throw DomainError("angle must lie in (0, pi)");
}

void validate(const Genus0Data& d) {
  if (!(std::abs(d.alpha) < 1.0)) throw DomainError("branch point must lie in the open unit disc");
  if (d.M.det() == 0) throw DomainError("winding matrix must be nonsingular");
}

cplx branch_point(const Genus0Map& m) {
  validate(m);
  const cplx s = polar_param(m);
  return (s - I) / (s + I);
}

Genus0Map map_params(cplx alpha) {
  if (!(std::abs(alpha) < 1.0)) throw DomainError("branch point must lie in the open unit disc");
  const cplx s = I * (1.0 + alpha) / (1.0 - alpha);
  return {std::abs(s), std::arg(s)};
}

Mat2 generator_X() { return {0.0, 1.0, -1.0, 0.0}; }

Mat2 generator_Y(const Genus0Map& m) {
  const cplx e = std::polar(1.0, m.angle);
  return Mat2{0.0, e, -std::conj(e), 0.0} * m.ratio;
}

Mat2 su2_exp(const Mat2& Z) {
  const double n = std::sqrt(std::max(0.0, Z.det().real()));
  // sin(n)/n with its Taylor limit near zero
  const double sinc = n < 1e-8 ? 1.0 - n * n / 6.0 : std::sin(n) / n;
  return Mat2::identity() * std::cos(n) + Z * sinc;
}

Mat2 harmonic_map_eval(const Genus0Map& m, cplx w) {
  validate(m);
  return su2_exp(generator_X() * (-4.0 * w.real())) * su2_exp(generator_Y(m) * (4.0 * w.imag()));
}

PeriodLattice period_lattice(double ratio) {
  if (!(ratio > 0.0)) throw DomainError("ratio must be positive");
  return {kPi / 4.0 * cplx(1.0, -1.0 / ratio), -kPi / 4.0 * cplx(1.0, 1.0 / ratio)};
}

cplx conformal_type(const WindingMatrix& M, double ratio) {
  if (!(ratio > 0.0)) throw DomainError("ratio must be positive");
  if (M.det() == 0) throw DomainError("winding matrix must be nonsingular");
  const auto f = [](std::int64_t v) { return static_cast<double>(v); };
  const cplx num(f(M.n2 + M.m2), ratio * f(M.n2 - M.m2));
  const cplx den(f(M.n1 + M.m1), ratio * f(M.n1 - M.m1));
  if (std::abs(den) == 0.0) throw DomainError("first period vanishes");
  return num / den;
}

cplx conformal_type_oriented(const WindingMatrix& M, double ratio) {
  const cplx t = conformal_type(M, ratio);
  return t.imag() < 0.0 ? -t : t;
}

Mat2 holonomy_B(cplx zeta, const Genus0Map& m, cplx tau_l) {
  validate(m);
  if (zeta == 0.0) throw DomainError("holonomy is singular at zeta = 0");
  const cplx s = I * polar_param(m);             // i x e^{i delta}
  const cplx sc = I * std::conj(polar_param(m));  // i x e^{-i delta}
  const cplx pre = (tau_l + std::conj(tau_l) * zeta) / zeta;
  const cplx upper = -(1.0 + s) + (-1.0 + s) * zeta;
  const cplx lower = (1.0 + sc) + (1.0 - sc) * zeta;
  return {0.0, pre * upper, pre * lower, 0.0};
}

std::pair<HPoint, HPoint> eigenline_branch_points(const Genus0Map& m) {
  validate(m);
  // Off-diagonal entries of B^l are linear in zeta up to the common prefactor;
  // the eigenlines coincide at the zeros of those linear factors.
  const cplx s = I * polar_param(m);
  const cplx sc = I * std::conj(polar_param(m));
  const HPoint first{1.0 + s, -1.0 + s};    // root of -(1+s) + (-1+s) zeta
  const HPoint second{-(1.0 + sc), 1.0 - sc};  // root of (1+sc) + (1-sc) zeta
  const cplx alpha = branch_point(m);
  const HPoint expect2 = reflect_unit(alpha);
  const double e1 = std::abs(first.x - alpha * first.y) / std::abs(first.y);
  const double e2 = std::abs(second.x * expect2.y - second.y * expect2.x) /
                    (std::hypot(std::abs(second.x), std::abs(second.y)) *
                     std::hypot(std::abs(expect2.x), std::abs(expect2.y)));
  if (e1 > 1e-9 || e2 > 1e-9) throw DomainError("eigenline coincidence points disagree with the branch point");
  return {first, second};
}

double energy(const Genus0Data& d) {
  validate(d);
  const double det = static_cast<double>(d.M.m1 * d.M.n2 - d.M.n1 * d.M.m2);
  return kPi * kPi * (1.0 + std::norm(d.alpha)) * det / std::abs(1.0 - d.alpha * d.alpha);
}

DifferentialScalars differential_scalars(cplx alpha) {
  const Genus0Map m = map_params(alpha);
  const PeriodLattice L = period_lattice(m.ratio);
  const double scale = std::abs(1.0 - I * polar_param(m));
  return {I * L.kappa1 * scale, I * L.kappa2 * scale};
}

cplx differential_scalar_closed(cplx alpha) {
  if (!(std::abs(alpha) < 1.0)) throw DomainError("branch point must lie in the open unit disc");
  return kPi / 2.0 * cplx(1.0 / std::abs(1.0 + alpha), 1.0 / std::abs(1.0 - alpha));
}

Genus0Data invert_map(const Genus0Data& d) {
  validate(d);
  return {-d.alpha, d.M};
}

}  // namespace harmtori
