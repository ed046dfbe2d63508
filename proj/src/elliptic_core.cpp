#include "harmtori/elliptic_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "harmtori/quadrature.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-14;

struct AgmResult {
  double K, E;
};

// K = pi / (2 agm(1, k')), E = K (1 - sum 2^(n-1) c_n^2) with c_0 = k.
AgmResult agm_integrals(double k) {
  double a = 1.0;
  double b = complementary_modulus(k);
  double c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    pow2 *= 2.0;
    sum += pow2 * c * c;
    a = an;
    b = bn;
    // quadratic convergence: the next c is of order c^2, and further doublings
    // would only amplify rounding noise
    if (std::abs(c) <= 1e-14 * a) break;
  }
  const double K = kPi / (2.0 * a);
  return {K, K * (1.0 - sum)};
}

QuadratureOptions quad_opts() {
  QuadratureOptions o;
  o.abs_tol = kQuadTol;
  return o;
}

// Integrals over [0, x] for |x| <= 1 use the t form; beyond that, the tail
// [1, x] is rewritten with t = 1/s so the integrand stays bounded.
double F_head(double x, double k) {
  return integrate([k](double t) { return 1.0 / std::sqrt((1.0 + t * t) * (1.0 + k * k * t * t)); },
                   0.0, x, quad_opts());
}

double F_tail(double s0, double k) {
  // integral over s in [s0, 1] of ds / sqrt((1+s^2)(s^2+k^2))
  return integrate([k](double s) { return 1.0 / std::sqrt((1.0 + s * s) * (s * s + k * k)); }, s0,
                   1.0, quad_opts());
}

double E_head(double x, double k) {
  const double kc2 = (1.0 - k) * (1.0 + k);
  return integrate(
      [k, kc2](double t) {
        const double r = std::sqrt(1.0 + t * t);
        return kc2 / (r * (std::sqrt(1.0 + k * k * t * t) + k * r));
      },
      0.0, x, quad_opts());
}

double E_tail(double s0, double k) {
  const double kc2 = (1.0 - k) * (1.0 + k);
  return integrate(
      [k, kc2](double s) {
        const double r = std::sqrt(1.0 + s * s);
        return kc2 / (r * (std::sqrt(s * s + k * k) + k * r));
      },
      s0, 1.0, quad_opts());
}

double lifted_F_core(double r, double k) {
  return integrate(
      [k](double s) {
        const double c = std::cos(0.5 * s);
        const double sn = std::sin(0.5 * s);
        return 0.5 / std::sqrt(c * c + k * k * sn * sn);
      },
      0.0, r, quad_opts());
}

double lifted_E_core(double r, double k) {
  const double kc2 = (1.0 - k) * (1.0 + k);
  return integrate(
      [k, kc2](double s) {
        const double c = std::cos(0.5 * s);
        const double sn = std::sin(0.5 * s);
        return 0.5 * kc2 / (std::sqrt(c * c + k * k * sn * sn) + k);
      },
      0.0, r, quad_opts());
}

}  // namespace

void require_modulus(double k) {
  if (!(k > 0.0 && k < 1.0))
    throw DomainError("elliptic modulus must lie in (0,1), got " + std::to_string(k));
}

double complementary_modulus(double k) {
  require_modulus(k);
  return std::sqrt((1.0 - k) * (1.0 + k));
}

double complete_K(double k) {
  require_modulus(k);
  return agm_integrals(k).K;
}

double complete_E(double k) {
  require_modulus(k);
  return agm_integrals(k).E;
}

CompleteIntegrals complete_integrals(double k) {
  require_modulus(k);
  const AgmResult m = agm_integrals(k);
  const AgmResult c = agm_integrals(complementary_modulus(k));
  return {m.K, m.E, c.K, c.E};
}

double legendre_defect(double k) {
  const CompleteIntegrals ci = complete_integrals(k);
  return ci.Kc * ci.E + ci.K * ci.Ec - ci.K * ci.Kc - kPi / 2.0;
}

double w_imag(double u, double k) { return std::sqrt((1.0 + u * u) * (1.0 + k * k * u * u)); }

double incomplete_F_imag(double x, double k) {
  require_modulus(k);
  if (!std::isfinite(x)) throw DomainError("incomplete_F_imag: argument must be finite");
  const double ax = std::abs(x);
  double v = ax <= 1.0 ? F_head(ax, k) : F_head(1.0, k) + F_tail(1.0 / ax, k);
  return x < 0 ? -v : v;
}

double incomplete_E_reg_imag(double x, double k) {
  require_modulus(k);
  if (!std::isfinite(x)) throw DomainError("incomplete_E_reg_imag: argument must be finite");
  const double ax = std::abs(x);
  double v = ax <= 1.0 ? E_head(ax, k) : E_head(1.0, k) + E_tail(1.0 / ax, k);
  return x < 0 ? -v : v;
}

double lifted_F(double angle, double k) {
  require_modulus(k);
  const double W = std::nearbyint(angle / (2.0 * kPi));
  const double r = angle - 2.0 * kPi * W;
  const double period = W == 0.0 ? 0.0 : 2.0 * W * complete_K(complementary_modulus(k));
  return period + lifted_F_core(r, k);
}

double lifted_E(double angle, double k) {
  require_modulus(k);
  const double W = std::nearbyint(angle / (2.0 * kPi));
  const double r = angle - 2.0 * kPi * W;
  double period = 0.0;
  if (W != 0.0) {
    const double kc = complementary_modulus(k);
    period = 2.0 * W * (complete_K(kc) - complete_E(kc));
  }
  return period + lifted_E_core(r, k);
}

Winding wind(double angle, double eps) {
  const double W = std::nearbyint(angle / (2.0 * kPi));
  const double r = angle - 2.0 * kPi * W;
  return {static_cast<long>(W), kPi - std::abs(r) < eps};
}

ChartValue chart_value(double angle) {
  const double s = std::sin(0.5 * angle);
  const double c = std::cos(0.5 * angle);
  if (std::abs(c) >= std::abs(s)) return {s / c, false};
  return {c / s, true};
}

}  // namespace harmtori
