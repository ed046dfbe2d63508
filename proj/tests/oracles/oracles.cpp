#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double kprime(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50);
}

double K(double k) { return std::comp_ellint_1(k); }
double E(double k) { return std::comp_ellint_2(k); }
double Kc(double k) { return std::comp_ellint_1(kprime(k)); }
double Ec(double k) { return std::comp_ellint_2(kprime(k)); }

double F_imag(double x, double k) { return std::ellint_1(kprime(k), std::atan(x)); }

double E_reg_imag(double x, double k) {
  const double kp = kprime(k), phi = std::atan(x), s = std::sin(phi);
  return x * (std::sqrt(1.0 - kp * kp * s * s) - k) + std::ellint_1(kp, phi) - std::ellint_2(kp, phi);
}

double F_imag_quad(double x, double k) {
  // t = tan(theta) keeps the interval finite
  return simpson([k](double th) { return 1.0 / std::sqrt(std::cos(th) * std::cos(th) + k * k * std::sin(th) * std::sin(th)); },
                 0.0, std::atan(x));
}

double E_reg_imag_quad(double x, double k) {
  // Im(E(ix) - k i x) = integral of sqrt(1+k^2 t^2)/sqrt(1+t^2) - k
  return simpson(
      [k](double th) {
        const double t = std::tan(th), sec2 = 1.0 + t * t;
        return (std::sqrt(1.0 + k * k * t * t) / std::sqrt(sec2) - k) * sec2;
      },
      0.0, std::atan(x), 1e-12);
}

double lifted_F(double r, double k) { return std::ellint_1(kprime(k), 0.5 * r); }

double lifted_E(double r, double k) {
  const double kp = kprime(k), phi = 0.5 * r, s = std::sin(phi);
  return std::tan(phi) * (std::sqrt(1.0 - kp * kp * s * s) - k) + std::ellint_1(kp, phi) - std::ellint_2(kp, phi);
}

harmtori::Mat2 matrix_exp_series(const harmtori::Mat2& Z, int terms) {
  harmtori::Mat2 sum = harmtori::Mat2::identity(), term = harmtori::Mat2::identity();
  for (int n = 1; n < terms; ++n) {
    term = term * Z * (1.0 / n);
    sum = sum + term;
  }
  return sum;
}

cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) { return ((a - c) * (b - d)) / ((a - d) * (b - c)); }

double modulus_by_cross_ratio(const harmtori::BranchPair& bp) {
  const cplx target = cross_ratio(bp.alpha, 1.0 / std::conj(bp.alpha), bp.beta, 1.0 / std::conj(bp.beta));
  // Real and monotone in k on (0,1); bisection on the sign change.
  auto g = [&](double k) { return cross_ratio(1.0, -1.0, 1.0 / k, -1.0 / k).real() - target.real(); };
  double lo = 1e-14, hi = 1.0 - 1e-14;
  const double glo = g(lo);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    if ((g(m) > 0) == (glo > 0))
      lo = m;
    else
      hi = m;
  }
  return 0.5 * (lo + hi);
}

std::function<cplx(cplx)> normalizing_map(const harmtori::BranchPair& bp, double k) {
  // Cross ratio with the three normalizing points is preserved:
  // CR(z, a, b, c) = CR(f(z), 1, -1, 1/k), solved for f(z).
  const cplx a = bp.alpha, b = 1.0 / std::conj(bp.alpha), c = bp.beta;
  return [=](cplx z) {
    // CR(w, 1, -1, 1/k) = (w + 1)(1 - 1/k) / ((w - 1/k) 2) = r, linear in w
    const cplx r = cross_ratio(z, a, b, c);
    const double A = 1.0 - 1.0 / k;
    return (-2.0 * r / k - A) / (A - 2.0 * r);
  };
}

double principal_T(const harmtori::BranchPair& bp) {
  const double k = modulus_by_cross_ratio(bp);
  const auto f = normalizing_map(bp, k);
  const cplx z0 = f(0.0);
  const double u = f(1.0).imag(), v = f(-1.0).imag();
  const double p = std::abs(1.0 - bp.alpha) * std::abs(1.0 - bp.beta) /
                   (std::abs(1.0 + bp.alpha) * std::abs(1.0 + bp.beta));
  const double KK = K(k), EE = E(k);
  auto val = [&](double x) {
    const double w = std::sqrt((1.0 + x * x) * (1.0 + k * k * x * x));
    const double d = x - z0.imag();
    const double h = k * x - d * w / (z0.real() * z0.real() + d * d);
    return 4.0 * (EE * F_imag(x, k) - KK * E_reg_imag(x, k)) - 4.0 * KK * h;
  };
  return (p * val(v) - val(u)) / (2.0 * kPi);
}

harmtori::Rational best_rational_bruteforce(double x, std::int64_t max_den) {
  harmtori::Rational best(static_cast<std::int64_t>(std::llround(x)), 1);
  double err = std::abs(x - best.value());
  for (std::int64_t d = 1; d <= max_den; ++d) {
    const auto n = static_cast<std::int64_t>(std::llround(x * static_cast<double>(d)));
    const double e = std::abs(x - static_cast<double>(n) / static_cast<double>(d));
    if (e < err - 1e-300) {
      err = e;
      best = harmtori::Rational(n, d);
    }
  }
  return best;
}

std::pair<cplx, cplx> quadratic_roots(cplx a, cplx b, cplx c) {
  const cplx disc = std::sqrt(b * b - 4.0 * a * c);
  const cplx q = -0.5 * (b + (std::real(std::conj(b) * disc) >= 0 ? disc : -disc));
  return {q / a, c / q};
}

double bisect_decreasing(const std::function<double(double)>& g, double lo, double hi, int iters) {
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (lo + hi);
    if (g(m) > 0)
      lo = m;
    else
      hi = m;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
