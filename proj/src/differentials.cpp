#include "harmtori/differentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "harmtori/elliptic_core.hpp"
#include "harmtori/quadrature.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

cplx nearest_sign(cplx w, cplx ref) { return std::abs(w - ref) <= std::abs(w + ref) ? w : -w; }

// Distance from p to the segment [a, b].
double seg_dist(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

std::array<cplx, 4> branch_points(double k) { return {1.0, -1.0, 1.0 / k, -1.0 / k}; }

std::array<cplx, 2> poles(const JacobiFrame& fr) { return {fr.z0, -std::conj(fr.z0)}; }

double min_dist_to_singularities(cplx z, const DifferentialContext& ctx) {
  double d = std::numeric_limits<double>::infinity();
  for (cplx b : branch_points(ctx.frame.k)) d = std::min(d, std::abs(z - b));
  for (cplx p : poles(ctx.frame)) d = std::min(d, std::abs(z - p));
  return d;
}

// Clearance of a sampled path from the singular points.
double path_clearance(const PathSpec& path, const DifferentialContext& ctx, int samples = 64) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& pc : path.pieces) {
    if (pc.kind == PathPiece::Line) {
      for (cplx b : branch_points(ctx.frame.k)) best = std::min(best, seg_dist(b, pc.from, pc.to));
      for (cplx p : poles(ctx.frame)) best = std::min(best, seg_dist(p, pc.from, pc.to));
    } else {
      for (int i = 0; i <= samples; ++i)
        best = std::min(best, min_dist_to_singularities(pc.point(double(i) / samples), ctx));
    }
  }
  return best;
}

// R(z) = (z - i Im z0) / ((z - z0)(z + conj z0)) and its derivative.
std::pair<cplx, cplx> pole_factor(cplx z, cplx z0) {
  const cplx y0i(0.0, z0.imag());
  const cplx q = (z - z0) * (z + std::conj(z0));
  const cplx num = z - y0i;
  const cplx dq = 2.0 * z - z0 + std::conj(z0);
  return {num / q, (q - num * dq) / (q * q)};
}

// h(angle) = k u - (u - y0) w(iu) / (x0^2 + (u - y0)^2), u = tan(angle/2),
// finite through u = infinity.
double h_term(double k, double angle, cplx z0) {
  const double a = std::sin(0.5 * angle), b = std::cos(0.5 * angle);
  const double x0 = z0.real(), y0 = z0.imag();
  if (std::abs(b) >= std::abs(a)) {
    const double u = a / b;
    const double w = w_imag(u, k);
    const double du = u - y0;
    return k * u - du * w / (x0 * x0 + du * du);
  }
  const double s = b / a;
  const double m = 1.0 - y0 * s;
  const double Ws = std::sqrt((1.0 + s * s) * (s * s + k * k));
  const double R = m * m + x0 * x0 * s * s;
  if (m > 0.0) {
    const double t = (-2.0 * k * k * y0 + s * (k * k * y0 * y0 - 1.0 - k * k - s * s)) / (k * m + Ws);
    return (m * t + k * x0 * x0 * s) / R;
  }
  return (m * (k * m - Ws) + k * x0 * x0 * s * s) / (s * R);
}

}  // namespace

std::string to_string(Differential d) {
  switch (d) {
    case Differential::Omega: return "omega";
    case Differential::Second: return "e";
    case Differential::Epsilon: return "epsilon";
    case Differential::ThetaE: return "ThetaE";
    case Differential::ThetaP: return "ThetaP";
  }
  return "?";
}

DifferentialContext make_context(const JacobiFrame& fr) {
  DifferentialContext ctx{fr, complete_K(fr.k), complete_E(fr.k), sheet_constant(fr)};
  return ctx;
}

cplx w_derivative(cplx z, cplx w, double k) { return -z * (1.0 + k * k - 2.0 * k * k * z * z) / w; }

cplx differential_coefficient(Differential d, const DifferentialContext& ctx, cplx z, cplx w) {
  const double k = ctx.frame.k;
  auto omega = [&] { return 1.0 / w; };
  auto second = [&] { return (1.0 - k * k * z * z) / w; };
  auto dG = [&] {
    const auto [R, dR] = pole_factor(z, ctx.frame.z0);
    return w * dR + R * w_derivative(z, w, k);
  };
  switch (d) {
    case Differential::Omega: return omega();
    case Differential::Second: return second();
    case Differential::Epsilon: return second() + dG();
    case Differential::ThetaP: return 2.0 * ctx.E * omega() - 2.0 * ctx.K * second() - 2.0 * ctx.K * dG();
    case Differential::ThetaE: {
      // i d(eta/zeta) with eta = w (zeta - nu)^2 / C
      const cplx zeta = ctx.frame.to_zeta(z);
      const cplx dzeta = ctx.frame.finv.derivative(z);
      const cplx nu = ctx.frame.nu;
      const cplx g = (zeta - nu) * (zeta - nu) / zeta;
      const cplx dg = (zeta - nu) * (zeta + nu) / (zeta * zeta);
      return I / ctx.sheet_c * (w_derivative(z, w, k) * g + w * dg * dzeta);
    }
  }
  return 0.0;
}

cplx PathPiece::point(double t) const {
  if (kind == Line) return from + t * (to - from);
  const double th = theta0 + t * (theta1 - theta0);
  return center + cplx(rx * std::cos(th), ry * std::sin(th));
}

cplx PathPiece::tangent(double t) const {
  if (kind == Line) return to - from;
  const double th = theta0 + t * (theta1 - theta0);
  return (theta1 - theta0) * cplx(-rx * std::sin(th), ry * std::cos(th));
}

PathPiece& PathSpec::add_line(cplx a, cplx b) {
  PathPiece p;
  p.kind = PathPiece::Line;
  p.from = a;
  p.to = b;
  pieces.push_back(p);
  return pieces.back();
}

PathPiece& PathSpec::add_arc(cplx center, double rx, double ry, double theta0, double theta1) {
  PathPiece p;
  p.kind = PathPiece::Arc;
  p.center = center;
  p.rx = rx;
  p.ry = ry;
  p.theta0 = theta0;
  p.theta1 = theta1;
  pieces.push_back(p);
  return pieces.back();
}

cplx PathSpec::start() const { return pieces.front().point(0.0); }
cplx PathSpec::end() const { return pieces.back().point(1.0); }

ContourResult contour_integral(const Integrand& coef, const DifferentialContext& ctx,
                               const PathSpec& path, const ContourOptions& opt) {
  const double k = ctx.frame.k;
  cplx total = 0.0;
  cplx w_cur = path.w_start;
  QuadratureOptions qo;
  qo.abs_tol = opt.abs_tol;
  for (const auto& pc : path.pieces) {
    double t = 0.0;
    while (t < 1.0) {
      const cplx z = pc.point(t);
      const double d = min_dist_to_singularities(z, ctx);
      if (d < opt.clearance) throw DomainError("contour passes too close to a singular point");
      const double speed = std::abs(pc.tangent(t));
      const double dt = speed > 0.0 ? opt.step_fraction * d / speed : 1.0;
      const double t1 = std::min(1.0, t + dt);
      const cplx ref = w_cur;
      auto f = [&](double s) {
        const cplx zz = pc.point(s);
        const cplx ww = nearest_sign(w_principal(zz, k), ref);
        return coef(zz, ww) * pc.tangent(s);
      };
      total += integrate(f, t, t1, qo);
      w_cur = nearest_sign(w_principal(pc.point(t1), k), ref);
      t = t1;
    }
  }
  return {total, w_cur};
}

ContourResult contour_integral(Differential d, const DifferentialContext& ctx, const PathSpec& path,
                               const ContourOptions& opt) {
  return contour_integral([&](cplx z, cplx w) { return differential_coefficient(d, ctx, z, w); }, ctx,
                          path, opt);
}

ContourResult contour_integral(const DifferentialCombo& combo, const DifferentialContext& ctx,
                               const PathSpec& path, const ContourOptions& opt) {
  return contour_integral(
      [&](cplx z, cplx w) {
        cplx s = 0.0;
        for (const auto& [d, c] : combo.terms) s += c * differential_coefficient(d, ctx, z, w);
        return s;
      },
      ctx, path, opt);
}

PathSpec loop_A(const DifferentialContext& ctx) {
  const double k = ctx.frame.k;
  PathSpec best;
  double best_clear = -1.0;
  for (double s : {0.35, 0.5, 0.65}) {
    const double rx = 1.0 + s * (1.0 / k - 1.0);
    for (double ry : {0.25, 0.5, 0.8, 1.2, 2.0, 3.5}) {
      PathSpec p;
      p.add_arc(0.0, rx, ry, kPi / 2.0, kPi / 2.0 - 2.0 * kPi);
      const double c = path_clearance(p, ctx, 256);
      if (c > best_clear) {
        best_clear = c;
        best = p;
      }
    }
  }
  best.w_start = w_principal(best.start(), k);
  return best;
}

PathSpec loop_B(const DifferentialContext& ctx) {
  const double k = ctx.frame.k;
  const double half = 0.5 * (1.0 / k - 1.0);
  const cplx center = 1.0 + half;
  PathSpec best;
  double best_clear = -1.0;
  for (double t : {0.4, 0.7, 1.0, 1.3}) {
    for (double ry : {0.25, 0.5, 0.8, 1.2, 2.0, 3.5}) {
      PathSpec p;
      p.add_arc(center, half + t, ry, kPi / 2.0, kPi / 2.0 - 2.0 * kPi);
      const double c = path_clearance(p, ctx, 256);
      if (c > best_clear) {
        best_clear = c;
        best = p;
      }
    }
  }
  best.w_start = w_principal(best.start(), k);
  return best;
}

namespace {

// f(+-1) as a finite imaginary value i*u; rejects nu near +-1.
double gamma_endpoint(const JacobiFrame& fr, int sign) {
  const cplx zeta = sign > 0 ? 1.0 : -1.0;
  if (std::abs(fr.nu - zeta) < 1e-9)
    throw DomainError("principal path undefined: nu coincides with an endpoint");
  const HPoint h = fr.f.apply({zeta, 1.0});
  return (-I * h.x * std::conj(h.y)).real() / std::norm(h.y);
}

}  // namespace

PathSpec principal_gamma_path(const DifferentialContext& ctx, int sign) {
  const double k = ctx.frame.k;
  const double u = gamma_endpoint(ctx.frame, sign);
  const cplx start(0.0, u);
  const double room = std::min(1.0 / k - 1.0, 1.0);
  const double su = std::clamp(u, -2.0, 2.0);
  const std::vector<cplx> bends = {start,          0.0,          cplx(0.0, 0.5 * su), cplx(0.5, 0.5 * su),
                                   cplx(-0.5, 0.5 * su), cplx(0.5, 0.0), cplx(-0.5, 0.0), cplx(0.0, -0.5 * su),
                                   cplx(0.5, -0.5 * su), cplx(-0.5, 0.3), cplx(-0.5, -0.3), cplx(0.3, 0.6),
                                   cplx(0.3, -0.6)};
  PathSpec best;
  double best_clear = -1.0;
  for (double frac : {0.3, 0.5, 0.7}) {
    const double delta = frac * room;
    for (cplx c : bends) {
      PathSpec p;
      if (c != start) p.add_line(start, c);
      p.add_line(c, 1.0 - delta);
      p.add_arc(1.0, delta, delta, kPi, -kPi);
      p.add_line(1.0 - delta, c);
      if (c != start) p.add_line(c, start);
      // the arc's own distance to z = 1 is delta by construction; ignore it here
      double clear = std::numeric_limits<double>::infinity();
      for (const auto& pc : p.pieces) {
        if (pc.kind == PathPiece::Line) {
          for (cplx b : {cplx(-1.0), cplx(1.0 / k), cplx(-1.0 / k)}) clear = std::min(clear, seg_dist(b, pc.from, pc.to));
          for (cplx q : poles(ctx.frame)) clear = std::min(clear, seg_dist(q, pc.from, pc.to));
        } else {
          for (int i = 0; i <= 64; ++i) {
            const cplx z = pc.point(i / 64.0);
            for (cplx q : poles(ctx.frame)) clear = std::min(clear, std::abs(z - q));
            clear = std::min(clear, std::abs(z - 1.0 / k));
          }
        }
      }
      clear = std::min(clear, delta);
      if (clear > best_clear) {
        best_clear = clear;
        best = p;
      }
    }
  }
  best.w_start = -w_imag(u, k);
  return best;
}

cplx period(Differential d, const DifferentialContext& ctx, char loop) {
  const PathSpec p = (loop == 'A' || loop == 'a') ? loop_A(ctx) : loop_B(ctx);
  return contour_integral(d, ctx, p).value;
}

cplx theta_E_gamma(int sign, const BranchPair& bp) {
  if (sign > 0) return 2.0 * I * eta_plus(1.0, bp);
  return -2.0 * I * eta_plus(-1.0, bp);
}

cplx theta_P_gamma_closed(int sign, const JacobiFrame& fr) {
  const double k = fr.k;
  const double u = gamma_endpoint(fr, sign);
  const double K = complete_K(k), E = complete_E(k);
  // 4E F(iu) - 4K E(iu) - 4K G(iu), all purely imaginary on the axis
  const double angle = 2.0 * std::atan(u);
  const double val = 4.0 * E * incomplete_F_imag(u, k) - 4.0 * K * incomplete_E_reg_imag(u, k) -
                     4.0 * K * h_term(k, angle, fr.z0);
  return {0.0, val};
}

cplx theta_P_gamma_lifted(int sign, const ModuliPoint& mp) {
  const double k = mp.k;
  const double angle = sign > 0 ? mp.u_t : mp.v_t;
  const double K = complete_K(k), E = complete_E(k);
  const cplx z0 = z0_of(mp);
  const double val = 4.0 * (E * lifted_F(angle, k) - K * lifted_E(angle, k)) - 4.0 * K * h_term(k, angle, z0);
  return {0.0, val};
}

cplx principal_part_ratio(const DifferentialContext& ctx, double shift) {
  const cplx z0 = ctx.frame.z0;
  double r = 2.0 * z0.real();
  for (cplx b : branch_points(ctx.frame.k)) r = std::min(r, std::abs(z0 - b));
  r *= 0.3;
  PathSpec circle;
  circle.add_arc(z0, r, r, 0.0, 2.0 * kPi);
  circle.w_start = w_principal(circle.start(), ctx.frame.k);
  ContourOptions opt;
  opt.clearance = 0.5 * r;
  opt.abs_tol = 1e-14;
  auto weighted = [&](Differential d) {
    return [&, d](cplx z, cplx w) { return (z - z0) * differential_coefficient(d, ctx, z, w); };
  };
  const cplx cE = contour_integral(weighted(Differential::ThetaE), ctx, circle, opt).value;
  const cplx cP = contour_integral(weighted(Differential::ThetaP), ctx, circle, opt).value;
  return (cP + shift * cE) / cE;
}

cplx principal_part_ratio_closed(const DifferentialContext& ctx) {
  const cplx dz = ctx.frame.finv.derivative(ctx.frame.z0);
  const cplx nu = ctx.frame.nu;
  return I * ctx.K * ctx.sheet_c * dz / (nu * nu);
}

double theta_P_characterization_check(const JacobiFrame& fr, double shift) {
  const cplx r = principal_part_ratio(make_context(fr), shift);
  return std::abs(r.real()) / std::abs(r);
}

ClosingData construct_psi(const Rational& S, const Rational& T, const JacobiFrame& fr, double match_tol) {
  if (S.num <= 0) throw DomainError("S must be a positive rational");
  const double S_num = S_value(fr.bp);
  if (std::abs(S_num - S.value()) > match_tol)
    throw DomainError("curve S = " + std::to_string(S_num) + " does not match " + S.str());
  const cplx Ip = theta_P_gamma_closed(+1, fr);
  const cplx Im = theta_P_gamma_closed(-1, fr);
  const double T_num = ((S_num * Im - Ip) / (2.0 * kPi * I)).real();
  if (std::abs(T_num - T.value()) > match_tol)
    throw DomainError("curve T = " + std::to_string(T_num) + " does not match " + T.str());

  ClosingData cd;
  cd.n = S.num;
  cd.m = S.den;
  cd.np = T.num;
  cd.mp = T.den;
  const std::int64_t g = gcd64(cd.mp, cd.m * cd.np);
  cd.l = cd.mp / g;
  const std::int64_t N = cd.m * cd.np / g;
  cd.y = congruence_min_abs(cd.m, cd.n);

  const double eta1 = eta_plus(1.0, fr.bp).real();
  cd.a = kPi * static_cast<double>(cd.n) / eta1;
  const cplx b = (2.0 * kPi * I * static_cast<double>(N * cd.y) - static_cast<double>(cd.l) * Ip) / (2.0 * I * eta1);
  cd.b = b.real();

  const cplx tpi = 2.0 * kPi * I;
  cd.closing[0] = cd.a * theta_E_gamma(+1, fr.bp) / tpi;
  cd.closing[1] = cd.a * theta_E_gamma(-1, fr.bp) / tpi;
  cd.closing[2] = (cd.b * theta_E_gamma(+1, fr.bp) + static_cast<double>(cd.l) * Ip) / tpi;
  cd.closing[3] = (cd.b * theta_E_gamma(-1, fr.bp) + static_cast<double>(cd.l) * Im) / tpi;
  double res = 0.0;
  for (const cplx& c : cd.closing) res = std::max(res, std::abs(c - std::round(c.real())));
  cd.integrality_residual = res;
  cd.gamma_plus = static_cast<std::int64_t>(std::llround(cd.closing[2].real()));
  cd.gamma_minus = static_cast<std::int64_t>(std::llround(cd.closing[3].real()));
  return cd;
}

std::array<cplx, 2> closing_integrals_quadrature(const ClosingData& cd, const JacobiFrame& fr, double xE,
                                                 double xP) {
  const DifferentialContext ctx = make_context(fr);
  DifferentialCombo combo;
  combo.terms.push_back({Differential::ThetaE, xE * cd.a + xP * cd.b});
  combo.terms.push_back({Differential::ThetaP, xP * static_cast<double>(cd.l)});
  std::array<cplx, 2> out{};
  for (int i = 0; i < 2; ++i) {
    const PathSpec p = principal_gamma_path(ctx, i == 0 ? +1 : -1);
    out[i] = contour_integral(combo, ctx, p).value / (2.0 * kPi * I);
  }
  return out;
}

}  // namespace harmtori
