#include "harmtori/moduli_explorer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "harmtori/differentials.hpp"
#include "harmtori/elliptic_core.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;

struct HalfAngles {
  double a, b;  // sin, cos of angle / 2
  double W;     // sqrt(b^2 + k^2 a^2)
};

HalfAngles half(double angle, double k) {
  const double a = std::sin(0.5 * angle), b = std::cos(0.5 * angle);
  return {a, b, std::sqrt(b * b + k * k * a * a)};
}

// Rational part of 2 pi T~ divided by -4K.
double bracket(double p, double k, const HalfAngles& x, const HalfAngles& y) {
  const double a = x.a, b = x.b, c = y.a, d = y.b;
  const double tv = b * d * (1.0 + k * k * c * c) / (y.W + k * c * c) + k * a * c;
  const double tu = b * d * (1.0 + k * k * a * a) / (x.W + k * a * a) + k * a * c;
  return (p * tv + tu) / (a * d - b * c);
}

// E F~ - K E~ at one lifted angle.
double phi(double angle, double k, double K, double E) {
  return E * lifted_F(angle, k) - K * lifted_E(angle, k);
}

double t_tilde_from(double p, double k, double K, double phi_u, double phi_v, const HalfAngles& x,
                    const HalfAngles& y) {
  return (4.0 * p * phi_v - 4.0 * phi_u - 4.0 * K * bracket(p, k, x, y)) / (2.0 * kPi);
}

// Numerator shared by both angle derivatives.
double deriv_core(double k, double K, const HalfAngles& x, const HalfAngles& y) {
  const double a = x.a, b = x.b, c = y.a, d = y.b;
  return K * (b * b * d * d + a * a * d * d + b * b * c * c + k * k * a * a * c * c +
              (k * k - 1.0) * a * b * c * d);
}

double du_from(double p, double k, double K, double E, const HalfAngles& x, const HalfAngles& y) {
  const double det = x.a * y.b - x.b * y.a;
  const double num = -det * det * E + p * K * x.W * y.W + deriv_core(k, K, x, y);
  return num / (kPi * x.W * det * det);
}

double dv_from(double p, double k, double K, double E, const HalfAngles& x, const HalfAngles& y) {
  const double det = x.a * y.b - x.b * y.a;
  const double num = -p * det * det * E + K * x.W * y.W + p * deriv_core(k, K, x, y);
  return -num / (kPi * y.W * det * det);
}

long winding_of(double angle) { return wind(angle, 0.0).index; }

}  // namespace

double T_tilde(const ModuliPoint& mp) {
  validate(mp);
  const double k = mp.k;
  const double K = complete_K(k), E = complete_E(k);
  return t_tilde_from(mp.p, k, K, phi(mp.u_t, k, K, E), phi(mp.v_t, k, K, E), half(mp.u_t, k),
                      half(mp.v_t, k));
}

double T0_value(const ChartCoords& c) {
  if (!(c.u != c.v)) throw DomainError("finite chart needs u != v");
  ModuliPoint mp{c.p, c.k, 2.0 * std::atan(c.u), 2.0 * std::atan(c.v)};
  if (mp.v_t < mp.u_t) mp.v_t += 2.0 * kPi;
  return T_tilde(mp) - 2.0 * mp.p * static_cast<double>(winding_of(mp.v_t));
}

double dT_tilde_du(const ModuliPoint& mp) {
  validate(mp);
  const double K = complete_K(mp.k), E = complete_E(mp.k);
  return du_from(mp.p, mp.k, K, E, half(mp.u_t, mp.k), half(mp.v_t, mp.k));
}

double dT_tilde_dv(const ModuliPoint& mp) {
  validate(mp);
  const double K = complete_K(mp.k), E = complete_E(mp.k);
  return dv_from(mp.p, mp.k, K, E, half(mp.u_t, mp.k), half(mp.v_t, mp.k));
}

double dT0_du(const ChartCoords& c) {
  ModuliPoint mp{c.p, c.k, 2.0 * std::atan(c.u), 2.0 * std::atan(c.v)};
  if (mp.v_t < mp.u_t) mp.v_t += 2.0 * kPi;
  return dT_tilde_du(mp) * 2.0 / (1.0 + c.u * c.u);
}

double dT_tilde_du_at_infinity(double p, double k, double v) {
  require_modulus(k);
  const double K = complete_K(k), E = complete_E(k);
  return (-E + p * k * K * w_imag(v, k) + K * (1.0 + k * k * v * v)) / (kPi * k);
}

ModuliPoint solve_level(double p, double q, double k, double fixed_angle, const SolveOptions& opt) {
  if (!(p > 0.0)) throw DomainError("p must be positive");
  require_modulus(k);
  if (!std::isfinite(q) || !std::isfinite(fixed_angle)) throw DomainError("level and angle must be finite");
  const bool for_v = solves_for_v(p);
  const double K = complete_K(k), E = complete_E(k);
  const HalfAngles hf = half(fixed_angle, k);
  const double phi_fixed = phi(fixed_angle, k, K, E);

  // g is decreasing in the free angle when solving for v, increasing otherwise;
  // orient it so that it always decreases.
  auto g = [&](double x) {
    const HalfAngles hx = half(x, k);
    const double phx = phi(x, k, K, E);
    const double t = for_v ? t_tilde_from(p, k, K, phi_fixed, phx, hf, hx)
                           : t_tilde_from(p, k, K, phx, phi_fixed, hx, hf);
    return for_v ? t - q : q - t;
  };
  auto dg = [&](double x) {
    const HalfAngles hx = half(x, k);
    return for_v ? dv_from(p, k, K, E, hf, hx) : -du_from(p, k, K, E, hx, hf);
  };

  const double band_lo = for_v ? fixed_angle : fixed_angle - 2.0 * kPi;
  const double band_hi = band_lo + 2.0 * kPi;
  double shrink = opt.band_shrink;
  double lo = band_lo + shrink, hi = band_hi - shrink;
  double glo = g(lo), ghi = g(hi);
  while (!(glo > 0.0 && ghi < 0.0) && shrink > 1e-14) {
    shrink *= 1e-2;
    lo = band_lo + shrink;
    hi = band_hi - shrink;
    glo = g(lo);
    ghi = g(hi);
  }
  if (!(glo > 0.0 && ghi < 0.0)) throw SolveFailure("level value not bracketed in the band", lo, hi);

  double x = 0.5 * (lo + hi);
  double gx = g(x);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (std::abs(gx) < opt.residual) {
      ModuliPoint out{p, k, for_v ? fixed_angle : x, for_v ? x : fixed_angle};
      return out;
    }
    if (gx > 0.0)
      lo = x;
    else
      hi = x;
    const double d = dg(x);
    double next = x - gx / d;
    if (!(d < 0.0) || !(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo < 4e-16 * std::max(1.0, std::abs(x))) {
      gx = g(next);
      if (std::abs(gx) < 100.0 * opt.residual) {
        ModuliPoint out{p, k, for_v ? fixed_angle : next, for_v ? next : fixed_angle};
        return out;
      }
      throw SolveFailure("level solve stalled at residual " + std::to_string(gx), lo, hi);
    }
    x = next;
    gx = g(x);
  }
  throw SolveFailure("level solve did not converge", lo, hi);
}

double fixed_angle_of(const ModuliPoint& mp) { return solves_for_v(mp.p) ? mp.u_t : mp.v_t; }

ComponentId classify_component(const Rational& p, const Rational& q) {
  if (p.num <= 0) throw DomainError("p must be positive");
  if (p == Rational(1)) return Annulus{q};
  return Helicoid{p, mod(q, p - Rational(1))};
}

bool same_component(const ComponentId& a, const ComponentId& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<Annulus>(&a)) return x->q == std::get<Annulus>(b).q;
  const auto& x = std::get<Helicoid>(a);
  const auto& y = std::get<Helicoid>(b);
  return x.p == y.p && x.q_class == y.q_class;
}

std::string describe(const ComponentId& c) {
  std::ostringstream os;
  if (const auto* a = std::get_if<Annulus>(&c))
    os << "annulus p=1 q=" << a->q.str();
  else {
    const auto& h = std::get<Helicoid>(c);
    os << "helicoid p=" << h.p.str() << " q=" << h.q_class.str() << " mod " << abs(h.p - Rational(1)).str();
  }
  return os.str();
}

Rational principal_T(const Rational& p, const Rational& q, const ModuliPoint& mp) {
  const long j = -winding_of(mp.u_t);
  const long wv = winding_of(mp.v_t + 2.0 * kPi * static_cast<double>(j));
  return q + Rational(2 * j) * (p - Rational(1)) - Rational(2 * wv) * p;
}

double principal_T_value(const BranchPair& bp) {
  const ModuliPoint mp = forward_coords(bp);
  return T_tilde(mp) - 2.0 * (mp.p * static_cast<double>(winding_of(mp.v_t)) -
                              static_cast<double>(winding_of(mp.u_t)));
}

SpectralTestResult spectral_test(const BranchPair& bp, std::int64_t max_den, double tol) {
  SpectralTestResult r;
  r.S = S_value(bp);
  r.T = principal_T_value(bp);
  const auto p = best_rational(r.S, max_den, 1.0);
  const auto q = best_rational(r.T, max_den, 1.0);
  r.p_residual = p ? std::abs(r.S - p->value()) : INFINITY;
  r.q_residual = q ? std::abs(r.T - q->value()) : INFINITY;
  if (p && q && r.p_residual < tol && r.q_residual < tol)
    r.candidate = SpectralCandidate{*p, mod(*q, Rational(1, p->den)), *q, r.p_residual, r.q_residual};
  return r;
}

ModuliSummary moduli_summary(const Rational& p, const Rational& q) {
  ModuliSummary s;
  s.component = classify_component(p, q);
  const std::int64_t g = gcd64(q.den, p.den * q.num);
  s.l = q.den / (g == 0 ? 1 : g);
  if (std::holds_alternative<Annulus>(s.component)) {
    s.monodromy = -q.den;
    s.fibre = "B_q-orbits of Mat2*Z x S^1, B_q = lower unipotent matrices with subdiagonal in " +
              std::to_string(q.den) + "Z";
  } else {
    s.fibre = "Mat2*Z x S^1";
  }
  return s;
}

std::vector<ComponentId> enumerate_components(const Rational& p, std::int64_t max_den, std::int64_t q_range) {
  if (p.num <= 0) throw DomainError("p must be positive");
  if (max_den < 1) throw DomainError("max_den must be at least 1");
  std::vector<ComponentId> out;
  if (p == Rational(1)) {
    if (q_range < 0) throw DomainError("q range must be non-negative");
    std::vector<Rational> qs;
    for (std::int64_t den = 1; den <= max_den; ++den)
      for (std::int64_t num = -q_range * den; num <= q_range * den; ++num)
        if (gcd64(num, den) == 1 || (num == 0 && den == 1)) qs.emplace_back(num, den);
    std::sort(qs.begin(), qs.end());
    for (const Rational& q : qs) out.push_back(Annulus{q});
    return out;
  }
  const Rational M = abs(p - Rational(1));
  std::vector<Rational> rs;
  for (std::int64_t den = 1; den <= max_den; ++den)
    for (std::int64_t num = 0;; ++num) {
      const Rational r(num, den);
      if (!(r < M)) break;
      if (r.den == den) rs.push_back(r);
    }
  std::sort(rs.begin(), rs.end());
  for (const Rational& r : rs) out.push_back(Helicoid{p, r});
  return out;
}

double unwrapped_gamma_increment(const std::vector<ModuliPoint>& loop) {
  double total = 0.0;
  bool have_prev = false;
  double prev = 0.0;
  for (const ModuliPoint& mp : loop) {
    double cur;
    try {
      cur = theta_P_gamma_closed(+1, build_frame(inverse_coords(mp))).imag();
    } catch (const DomainError&) {
      continue;  // gamma endpoint on a branch point; neighbours carry the path
    }
    if (have_prev) {
      const double d = cur - prev;
      total += d - 2.0 * kPi * std::nearbyint(d / (2.0 * kPi));
    }
    prev = cur;
    have_prev = true;
  }
  return total / (2.0 * kPi);
}

MonodromyResult monodromy_track(const Rational& q, int loop_samples, double k, double start_angle) {
  if (loop_samples < 8) throw DomainError("monodromy needs at least 8 samples");
  const double X0 = rescale_angle(start_angle, k);
  std::vector<ModuliPoint> loop;
  loop.reserve(static_cast<std::size_t>(loop_samples) + 1);
  for (int j = 0; j <= loop_samples; ++j) {
    const double X = X0 + kPi * static_cast<double>(j) / loop_samples;
    loop.push_back(solve_level(1.0, q.value(), k, unrescale_angle(X, k)));
  }
  const double l = static_cast<double>(q.den);
  MonodromyResult r;
  r.samples = loop_samples;
  r.increment_over_2pi = unwrapped_gamma_increment(loop);
  r.shift_real = -l * r.increment_over_2pi;
  r.shift = std::llround(r.shift_real);
  const double lifted =
      (theta_P_gamma_lifted(+1, loop.back()) - theta_P_gamma_lifted(+1, loop.front())).imag() / (2.0 * kPi);
  r.lifted_shift = -l * lifted;
  const BranchPair a = inverse_coords(loop.front());
  const BranchPair b = inverse_coords(loop.back());
  r.closure_error = std::min(std::abs(a.alpha - b.alpha) + std::abs(a.beta - b.beta),
                             std::abs(a.alpha - b.beta) + std::abs(a.beta - b.alpha));
  return r;
}

}  // namespace harmtori
