#include "harmtori/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "harmtori/differentials.hpp"
#include "harmtori/elliptic_core.hpp"
#include "harmtori/moduli_explorer.hpp"
#include "harmtori/report.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

// Evaluates residual(sample) for every sample, in parallel when requested, and
// reduces in index order so the outcome does not depend on the thread count.
template <class Sample>
InvariantResult check(const std::string& suite, const std::string& name, double tol,
                      const std::vector<Sample>& samples, const std::function<double(const Sample&)>& residual,
                      const std::function<std::string(const Sample&)>& describe, bool parallel) {
  const int n = static_cast<int>(samples.size());
  std::vector<double> res(samples.size(), 0.0);
  auto eval = [&](int i) {
    try {
      const double r = residual(samples[static_cast<std::size_t>(i)]);
      res[static_cast<std::size_t>(i)] = std::isnan(r) ? INFINITY : r;
    } catch (const std::exception&) {
      res[static_cast<std::size_t>(i)] = INFINITY;
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) eval(i);
  } else {
    for (int i = 0; i < n; ++i) eval(i);
  }
  InvariantResult out{suite, name, 0.0, tol, n, true, {}};
  int worst = -1;
  for (int i = 0; i < n; ++i)
    if (worst < 0 || res[static_cast<std::size_t>(i)] > out.max_residual) {
      out.max_residual = res[static_cast<std::size_t>(i)];
      worst = i;
    }
  out.passed = out.max_residual < tol;
  if (worst >= 0) out.worst_sample = describe(samples[static_cast<std::size_t>(worst)]);
  return out;
}

std::string describe_bp(const BranchPair& bp) {
  return "alpha=" + fmt17(bp.alpha) + " beta=" + fmt17(bp.beta);
}

std::string describe_mp(const ModuliPoint& mp) {
  return "p=" + fmt17(mp.p) + " k=" + fmt17(mp.k) + " u_t=" + fmt17(mp.u_t) + " v_t=" + fmt17(mp.v_t);
}

double pair_error(const BranchPair& a, const BranchPair& b) {
  return std::max(std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta));
}

double wrap_pi(double x) { return x - 2.0 * kPi * std::nearbyint(x / (2.0 * kPi)); }

ModuliPoint random_moduli_point(std::mt19937_64& rng) {
  static const double ps[] = {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
  ModuliPoint mp;
  mp.p = ps[std::uniform_int_distribution<int>(0, 4)(rng)];
  mp.k = uniform(rng, 0.1, 0.9);
  mp.u_t = uniform(rng, -kPi, kPi) + 2.0 * kPi * std::uniform_int_distribution<int>(-1, 1)(rng);
  mp.v_t = mp.u_t + uniform(rng, 0.05, 2.0 * kPi - 0.05);
  return mp;
}

std::vector<BranchPair> pairs(std::mt19937_64& rng, int n) {
  std::vector<BranchPair> v;
  for (int i = 0; i < n; ++i) v.push_back(random_branch_pair(rng));
  return v;
}

std::vector<InvariantResult> elliptic_suite(std::mt19937_64& rng, bool par) {
  std::vector<InvariantResult> out;
  const std::string s = "elliptic";
  std::vector<double> ks;
  for (int i = 0; i < 50; ++i) ks.push_back(0.01 + 0.98 * i / 49.0);
  std::function<std::string(const double&)> dk = [](const double& k) { return "k=" + fmt17(k); };
  out.push_back(check<double>(s, "legendre relation", 1e-11, ks, [](const double& k) {
    return std::abs(legendre_defect(k));
  }, dk, par));

  struct XK {
    double x, k;
  };
  std::vector<XK> xk;
  for (int i = 0; i < 60; ++i) xk.push_back({uniform(rng, -12.0, 12.0), uniform(rng, 0.05, 0.95)});
  std::function<std::string(const XK&)> dxk = [](const XK& a) { return "x=" + fmt17(a.x) + " k=" + fmt17(a.k); };
  out.push_back(check<XK>(s, "lifted F period", 1e-12, xk, [](const XK& a) {
    return std::abs(lifted_F(a.x + 2.0 * kPi, a.k) - lifted_F(a.x, a.k) - 2.0 * complete_integrals(a.k).Kc);
  }, dxk, par));
  out.push_back(check<XK>(s, "lifted E period", 1e-12, xk, [](const XK& a) {
    const auto c = complete_integrals(a.k);
    return std::abs(lifted_E(a.x + 2.0 * kPi, a.k) - lifted_E(a.x, a.k) - 2.0 * (c.Kc - c.Ec));
  }, dxk, par));
  std::vector<XK> tx;
  for (int i = 0; i < 60; ++i) tx.push_back({std::tan(uniform(rng, -1.55, 1.55)), uniform(rng, 0.05, 0.95)});
  out.push_back(check<XK>(s, "chart consistency", 1e-12, tx, [](const XK& a) {
    const double t = 2.0 * std::atan(a.x);
    return std::max(std::abs(incomplete_F_imag(a.x, a.k) - lifted_F(t, a.k)),
                    std::abs(incomplete_E_reg_imag(a.x, a.k) - lifted_E(t, a.k)));
  }, dxk, par));
  out.push_back(check<XK>(s, "odd integrals", 1e-13, tx, [](const XK& a) {
    return std::max(std::abs(incomplete_F_imag(-a.x, a.k) + incomplete_F_imag(a.x, a.k)),
                    std::abs(incomplete_E_reg_imag(-a.x, a.k) + incomplete_E_reg_imag(a.x, a.k)));
  }, dxk, par));
  return out;
}

std::vector<InvariantResult> curves_suite(std::mt19937_64& rng, bool par) {
  std::vector<InvariantResult> out;
  const std::string s = "curves";
  const auto bps = pairs(rng, 200);
  std::function<std::string(const BranchPair&)> d = describe_bp;
  out.push_back(check<BranchPair>(s, "coordinate round trip", 1e-9, bps, [](const BranchPair& bp) {
    return pair_error(inverse_coords(forward_coords(bp)), bp);
  }, d, par));
  out.push_back(check<BranchPair>(s, "frame normal form", 1e-9, bps, [](const BranchPair& bp) {
    const JacobiFrame fr = build_frame(bp);
    auto apply = [&](const HPoint& h) {
      const HPoint r = fr.f.apply(h);
      return r.value();
    };
    double e = std::abs(apply({bp.alpha, 1.0}) - 1.0);
    e = std::max(e, std::abs(apply(reflect_unit(bp.alpha)) + 1.0));
    e = std::max(e, std::abs(apply({bp.beta, 1.0}) - 1.0 / fr.k) * fr.k);
    e = std::max(e, std::abs(apply(reflect_unit(bp.beta)) + 1.0 / fr.k) * fr.k);
    return e;
  }, d, par));
  out.push_back(check<BranchPair>(s, "deck generator swaps the pair", 1e-9, bps, [](const BranchPair& bp) {
    return pair_error(inverse_coords(deck_lambda_tilde(forward_coords(bp))), lambda_swap(bp));
  }, d, par));
  out.push_back(check<BranchPair>(s, "negation inverts S", 1e-12, bps, [](const BranchPair& bp) {
    return std::abs(S_value(chi_negate(bp)) * S_value(bp) - 1.0);
  }, d, par));
  out.push_back(check<BranchPair>(s, "negation swaps the chart angles", 1e-9, bps, [](const BranchPair& bp) {
    const ModuliPoint a = forward_coords(bp), b = forward_coords(chi_negate(bp));
    return std::max({std::abs(b.p - 1.0 / a.p), std::abs(b.k - a.k), std::abs(wrap_pi(b.u_t - a.v_t)),
                     std::abs(wrap_pi(b.v_t - a.u_t))});
  }, d, par));
  out.push_back(check<BranchPair>(s, "sheet constant", 1e-10, bps, [](const BranchPair& bp) {
    const JacobiFrame fr = build_frame(bp);
    const cplx C = sheet_constant(fr);
    double e = 0.0;
    for (int j = 0; j < 16; ++j) {
      const cplx zeta = std::polar(1.0, 2.0 * kPi * (j + 0.3) / 16.0);
      const cplx d2 = (zeta - fr.nu) * (zeta - fr.nu);
      if (std::abs(d2) < 1e-4) continue;
      const cplx w = w_principal(fr.to_z(zeta), fr.k);
      const cplx v = C * eta_plus(zeta, bp) / d2;
      e = std::max(e, std::abs(w - v) / std::abs(w));
    }
    return e;
  }, d, par));
  return out;
}

std::vector<InvariantResult> differentials_suite(std::mt19937_64& rng, bool par) {
  std::vector<InvariantResult> out;
  const std::string s = "differentials";
  const auto bps = pairs(rng, 6);
  std::function<std::string(const BranchPair&)> d = describe_bp;
  out.push_back(check<BranchPair>(s, "period table", 1e-8, bps, [](const BranchPair& bp) {
    const auto ctx = make_context(build_frame(bp));
    const auto c = complete_integrals(ctx.frame.k);
    auto rel = [](cplx got, cplx want) { return std::abs(got - want) / std::abs(want); };
    double e = rel(period(Differential::Omega, ctx, 'A'), 4.0 * c.K);
    e = std::max(e, rel(period(Differential::Second, ctx, 'A'), 4.0 * c.E));
    e = std::max(e, rel(period(Differential::Omega, ctx, 'B'), 2.0 * I * c.Kc));
    e = std::max(e, rel(period(Differential::Second, ctx, 'B'), 2.0 * I * (c.Kc - c.Ec)));
    e = std::max(e, std::abs(period(Differential::ThetaP, ctx, 'A')) / (2.0 * kPi));
    e = std::max(e, rel(period(Differential::ThetaP, ctx, 'B'), 2.0 * kPi * I));
    e = std::max(e, std::abs(period(Differential::ThetaE, ctx, 'A')) / (2.0 * kPi));
    e = std::max(e, std::abs(period(Differential::ThetaE, ctx, 'B')) / (2.0 * kPi));
    return e;
  }, d, par));
  out.push_back(check<BranchPair>(s, "gamma integrals closed vs quadrature", 1e-6, bps, [](const BranchPair& bp) {
    const JacobiFrame fr = build_frame(bp);
    const auto ctx = make_context(fr);
    double e = 0.0;
    for (int sign : {+1, -1}) {
      const PathSpec path = principal_gamma_path(ctx, sign);
      const cplx qp = contour_integral(Differential::ThetaP, ctx, path).value;
      const cplx qe = contour_integral(Differential::ThetaE, ctx, path).value;
      const cplx cp = theta_P_gamma_closed(sign, fr);
      const cplx ce = theta_E_gamma(sign, bp);
      e = std::max({e, std::abs(qp - cp) / std::max(1.0, std::abs(cp)), std::abs(qe - ce) / std::max(1.0, std::abs(ce)),
                    std::abs(cp.real())});
    }
    return e;
  }, d, par));
  out.push_back(check<BranchPair>(s, "principal part characterization", 1e-8, bps, [](const BranchPair& bp) {
    const JacobiFrame fr = build_frame(bp);
    const auto ctx = make_context(fr);
    const cplx rq = principal_part_ratio(ctx), rc = principal_part_ratio_closed(ctx);
    return std::max(theta_P_characterization_check(fr), std::abs(rq - rc) / std::abs(rc));
  }, d, par));
  return out;
}

std::vector<InvariantResult> moduli_suite(std::mt19937_64& rng, bool par) {
  std::vector<InvariantResult> out;
  const std::string s = "moduli";
  std::vector<ModuliPoint> mps;
  for (int i = 0; i < 200; ++i) mps.push_back(random_moduli_point(rng));
  std::function<std::string(const ModuliPoint&)> d = describe_mp;
  out.push_back(check<ModuliPoint>(s, "deck shift", 1e-9, mps, [](const ModuliPoint& mp) {
    return std::abs(T_tilde(deck_lambda_tilde(mp)) - T_tilde(mp) - (mp.p - 1.0));
  }, d, par));
  out.push_back(check<ModuliPoint>(s, "translation shift", 1e-9, mps, [](const ModuliPoint& mp) {
    return std::abs(T_tilde(deck_iota_tilde(mp)) - T_tilde(mp) - 2.0 * (mp.p - 1.0));
  }, d, par));
  out.push_back(check<ModuliPoint>(s, "lift vs principal paths", 1e-9, mps, [](const ModuliPoint& mp) {
    const Winding wu = wind(mp.u_t, 1e-3), wv = wind(mp.v_t, 1e-3);
    if (wu.at_infinity || wv.at_infinity) return 0.0;
    const BranchPair bp = inverse_coords(mp);
    const JacobiFrame fr = build_frame(bp);
    const cplx Ip = theta_P_gamma_closed(+1, fr), Im = theta_P_gamma_closed(-1, fr);
    const double T0 = ((S_value(bp) * Im - Ip) / (2.0 * kPi * I)).real();
    const double want = T0 + 2.0 * (mp.p * static_cast<double>(wv.index) - static_cast<double>(wu.index));
    return std::abs(T_tilde(mp) - want) / std::max(1.0, std::abs(want));
  }, d, par));
  out.push_back(check<ModuliPoint>(s, "T0 symmetry", 1e-9, mps, [](const ModuliPoint& mp) {
    const ChartCoords c{mp.p, mp.k, std::tan(0.5 * mp.u_t), std::tan(0.5 * mp.v_t)};
    if (std::abs(c.u) > 1e3 || std::abs(c.v) > 1e3) return 0.0;
    const double a = T0_value(c), b = T0_value(chi_chart(c));
    return std::abs(a + mp.p * b) / std::max(1.0, std::abs(a));
  }, d, par));
  out.push_back(check<ModuliPoint>(s, "angle derivatives vs differences", 1e-6, mps, [](const ModuliPoint& mp) {
    const double h = 1e-6;
    ModuliPoint a = mp, b = mp;
    a.u_t += h;
    b.u_t -= h;
    const double fu = (T_tilde(a) - T_tilde(b)) / (2.0 * h);
    a = mp;
    b = mp;
    a.v_t += h;
    b.v_t -= h;
    const double fv = (T_tilde(a) - T_tilde(b)) / (2.0 * h);
    const double du = dT_tilde_du(mp), dv = dT_tilde_dv(mp);
    return std::max(std::abs(fu - du) / std::max(1.0, std::abs(du)), std::abs(fv - dv) / std::max(1.0, std::abs(dv)));
  }, d, par));
  out.push_back(check<ModuliPoint>(s, "monotone direction", 0.5, mps, [](const ModuliPoint& mp) {
    // u-derivative positive for p >= 1, v-derivative negative for p <= 1
    double bad = 0.0;
    if (mp.p >= 1.0 && !(dT_tilde_du(mp) > 0.0)) bad = 1.0;
    if (mp.p <= 1.0 && !(dT_tilde_dv(mp) < 0.0)) bad = 1.0;
    return bad;
  }, d, par));
  out.push_back(check<ModuliPoint>(s, "derivative at u infinity", 1e-10, mps, [](const ModuliPoint& mp) {
    ModuliPoint m = mp;
    m.u_t = kPi;
    m.v_t = kPi + (mp.v_t - mp.u_t);
    const double v = std::tan(0.5 * m.v_t);
    if (std::abs(v) > 1e6) return 0.0;
    const double a = dT_tilde_du(m), b = dT_tilde_du_at_infinity(m.p, m.k, v);
    return std::abs(a - b) / std::max(1.0, std::abs(b));
  }, d, par));

  struct Level {
    double p, q, k, angle;
  };
  std::vector<Level> lv;
  static const double ps[] = {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
  for (int i = 0; i < 60; ++i)
    lv.push_back({ps[i % 5], uniform(rng, -3.0, 3.0), uniform(rng, 0.1, 0.9), uniform(rng, -4.0, 4.0)});
  std::function<std::string(const Level&)> dl = [](const Level& l) {
    return "p=" + fmt17(l.p) + " q=" + fmt17(l.q) + " k=" + fmt17(l.k) + " angle=" + fmt17(l.angle);
  };
  out.push_back(check<Level>(s, "solver residual", 1e-10, lv, [](const Level& l) {
    const ModuliPoint mp = solve_level(l.p, l.q, l.k, l.angle);
    validate(mp);
    return std::abs(T_tilde(mp) - l.q);
  }, dl, par));

  std::vector<BranchPair> sym;
  for (int i = 0; i < 50; ++i) {
    const cplx a = std::polar(uniform(rng, 0.05, 0.85), uniform(rng, -kPi, kPi));
    sym.push_back({a, -a});
  }
  std::function<std::string(const BranchPair&)> db = describe_bp;
  // T vanishes modulo Z<1, S> = Z; in the principal lift these curves sit on level 1
  out.push_back(check<BranchPair>(s, "negation-symmetric annulus", 1e-9, sym, [](const BranchPair& bp) {
    const double t = principal_T_value(bp);
    return std::max({std::abs(t - std::round(t)), std::abs(T_tilde(forward_coords(bp)) - 1.0),
                     std::abs(S_value(bp) - 1.0)});
  }, db, par));
  return out;
}

}  // namespace

BranchPair random_branch_pair(std::mt19937_64& rng) {
  for (;;) {
    const cplx a = std::polar(std::sqrt(uniform(rng, 0.0, 1.0)) * 0.85, uniform(rng, -kPi, kPi));
    const cplx b = std::polar(std::sqrt(uniform(rng, 0.0, 1.0)) * 0.85, uniform(rng, -kPi, kPi));
    if (std::abs(a - b) < 0.05) continue;
    const BranchPair bp{a, b};
    const double k = jacobi_modulus(bp);
    if (k < 0.05 || k > 0.95) continue;
    const JacobiFrame fr = build_frame(bp);
    if (std::abs(fr.nu - 1.0) < 1e-3 || std::abs(fr.nu + 1.0) < 1e-3) continue;
    return bp;
  }
}

bool is_suite_name(const std::string& name) {
  return name == "all" || name == "elliptic" || name == "curves" || name == "differentials" || name == "moduli";
}

std::vector<InvariantResult> run_suite(const std::string& name, const VerifyOptions& opt) {
  if (!is_suite_name(name)) throw std::invalid_argument("unknown suite '" + name + "'");
  std::vector<InvariantResult> out;
  auto add = [&](const std::string& suite, std::uint64_t stream, auto fn) {
    if (name != "all" && name != suite) return;
    // Each suite draws from its own stream so results do not depend on which suites run.
    std::seed_seq seq{opt.seed, stream};
    std::mt19937_64 rng(seq);
    auto r = fn(rng, opt.parallel);
    out.insert(out.end(), r.begin(), r.end());
  };
  add("elliptic", 1, elliptic_suite);
  add("curves", 2, curves_suite);
  add("differentials", 3, differentials_suite);
  add("moduli", 4, moduli_suite);
  return out;
}

std::string to_text(const std::vector<InvariantResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.suite << " / " << r.name << ": max_residual=" << fmt17(r.max_residual)
       << " tol=" << fmt17(r.tolerance) << " samples=" << r.samples << "\n";
    if (!r.passed) os << "  replay: " << r.worst_sample << "\n";
  }
  return os.str();
}

}  // namespace harmtori
