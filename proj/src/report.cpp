#include "harmtori/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "harmtori/elliptic_core.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

cplx combo_coefficient(const DifferentialCombo& c, const DifferentialContext& ctx, cplx z, cplx w) {
  cplx s = 0.0;
  for (const auto& [d, a] : c.terms) s += a * differential_coefficient(d, ctx, z, w);
  return s;
}

PathSpec circle_path(cplx center, double r, double k) {
  PathSpec p;
  p.add_arc(center, r, r, 0.0, 2.0 * kPi);
  p.w_start = w_principal(p.start(), k);
  return p;
}

// Sample points off the cuts and away from the poles.
std::vector<cplx> sample_points(const JacobiFrame& fr) {
  std::vector<cplx> pts;
  for (int j = 0; j < 24; ++j) {
    const double t = 2.0 * kPi * (j + 0.37) / 24.0;
    for (double r : {0.45, 1.7, 3.1}) {
      const cplx z = std::polar(r / fr.k, t) * 0.5 + cplx(0.0, 0.05 * j);
      if (std::abs(z - fr.z0) > 1e-2 && std::abs(z + std::conj(fr.z0)) > 1e-2 && std::abs(z.imag()) > 1e-3)
        pts.push_back(z);
    }
  }
  return pts;
}

CheckEntry entry(const std::string& id, const std::string& cond, double res, double tol, std::string note = {}) {
  return {id, cond, res, tol, res < tol, std::move(note)};
}

}  // namespace

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt17(cplx z) { return fmt17(z.real()) + "," + fmt17(z.imag()); }

CurveReport curve_report(const BranchPair& bp, std::int64_t max_den, double detection_tol, double quadrature_tol) {
  validate(bp);
  CurveReport r;
  r.bp = bp;
  const JacobiFrame fr = build_frame(bp);
  const DifferentialContext ctx = make_context(fr);
  r.k = fr.k;
  r.coords = forward_coords(bp);
  r.detection = spectral_test(bp, max_den, detection_tol);
  r.line_bundle = "P.10: circle of line-bundle choices, not constructed";

  std::string closing_note;
  if (r.detection.candidate) {
    const auto& c = *r.detection.candidate;
    r.component = classify_component(c.p, c.q);
    r.summary = moduli_summary(c.p, c.q);
    try {
      r.closing = construct_psi(c.p, c.path_T, fr, 10.0 * detection_tol);
    } catch (const DomainError& e) {
      closing_note = e.what();
    }
  }

  DifferentialCombo d1, d2;
  if (r.closing) {
    d1.terms = {{Differential::ThetaE, r.closing->a}};
    d2.terms = {{Differential::ThetaE, r.closing->b}, {Differential::ThetaP, static_cast<double>(r.closing->l)}};
  } else {
    d1.terms = {{Differential::ThetaE, 1.0}};
    d2.terms = {{Differential::ThetaP, 1.0}};
  }
  const std::array<const DifferentialCombo*, 2> diffs{&d1, &d2};
  ContourOptions copt;
  copt.abs_tol = quadrature_tol;

  // P.1: conj(P(1/conj z)) z^4 = P(z)
  double p1 = 0.0;
  for (int j = 0; j < 64; ++j)
    for (double rad : {0.5, 0.9, 1.4}) {
      const cplx z = std::polar(rad, 2.0 * kPi * (j + 0.5) / 64.0);
      const cplx lhs = std::conj(branch_polynomial(1.0 / std::conj(z), bp)) * std::pow(z, 4);
      const cplx rhs = branch_polynomial(z, bp);
      p1 = std::max(p1, std::abs(lhs - rhs) / std::abs(rhs));
    }
  r.checklist.push_back(entry("P.1", "real curve", p1, 1e-12));

  // P.2: zeros inside the unit disc counted by the argument principle; well
  // defined only when P has none on the circle.
  {
    const int n = 4096;
    double turn = 0.0, min_abs = INFINITY;
    cplx prev = branch_polynomial(1.0, bp);
    for (int j = 1; j <= n; ++j) {
      const cplx cur = branch_polynomial(std::polar(1.0, 2.0 * kPi * j / n), bp);
      min_abs = std::min(min_abs, std::abs(cur));
      turn += std::arg(cur / prev);
      prev = cur;
    }
    const double count = turn / (2.0 * kPi);
    r.checklist.push_back(entry("P.2", "no real zeroes", std::abs(count - 2.0), 1e-6,
                                "min |P| on circle " + fmt17(min_abs)));
  }

  // P.3: no residues at the poles over 0 and infinity, holomorphic elsewhere
  // (checked at z = infinity through the two leading Laurent coefficients).
  {
    double res = 0.0;
    double rad = 2.0 * fr.z0.real();
    for (double b : {1.0, -1.0, 1.0 / fr.k, -1.0 / fr.k}) rad = std::min(rad, std::abs(fr.z0 - b));
    rad *= 0.3;
    const double Rbig = 1.5 * std::max(1.0 / fr.k, std::abs(fr.z0) + 1.0);
    for (const auto* d : diffs) {
      double pp_scale = 0.0;
      for (cplx pole : {fr.z0, -std::conj(fr.z0)}) {
        const PathSpec c = circle_path(pole, rad, fr.k);
        ContourOptions o = copt;
        o.clearance = 0.5 * rad;
        auto h = [&](cplx z, cplx w) { return combo_coefficient(*d, ctx, z, w); };
        auto hz = [&](cplx z, cplx w) { return (z - pole) * combo_coefficient(*d, ctx, z, w); };
        const cplx residue = contour_integral(h, ctx, c, o).value / (2.0 * kPi * I);
        const cplx pp = contour_integral(hz, ctx, c, o).value / (2.0 * kPi * I);
        pp_scale = std::max(pp_scale, std::abs(pp));
        res = std::max(res, std::abs(residue) * rad / std::abs(pp));
      }
      const PathSpec big = circle_path(0.0, Rbig, fr.k);
      auto h = [&](cplx z, cplx w) { return combo_coefficient(*d, ctx, z, w); };
      auto hz = [&](cplx z, cplx w) { return combo_coefficient(*d, ctx, z, w) / z; };
      const cplx a1 = contour_integral(h, ctx, big, copt).value / (2.0 * kPi * I);
      const cplx a0 = contour_integral(hz, ctx, big, copt).value / (2.0 * kPi * I);
      res = std::max(res, std::abs(a1) * Rbig / pp_scale);
      res = std::max(res, std::abs(a0) * Rbig * Rbig / pp_scale);
    }
    r.checklist.push_back(entry("P.3", "poles", res, 1e-8));
  }

  // P.4 and P.5: pointwise pullbacks under the sheet swap and the real structure.
  {
    double sym = 0.0, real = 0.0;
    for (cplx z : sample_points(fr)) {
      const cplx w = w_principal(z, fr.k);
      for (const auto* d : diffs) {
        const cplx h = combo_coefficient(*d, ctx, z, w);
        sym = std::max(sym, std::abs(combo_coefficient(*d, ctx, z, -w) + h) / std::abs(h));
        real = std::max(real, std::abs(combo_coefficient(*d, ctx, -std::conj(z), std::conj(w)) - std::conj(h)) /
                                  std::abs(h));
      }
    }
    r.checklist.push_back(entry("P.4", "symmetry", sym, 1e-10));
    r.checklist.push_back(entry("P.5", "reality", real, 1e-10));
  }

  // P.6 and P.7: periods.
  {
    double imag_res = 0.0, int_res = 0.0;
    for (const auto* d : diffs)
      for (const PathSpec& loop : {loop_A(ctx), loop_B(ctx)}) {
        const cplx v = contour_integral(*d, ctx, loop, copt).value / (2.0 * kPi * I);
        imag_res = std::max(imag_res, std::abs(v.imag()));
        int_res = std::max(int_res, std::abs(v.real() - std::round(v.real())) + std::abs(v.imag()));
      }
    r.checklist.push_back(entry("P.6", "imaginary periods", imag_res, 1e-8));
    r.checklist.push_back(entry("P.7", "periods in 2 pi i Z", int_res, 1e-8));
  }

  // P.8: closing integrals.
  if (r.closing) {
    double res = r.closing->integrality_residual;
    for (const auto& [xe, xp] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
      for (const cplx& v : closing_integrals_quadrature(*r.closing, fr, xe, xp))
        res = std::max(res, std::abs(v - std::round(v.real())));
    }
    r.checklist.push_back(entry("P.8", "closing conditions", res, 1e-6,
                                "Gamma+ = " + std::to_string(r.closing->gamma_plus) +
                                    ", Gamma- = " + std::to_string(r.closing->gamma_minus)));
  } else {
    const double res = std::max(r.detection.p_residual, r.detection.q_residual);
    CheckEntry e = entry("P.8", "closing conditions", res, detection_tol,
                         closing_note.empty() ? "S, T not both rational at this tolerance" : closing_note);
    e.passed = false;
    r.checklist.push_back(e);
  }

  // P.9: Theta^P's principal part is i times a real multiple of Theta^E's, so
  // the pair is independent as long as both integer weights are nonzero.
  {
    const double defect = theta_P_characterization_check(fr);
    CheckEntry e = entry("P.9", "linear independence", defect, 1e-9);
    if (r.closing) {
      e.note = "a = " + fmt17(r.closing->a) + ", l = " + std::to_string(r.closing->l);
      e.passed = e.passed && r.closing->a != 0.0 && r.closing->l != 0;
    }
    r.checklist.push_back(e);
  }
  return r;
}

std::string to_text(const CurveReport& r) {
  std::ostringstream os;
  os << "alpha: " << fmt17(r.bp.alpha) << "\n";
  os << "beta: " << fmt17(r.bp.beta) << "\n";
  os << "k: " << fmt17(r.k) << "\n";
  os << "coords: p=" << fmt17(r.coords.p) << " u_t=" << fmt17(r.coords.u_t) << " v_t=" << fmt17(r.coords.v_t)
     << "\n";
  os << "S: " << fmt17(r.detection.S) << "\n";
  os << "T: " << fmt17(r.detection.T) << "\n";
  os << "detection: p_residual=" << fmt17(r.detection.p_residual) << " q_residual=" << fmt17(r.detection.q_residual)
     << "\n";
  if (r.detection.candidate) {
    os << "p: " << r.detection.candidate->p.str() << "\n";
    os << "q: " << r.detection.candidate->q.str() << "\n";
    os << "T on principal paths: " << r.detection.candidate->path_T.str() << "\n";
  } else {
    os << "p: none\nq: none\n";
  }
  if (r.component) os << "component: " << describe(*r.component) << "\n";
  if (r.summary) {
    os << "l: " << r.summary->l << "\n";
    if (r.summary->monodromy) os << "monodromy: " << *r.summary->monodromy << "\n";
    os << "fibre: " << r.summary->fibre << "\n";
  }
  if (r.closing) {
    const auto& c = *r.closing;
    os << "closing: n=" << c.n << " m=" << c.m << " n'=" << c.np << " m'=" << c.mp << " l=" << c.l << " y=" << c.y
       << " Gamma+=" << c.gamma_plus << " Gamma-=" << c.gamma_minus << "\n";
    os << "closing_coefficients: a=" << fmt17(c.a) << " b=" << fmt17(c.b) << "\n";
  }
  os << "spectral: " << (r.spectral() ? "yes" : "no") << "\n";
  os << "checklist:\n";
  for (const auto& e : r.checklist) {
    os << "  " << e.id << " " << e.condition << ": residual=" << fmt17(e.residual) << " tol=" << fmt17(e.tolerance)
       << " " << (e.passed ? "pass" : "fail");
    if (!e.note.empty()) os << " (" << e.note << ")";
    os << "\n";
  }
  os << r.line_bundle << "\n";
  return os.str();
}

Genus0Report genus0_report(const Genus0Data& d) {
  validate(d);
  Genus0Report r;
  r.data = d;
  r.map = map_params(d.alpha);
  r.lattice = period_lattice(r.map.ratio);
  r.tau = conformal_type(d.M, r.map.ratio);
  r.tau_oriented = conformal_type_oriented(d.M, r.map.ratio);
  const DifferentialScalars s = differential_scalars(d.alpha);
  r.r1 = s.r1;
  r.r2 = s.r2;
  r.energy = energy(d);
  r.large_energy = std::abs(r.energy) > kLargeEnergy;

  const auto& M = d.M;
  const cplx tau1 = static_cast<double>(M.n1) * r.lattice.kappa1 + static_cast<double>(M.m1) * r.lattice.kappa2;
  const cplx tau2 = static_cast<double>(M.n2) * r.lattice.kappa1 + static_cast<double>(M.m2) * r.lattice.kappa2;
  for (cplx t : {r.lattice.kappa1, r.lattice.kappa2, tau1, tau2})
    r.period_residual = std::max(r.period_residual, (harmonic_map_eval(r.map, t) - Mat2::identity()).max_abs());
  const auto pts = eigenline_branch_points(r.map);
  const HPoint refl = reflect_unit(d.alpha);
  r.eigenline_residual = std::abs(pts.first.value() - d.alpha);
  r.eigenline_residual = std::max(
      r.eigenline_residual, std::abs(pts.second.x * refl.y - pts.second.y * refl.x) /
                                (std::hypot(std::abs(pts.second.x), std::abs(pts.second.y)) *
                                 std::hypot(std::abs(refl.x), std::abs(refl.y))));
  r.scalar_residual = std::abs(r.r1 - differential_scalar_closed(d.alpha));
  return r;
}

std::string to_text(const Genus0Report& r) {
  std::ostringstream os;
  os << "alpha: " << fmt17(r.data.alpha) << "\n";
  os << "matrix: " << r.data.M.n1 << "," << r.data.M.m1 << "," << r.data.M.n2 << "," << r.data.M.m2 << "\n";
  os << "ratio: " << fmt17(r.map.ratio) << "\n";
  os << "angle: " << fmt17(r.map.angle) << "\n";
  os << "latitude: " << fmt17(r.map.angle - kPi / 2.0) << "\n";
  os << "kappa1: " << fmt17(r.lattice.kappa1) << "\n";
  os << "kappa2: " << fmt17(r.lattice.kappa2) << "\n";
  os << "tau: " << fmt17(r.tau) << "\n";
  os << "tau_oriented: " << fmt17(r.tau_oriented) << "\n";
  os << "r1: " << fmt17(r.r1) << "\n";
  os << "r2: " << fmt17(r.r2) << "\n";
  os << "energy: " << fmt17(r.energy) << "\n";
  os << "energy_abs: " << fmt17(std::abs(r.energy)) << "\n";
  os << "checks: period_residual=" << fmt17(r.period_residual) << " eigenline_residual=" << fmt17(r.eigenline_residual)
     << " scalar_residual=" << fmt17(r.scalar_residual) << "\n";
  if (r.large_energy) os << "warning: large energy; the map approaches a degenerate limit as alpha nears +-1\n";
  return os.str();
}

}  // namespace harmtori
