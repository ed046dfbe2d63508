#include "harmtori/sweep.hpp"

#include <cmath>
#include <numbers>

#include "harmtori/elliptic_core.hpp"

namespace harmtori {

namespace {

constexpr double kPi = std::numbers::pi;

double k_sample(const SweepOptions& opt, int i) {
  return opt.k_min + (opt.k_max - opt.k_min) * static_cast<double>(i) / (opt.k_grid - 1);
}

LevelSetRecord solve_record(const Rational& p, const Rational& q, const SweepOptions& opt, int idx) {
  LevelSetRecord r;
  r.k_index = idx / opt.angle_grid;
  r.angle_index = idx % opt.angle_grid;
  r.k = k_sample(opt, r.k_index);
  const double X = rescale_angle(opt.start_angle, r.k) +
                   opt.span * static_cast<double>(r.angle_index) / (opt.angle_grid - 1);
  r.free_angle = unrescale_angle(X, r.k);
  try {
    r.mp = solve_level(p.value(), q.value(), r.k, r.free_angle, opt.solve);
    r.residual = std::abs(T_tilde(r.mp) - q.value());
    r.bp = inverse_coords(r.mp);
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

LevelSetMesh make_mesh(const Rational& p, const Rational& q, const SweepOptions& opt) {
  if (p.num <= 0) throw DomainError("p must be positive");
  validate(opt);
  LevelSetMesh m;
  m.p = p;
  m.q = q;
  m.opt = opt;
  m.records.resize(static_cast<std::size_t>(opt.k_grid) * opt.angle_grid);
  return m;
}

double pair_distance(const BranchPair& a, const BranchPair& b) {
  return std::min(std::abs(a.alpha - b.alpha) + std::abs(a.beta - b.beta),
                  std::abs(a.alpha - b.beta) + std::abs(a.beta - b.alpha));
}

}  // namespace

void validate(const SweepOptions& opt) {
  if (opt.k_grid < 2 || opt.angle_grid < 2) throw DomainError("sweep grids need at least 2 samples");
  if (!(0.0 < opt.k_min && opt.k_min < opt.k_max && opt.k_max < 1.0))
    throw DomainError("sweep needs 0 < k_min < k_max < 1");
  if (!(opt.span > 0.0) || !std::isfinite(opt.span)) throw DomainError("sweep span must be positive");
}

int LevelSetMesh::failures() const {
  int n = 0;
  for (const auto& r : records) n += r.ok ? 0 : 1;
  return n;
}

LevelSetMesh sweep_level_set(const Rational& p, const Rational& q, const SweepOptions& opt) {
  LevelSetMesh m = make_mesh(p, q, opt);
  const int n = static_cast<int>(m.records.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) m.records[static_cast<std::size_t>(i)] = solve_record(p, q, opt, i);
  return m;
}

LevelSetMesh sweep_level_set_serial(const Rational& p, const Rational& q, const SweepOptions& opt) {
  LevelSetMesh m = make_mesh(p, q, opt);
  const int n = static_cast<int>(m.records.size());
  for (int i = 0; i < n; ++i) m.records[static_cast<std::size_t>(i)] = solve_record(p, q, opt, i);
  return m;
}

TopologyReport sweep_topology(const Rational& p, const Rational& q, const SweepOptions& opt) {
  validate(opt);
  TopologyReport rep;
  rep.shift = p - Rational(1);
  rep.rows.resize(static_cast<std::size_t>(opt.k_grid));
  const double pv = p.value(), qv = q.value(), shift = rep.shift.value();
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < opt.k_grid; ++i) {
    const double k = k_sample(opt, i);
    const double X0 = rescale_angle(opt.start_angle, k);
    const ModuliPoint start = solve_level(pv, qv, k, unrescale_angle(X0, k), opt.solve);
    const ModuliPoint end = solve_level(pv, qv, k, unrescale_angle(X0 + kPi, k), opt.solve);
    TopologyRow row{k, pair_distance(inverse_coords(start), inverse_coords(end)), 0.0,
                    T_tilde(deck_lambda_tilde(start)) - qv};
    const ModuliPoint pre = solve_level(pv, qv - shift, k, unrescale_angle(X0, k), opt.solve);
    const ModuliPoint img = deck_lambda_tilde(pre);
    row.deck_error = std::abs(img.u_t - end.u_t) + std::abs(img.v_t - end.v_t);
    rep.rows[static_cast<std::size_t>(i)] = row;
  }
  for (const auto& r : rep.rows) {
    rep.max_closure = std::max(rep.max_closure, r.closure_error);
    rep.max_deck = std::max(rep.max_deck, r.deck_error);
    rep.max_shift_error = std::max(rep.max_shift_error, std::abs(r.level_shift - shift));
  }
  return rep;
}

}  // namespace harmtori
