#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "harmtori/differentials.hpp"
#include "harmtori/elliptic_core.hpp"
#include "harmtori/moduli_explorer.hpp"
#include "harmtori/verify.hpp"
#include "oracles.hpp"

using namespace harmtori;
using std::numbers::pi;

namespace {

const std::array<double, 5> kPs = {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};

ModuliPoint random_point(std::mt19937_64& rng, double p) {
  std::uniform_real_distribution<double> uk(0.1, 0.9), uu(-6.0, 6.0), ud(0.05, 2 * pi - 0.05);
  ModuliPoint mp{p, uk(rng), uu(rng), 0.0};
  mp.v_t = mp.u_t + ud(rng);
  return mp;
}

double pair_distance_unordered(const BranchPair& a, const BranchPair& b) {
  const double d1 = std::max(std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta));
  const double d2 = std::max(std::abs(a.alpha - b.beta), std::abs(a.beta - b.alpha));
  return std::min(d1, d2);
}

}  // namespace

TEST_CASE("T0 on the finite chart") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> ux(-4.0, 4.0), uk(0.1, 0.9), up(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    const ChartCoords c{std::exp(up(rng)), uk(rng), ux(rng), ux(rng)};
    if (std::abs(c.u - c.v) < 1e-3) continue;
    CHECK(std::abs(T0_value(c) + c.p * T0_value(chi_chart(c))) < 1e-10 * (1.0 + std::abs(T0_value(c))));
  }
  CHECK_THROWS(T0_value({1.0, 0.5, 0.3, 0.3}));
  const double v = 0.7;
  CHECK(std::abs(T0_value({1.5, 0.5, v - 1e-4, v})) > 1e3);
  CHECK(std::abs(T0_value({1.5, 0.5, v + 1e-4, v})) > 1e3);
  CHECK(T0_value({1.5, 0.5, v - 1e-4, v}) * T0_value({1.5, 0.5, v + 1e-4, v}) < 0.0);
}

TEST_CASE("T vanishes modulo Z on the chi-fixed curves") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> ur(0.05, 0.85), ua(-pi, pi);
  for (int i = 0; i < 50; ++i) {
    const cplx a = std::polar(ur(rng), ua(rng));
    const ModuliPoint mp = forward_coords({a, -a});
    const double t = principal_T_value({a, -a});
    // the finite-chart value is sign(v - u), an element of Z<1, S> = Z
    const double u = std::tan(mp.u_t / 2), v = std::tan(mp.v_t / 2);
    CHECK(std::abs(t - (v > u ? 1.0 : -1.0)) < 1e-9);
    CHECK(std::abs(T_tilde(mp) - 1.0) < 1e-9);
    const SpectralTestResult r = spectral_test({a, -a}, 64);
    REQUIRE(r.candidate.has_value());
    CHECK(r.candidate->p == Rational(1));
    CHECK(r.candidate->q == Rational(0));
  }
}

TEST_CASE("principal T agrees with the independent oracle") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const BranchPair bp = random_branch_pair(rng);
    const double t = principal_T_value(bp);
    CHECK(std::abs(t - oracle::principal_T(bp)) < 1e-8 * (1.0 + std::abs(t)));
  }
}

TEST_CASE("lifted T, windings and deck shifts") {
  std::mt19937_64 rng(103);
  for (double p : kPs)
    for (int i = 0; i < 40; ++i) {
      const ModuliPoint mp = random_point(rng, p);
      const double t = T_tilde(mp);
      CHECK(std::abs(T_tilde(deck_lambda_tilde(mp)) - t - (p - 1.0)) < 1e-9 * (1.0 + std::abs(t)));
      CHECK(std::abs(T_tilde(deck_iota_tilde(mp)) - t - 2.0 * (p - 1.0)) < 1e-9 * (1.0 + std::abs(t)));
      const Winding wu = wind(mp.u_t), wv = wind(mp.v_t);
      if (wu.at_infinity || wv.at_infinity) continue;
      const double u = std::tan(mp.u_t / 2), v = std::tan(mp.v_t / 2);
      if (std::abs(u) > 1e4 || std::abs(v) > 1e4) continue;
      const double t0 = T0_value({p, mp.k, u, v});
      CHECK(std::abs(t - t0 - 2.0 * (p * double(wv.index) - double(wu.index))) < 1e-10 * (1.0 + std::abs(t0)));
    }
  // principal band: no winding correction
  const ModuliPoint mp{0.7, 0.4, -0.8, 1.9};
  CHECK(std::abs(T_tilde(mp) - T0_value({0.7, 0.4, std::tan(-0.4), std::tan(0.95)})) < 1e-12);
}

TEST_CASE("derivatives") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uk(0.1, 0.9), up(1.0, 4.0);
  int n = 0;
  while (n < 50) {
    const ChartCoords c{up(rng), uk(rng), ux(rng), ux(rng)};
    if (std::abs(c.u - c.v) < 0.05) continue;
    ++n;
    const double h = 1e-6;
    const double fd = (T0_value({c.p, c.k, c.u + h, c.v}) - T0_value({c.p, c.k, c.u - h, c.v})) / (2 * h);
    const double d = dT0_du(c);
    CHECK(std::abs(fd - d) < 1e-6 * std::abs(d) + 1e-7);
    CHECK(d > 0.0);
  }
  for (double p : kPs)
    for (int i = 0; i < 20; ++i) {
      const ModuliPoint mp = random_point(rng, p);
      if (mp.v_t - mp.u_t < 0.2 || mp.v_t - mp.u_t > 2 * pi - 0.2) continue;
      const double h = 1e-5;
      ModuliPoint a = mp, b = mp;
      a.u_t -= h, b.u_t += h;
      const double fu = (T_tilde(b) - T_tilde(a)) / (2 * h);
      a = mp, b = mp;
      a.v_t -= h, b.v_t += h;
      const double fv = (T_tilde(b) - T_tilde(a)) / (2 * h);
      CHECK(std::abs(fu - dT_tilde_du(mp)) < 1e-6 * std::abs(fu) + 1e-7);
      CHECK(std::abs(fv - dT_tilde_dv(mp)) < 1e-6 * std::abs(fv) + 1e-7);
      if (p >= 1.0) CHECK(dT_tilde_du(mp) > 0.0);
      if (p <= 1.0) CHECK(dT_tilde_dv(mp) < 0.0);
    }
  // limit form at u = pi matches nearby values
  for (double p : {1.0, 1.5, 3.0})
    for (double k : {0.2, 0.6})
      for (double vt : {pi + 0.5, pi + 2.5}) {
        const double v = std::tan(vt / 2);
        const double lim = dT_tilde_du_at_infinity(p, k, v);
        CHECK(lim > 0.0);
        CHECK(std::abs(dT_tilde_du({p, k, pi, vt}) - lim) < 1e-10 * std::abs(lim));
        CHECK(std::abs(dT_tilde_du({p, k, pi - 1e-7, vt}) - lim) < 1e-6 * std::abs(lim));
        CHECK(std::abs(dT_tilde_du({p, k, pi + 1e-7, vt}) - lim) < 1e-6 * std::abs(lim));
      }
}

TEST_CASE("range over the band") {
  for (double p : {0.5, 1.0, 2.0}) {
    const double vt = 0.9;
    const double lo = T_tilde({p, 0.5, vt - 2 * pi + 1e-7, vt}), hi = T_tilde({p, 0.5, vt - 1e-7, vt});
    CHECK(std::abs(lo) > 1e3);
    CHECK(std::abs(hi) > 1e3);
    CHECK(lo * hi < 0.0);
  }
}

TEST_CASE("level solver") {
  {
    // the chi-fixed annulus is level 1 of the lift
    const ModuliPoint mp = solve_level(1.0, 1.0, 0.5, 0.3);
    CHECK(mp.u_t == 0.3);
    const BranchPair bp = inverse_coords(mp);
    CHECK(std::abs(bp.alpha + bp.beta) < 1e-8);
    // bisection oracle on the same function
    const double v = oracle::bisect_decreasing([](double x) { return T_tilde({1.0, 0.5, 0.3, x}) - 1.0; },
                                               0.3 + 1e-9, 0.3 + 2 * pi - 1e-9);
    CHECK(std::abs(v - mp.v_t) < 1e-9);
  }
  {
    const ModuliPoint mp = solve_level(1.0 / 3.0, 0.0, 0.5, 0.2);
    CHECK(std::abs(T_tilde(mp)) < 1e-10);
    CHECK(std::abs(S_value(inverse_coords(mp)) - 1.0 / 3.0) < 1e-9);
  }
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> uq(-3.0, 3.0), uk(0.1, 0.9), ua(-5.0, 5.0);
  for (double p : kPs)
    for (int i = 0; i < 12; ++i) {
      const double q = uq(rng), k = uk(rng), a = ua(rng);
      const ModuliPoint mp = solve_level(p, q, k, a);
      CHECK(std::abs(T_tilde(mp) - q) < 1e-10);
      CHECK(mp.v_t > mp.u_t);
      CHECK(mp.v_t < mp.u_t + 2 * pi);
      CHECK(fixed_angle_of(mp) == a);
      // group action: level q + (p-1) solved at the deck-translated fixed angle
      const ModuliPoint lam = deck_lambda_tilde(mp);
      const ModuliPoint other = solve_level(p, q + (p - 1.0), k, fixed_angle_of(lam));
      CHECK(std::abs(other.u_t - lam.u_t) < 1e-8);
      CHECK(std::abs(other.v_t - lam.v_t) < 1e-8);
      // graph property: a nearby fixed angle gives a nearby, distinct solution
      const ModuliPoint near = solve_level(p, q, k, a + 1e-3);
      const double da = solves_for_v(p) ? near.v_t - mp.v_t : near.u_t - mp.u_t;
      CHECK(std::abs(da) < 0.5);
    }
  CHECK(solves_for_v(1.0));
  CHECK_FALSE(solves_for_v(1.5));
}

TEST_CASE("components") {
  CHECK(std::holds_alternative<Annulus>(classify_component(Rational(1), Rational(3))));
  CHECK(std::get<Annulus>(classify_component(Rational(1), Rational(3))).q == Rational(3));
  CHECK(same_component(classify_component(Rational(1, 2), Rational(0)),
                       classify_component(Rational(1, 2), Rational(-1, 2))));
  CHECK(same_component(classify_component(Rational(2), Rational(0)), classify_component(Rational(2), Rational(1))));
  CHECK_FALSE(
      same_component(classify_component(Rational(2), Rational(0)), classify_component(Rational(2), Rational(1, 2))));
  CHECK_FALSE(same_component(classify_component(Rational(1), Rational(0)),
                             classify_component(Rational(1), Rational(1))));
  const Helicoid h = std::get<Helicoid>(classify_component(Rational(1, 3), Rational(5, 4)));
  CHECK(h.q_class == Rational(7, 12));
  CHECK(describe(classify_component(Rational(1), Rational(0))) == "annulus p=1 q=0/1");

  const auto two = enumerate_components(Rational(2), 2);
  CHECK(two.size() == 2);
  CHECK(enumerate_components(Rational(1), 3).size() == 9);
  for (const auto& c : enumerate_components(Rational(1, 2), 4)) {
    const Rational r = std::get<Helicoid>(c).q_class;
    CHECK_FALSE(r < Rational(0));
    CHECK(r < Rational(1, 2));
    CHECK(r.den <= 4);
  }
}

TEST_CASE("moduli summaries") {
  const ModuliSummary a = moduli_summary(Rational(1), Rational(0));
  CHECK(a.l == 1);
  CHECK(a.monodromy.value() == -1);
  CHECK(a.fibre.find("B_q") != std::string::npos);
  const ModuliSummary b = moduli_summary(Rational(1), Rational(1, 2));
  CHECK(b.l == 2);
  CHECK(b.monodromy.value() == -2);
  const ModuliSummary c = moduli_summary(Rational(1, 3), Rational(0));
  CHECK(std::holds_alternative<Helicoid>(c.component));
  CHECK(c.l == 1);
  CHECK_FALSE(c.monodromy.has_value());
  CHECK(c.fibre == "Mat2*Z x S^1");
  CHECK(moduli_summary(Rational(1, 3), Rational(1, 4)).l == 4);
}

TEST_CASE("candidate detection") {
  {
    const BranchPair bp{cplx(0.3, 0.2), cplx(0.4, -0.1)};
    const SpectralTestResult r = spectral_test(bp, 20, 1e-9);
    CHECK_FALSE(r.candidate.has_value());
    CHECK(std::max(r.p_residual, r.q_residual) > 1e-6);
  }
  {
    const SpectralTestResult r = spectral_test({0.3, -0.3}, 64);
    REQUIRE(r.candidate.has_value());
    CHECK(r.candidate->p == Rational(1));
    CHECK(r.candidate->q == Rational(0));
  }
  for (auto [p, q] : {std::pair{Rational(1, 3), Rational(1, 4)}, std::pair{Rational(2), Rational(1, 3)},
                      std::pair{Rational(1), Rational(1, 2)}}) {
    const ModuliPoint mp = solve_level(p.value(), q.value(), 0.5, 0.4);
    const SpectralTestResult r = spectral_test(inverse_coords(mp), 64);
    REQUIRE(r.candidate.has_value());
    CHECK(r.candidate->p == p);
    CHECK(r.candidate->q == q);
    const Rational t = principal_T(p, q, mp);
    CHECK(r.candidate->path_T == t);
    CHECK(mod(t - q, Rational(1, p.den)) == Rational(0));
  }
}

TEST_CASE("monodromy around the annulus") {
  for (auto [q, expect] : {std::pair{Rational(0), -1}, std::pair{Rational(1, 2), -2}, std::pair{Rational(1, 3), -3}}) {
    const MonodromyResult m = monodromy_track(q, 64);
    CHECK(m.shift == expect);
    CHECK(std::abs(m.shift_real - expect) < 1e-6);
    CHECK(std::abs(m.lifted_shift - expect) < 1e-6);
    CHECK(m.closure_error < 1e-8);
  }
  // a small loop inside one chart
  std::vector<ModuliPoint> loop;
  for (int i = 0; i <= 32; ++i) {
    const double t = 2 * pi * i / 32;
    loop.push_back({1.0, 0.5 + 0.05 * std::cos(t), 0.3 + 0.1 * std::sin(t), 2.0});
  }
  CHECK(std::abs(unwrapped_gamma_increment(loop)) < 1e-9);
  CHECK(std::abs(std::llround(unwrapped_gamma_increment(loop))) == 0);

  const BranchPair start = inverse_coords(solve_level(1.0, 1.0 / 3.0, 0.5, 0.3));
  const double X = rescale_angle(0.3, 0.5);
  const BranchPair end = inverse_coords(solve_level(1.0, 1.0 / 3.0, 0.5, unrescale_angle(X + pi, 0.5)));
  CHECK(pair_distance_unordered(start, end) < 1e-8);
}
