#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "harmtori/genus_zero.hpp"
#include "oracles.hpp"

using namespace harmtori;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

double dist_identity(const Mat2& g) { return (g - Mat2::identity()).max_abs(); }

Genus0Map random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(std::log(0.1), std::log(10.0)), ud(0.1, pi - 0.1);
  return {std::exp(ux(rng)), ud(rng)};
}

}  // namespace

TEST_CASE("branch point and its inverse transformation") {
  CHECK(std::abs(branch_point({1.0, pi / 2})) < 1e-15);
  const cplx s = std::polar(1.0, pi / 4);
  CHECK(std::abs(branch_point({1.0, pi / 4}) - (s - I) / (s + I)) < 1e-15);

  const Genus0Map m0 = map_params(0.0);
  CHECK(m0.ratio == doctest::Approx(1.0));
  CHECK(m0.angle == doctest::Approx(pi / 2));
  for (double x : {0.5, 2.0}) CHECK(map_params((x - 1) / (x + 1)).angle == doctest::Approx(pi / 2));
  const cplx a(0.3, 0.4);
  const cplx sa = I * (1.0 + a) / (1.0 - a);
  CHECK(map_params(a).ratio == doctest::Approx(std::abs(sa)).epsilon(1e-14));
  CHECK(map_params(a).angle == doctest::Approx(std::arg(sa)).epsilon(1e-14));
  CHECK_THROWS_AS(map_params(1.0), DomainError);
  CHECK_THROWS_AS(validate(Genus0Map{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(Genus0Map{-1.0, 1.0}), DomainError);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Genus0Map m = random_map(rng);
    const cplx al = branch_point(m);
    CHECK(std::abs(al) < 1.0);
    const Genus0Map back = map_params(al);
    CHECK(std::abs(back.ratio - m.ratio) < 1e-12 * m.ratio);
    CHECK(std::abs(back.angle - m.angle) < 1e-12);
    // inversion identity at the parameter level
    CHECK(std::abs(branch_point({1.0 / m.ratio, pi - m.angle}) + al) < 1e-12);
  }
}

TEST_CASE("su2 exponential") {
  CHECK(dist_identity(su2_exp(Mat2::zero())) < 1e-15);
  const Mat2 X = generator_X();
  CHECK((su2_exp(X * (pi / 2)) - X).max_abs() < 1e-15);

  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double a = n(rng);
    const cplx b(n(rng), n(rng));
    const Mat2 Z{cplx(0, a), b, -std::conj(b), cplx(0, -a)};
    const Mat2 U = su2_exp(Z);
    CHECK((U - oracle::matrix_exp_series(Z, 60)).max_abs() < 1e-10);
    CHECK(dist_identity(U * U.adjoint()) < 1e-12);
    CHECK(std::abs(U.det() - 1.0) < 1e-12);
  }
}

TEST_CASE("period lattice") {
  const PeriodLattice L = period_lattice(1.0);
  CHECK(std::abs(L.kappa1 - (pi / 4) * cplx(1, -1)) < 1e-15);
  CHECK(std::abs(L.kappa2 + (pi / 4) * cplx(1, 1)) < 1e-15);
  CHECK_THROWS_AS(period_lattice(0.0), DomainError);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uw(-2.0, 2.0);
  std::uniform_int_distribution<int> un(-3, 3);
  for (int i = 0; i < 40; ++i) {
    const Genus0Map m = random_map(rng);
    const PeriodLattice P = period_lattice(m.ratio);
    CHECK(std::abs(P.kappa1 + P.kappa2 + pi * I / (2 * m.ratio)) < 1e-14);
    CHECK(dist_identity(harmonic_map_eval(m, 0.0)) < 1e-15);
    CHECK(dist_identity(harmonic_map_eval(m, P.kappa1)) < 1e-12);
    CHECK(dist_identity(harmonic_map_eval(m, P.kappa1 / 2.0)) > 0.1);
    for (auto [a, b] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, 3}})
      CHECK(dist_identity(harmonic_map_eval(m, double(a) * P.kappa1 + double(b) * P.kappa2)) < 1e-11);
    const cplx w(uw(rng), uw(rng));
    const cplx shift = double(un(rng)) * P.kappa1 + double(un(rng)) * P.kappa2;
    CHECK((harmonic_map_eval(m, w + shift) - harmonic_map_eval(m, w)).max_abs() < 1e-11);
  }
}

TEST_CASE("conformal type") {
  const WindingMatrix Id{1, 0, 0, 1};
  CHECK(std::abs(conformal_type_oriented(Id, 1.0) - I) < 1e-15);
  CHECK(std::abs(conformal_type(Id, 1.0)) == doctest::Approx(1.0));
  for (double x = 0.05; x < 20.0; x *= 1.7) {
    const cplx t = conformal_type_oriented(Id, x);
    CHECK(std::abs(t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.imag() > 0.0);
    // the displayed value is the S-transform -1/tau of the same lattice
    CHECK(std::abs(-1.0 / t - cplx(1 - x * x, 2 * x) / (1 + x * x)) < 1e-14);
  }
  CHECK(std::abs(conformal_type(Id, 0.7) - conformal_type({2, 0, 0, 2}, 0.7)) < 1e-15);
  CHECK_THROWS_AS(conformal_type({1, 2, 2, 4}, 1.0), DomainError);
}

TEST_CASE("holonomy and eigenline coincidence") {
  const auto p0 = eigenline_branch_points({1.0, pi / 2});
  CHECK(std::abs(p0.first.value()) < 1e-15);
  CHECK(p0.second.is_infinite(1e-15));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const Genus0Map m = random_map(rng);
    const PeriodLattice P = period_lattice(m.ratio);
    const cplx zeta(u(rng), u(rng));
    const Mat2 B1 = holonomy_B(zeta, m, P.kappa1), B2 = holonomy_B(zeta, m, P.kappa2);
    CHECK(std::abs(B1.a) == 0.0);
    CHECK(std::abs(B1.d) == 0.0);
    // off-diagonal with proportional entries: common eigenvectors
    CHECK(std::abs(B1.b * B2.c - B1.c * B2.b) < 1e-10 * (1.0 + std::abs(B1.b * B2.c)));

    // discriminant: quadratic factor of -det B / prefactor^2
    const cplx s = I * std::polar(m.ratio, m.angle), sc = I * std::polar(m.ratio, -m.angle);
    const cplx c0 = -(1.0 + s) * (1.0 + sc);
    const cplx c1 = -(1.0 + s) * (1.0 - sc) + (-1.0 + s) * (1.0 + sc);
    const cplx c2 = (-1.0 + s) * (1.0 - sc);
    const cplx pre = (P.kappa1 + std::conj(P.kappa1) * zeta) / zeta;
    CHECK(std::abs(-B1.det() - pre * pre * (c2 * zeta * zeta + c1 * zeta + c0)) < 1e-10 * std::abs(B1.det()) + 1e-12);
    const auto [r1, r2] = oracle::quadratic_roots(c2, c1, c0);
    const cplx al = branch_point(m);
    const double e = std::min(std::abs(r1 - al) + std::abs(r2 - 1.0 / std::conj(al)),
                              std::abs(r2 - al) + std::abs(r1 - 1.0 / std::conj(al)));
    CHECK(e < 1e-9 * (1.0 + 1.0 / std::abs(al)));
    CHECK(std::abs(r1 - r2) > 1e-6);  // simple roots

    const auto [h1, h2] = eigenline_branch_points(m);
    CHECK(std::abs(h1.value() - al) < 1e-9);
    CHECK(std::abs(h2.value() * std::conj(h1.value()) - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(holonomy_B(0.0, {1.0, 1.0}, 1.0), DomainError);
}

TEST_CASE("energy") {
  CHECK(energy({0.0, {1, 0, 0, 1}}) == doctest::Approx(-pi * pi).epsilon(1e-15));
  CHECK(std::abs(energy({0.0, {0, 1, 1, 0}}) - pi * pi) < 1e-12);
  CHECK(energy({0.5, {0, 1, 1, 0}}) == doctest::Approx(5 * pi * pi / 3).epsilon(1e-14));
  CHECK(std::abs(energy({0.999, {0, 1, 1, 0}})) > 100.0);
  CHECK_THROWS_AS(energy({0.0, {1, 2, 2, 4}}), DomainError);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 30; ++i) {
    const Genus0Data d{cplx(u(rng), u(rng)), {2, 1, -1, 3}};
    const Genus0Data inv = invert_map(d);
    CHECK(inv.alpha == -d.alpha);
    CHECK(std::abs(energy(inv) - energy(d)) < 1e-12 * std::abs(energy(d)));
  }
  CHECK(invert_map({0.0, {}}).alpha == 0.0);
  CHECK(invert_map({cplx(0.3, 0.1), {}}).alpha == cplx(-0.3, -0.1));
}

TEST_CASE("differential scalars") {
  CHECK(std::abs(differential_scalar_closed(0.0) - (pi / 2) * cplx(1, 1)) < 1e-15);
  CHECK(std::abs(differential_scalar_closed(0.5) - (pi / 2) * cplx(2.0 / 3.0, 2.0)) < 1e-14);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 50; ++i) {
    const cplx a(u(rng), u(rng));
    const DifferentialScalars r = differential_scalars(a);
    CHECK(std::abs(r.r1 - differential_scalar_closed(a)) < 1e-10);
    CHECK(std::abs(r.r2 - std::conj(r.r1)) < 1e-10);
  }
}
