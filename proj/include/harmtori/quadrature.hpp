#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace harmtori {

namespace gk_detail {

inline constexpr std::array<double, 8> xk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace gk_detail

// One 15-point Kronrod panel on [a,b]; returns {kronrod, |kronrod - gauss|}.
template <class F>
auto gk15(F&& f, double a, double b) {
  using T = decltype(f(a));
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T rk = fc * gk_detail::wk[7];
  T rg = fc * gk_detail::wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * gk_detail::xk[j];
    T f1 = f(c - dx);
    T f2 = f(c + dx);
    rk += (f1 + f2) * gk_detail::wk[j];
    if (j % 2 == 1) rg += (f1 + f2) * gk_detail::wg[j / 2];
  }
  rk *= h;
  rg *= h;
  using std::abs;
  return std::pair<T, double>{rk, static_cast<double>(abs(rk - rg))};
}

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 0.0;
  int max_panels = 20000;
};

// Globally adaptive G7K15: always bisect the panel with the largest error.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  using T = decltype(f(a));
  struct Panel {
    double a, b;
    T value;
    double err;
  };
  if (a == b) return T{};
  std::vector<Panel> panels;
  auto [v0, e0] = gk15(f, a, b);
  panels.push_back({a, b, v0, e0});
  T total = v0;
  double err_total = e0;
  using std::abs;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * static_cast<double>(abs(total)));
    if (err_total <= target) break;
    if (static_cast<int>(panels.size()) >= opt.max_panels)
      throw std::runtime_error("integrate: panel budget exhausted");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    Panel p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    if (!(m > std::min(p.a, p.b) && m < std::max(p.a, p.b))) break;
    auto [vl, el] = gk15(f, p.a, m);
    auto [vr, er] = gk15(f, m, p.b);
    panels[worst] = {p.a, m, vl, el};
    panels.push_back({m, p.b, vr, er});
    if (panels.size() % 64 == 0) {
      total = T{};
      err_total = 0.0;
      for (const auto& q : panels) {
        total += q.value;
        err_total += q.err;
      }
    } else {
      total += vl + vr - p.value;
      err_total += el + er - p.err;
    }
  }
  return total;
}

}  // namespace harmtori
