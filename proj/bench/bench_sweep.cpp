// Serial reference vs OpenMP level-set sweep and verification suite.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "harmtori/sweep.hpp"
#include "harmtori/verify.hpp"

using namespace harmtori;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);

  SweepOptions opt;
  opt.k_grid = 12;
  opt.angle_grid = 65;
  const Rational p(1, 2), q(0);
  LevelSetMesh a, b;
  const double ts = seconds([&] { a = sweep_level_set_serial(p, q, opt); });
  const double tp = seconds([&] { b = sweep_level_set(p, q, opt); });
  double diff = 0.0;
  for (std::size_t i = 0; i < a.records.size(); ++i)
    diff = std::max(diff, std::abs(a.records[i].mp.v_t - b.records[i].mp.v_t));
  std::printf("sweep %zu points: serial %.3fs  openmp %.3fs  speedup %.2f  max diff %.1e\n", a.records.size(), ts, tp,
              ts / tp, diff);

  VerifyOptions vs{42, false}, vp{42, true};
  const double us = seconds([&] { run_suite("moduli", vs); });
  const double up = seconds([&] { run_suite("moduli", vp); });
  std::printf("moduli suite: serial %.3fs  openmp %.3fs  speedup %.2f\n", us, up, us / up);
  return 0;
}
