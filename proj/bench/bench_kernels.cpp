// Timing comparison of the OpenMP kernels against their serial references.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "fiolab/applicator.hpp"
#include "fiolab/testfamily.hpp"
#include "fiolab/weights.hpp"

using namespace fiolab;

namespace {

double time_of(const std::function<void()>& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4fs %10.4fs %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    const Grid g = make_grid(1, 512, 16.0);
    DetRng rng(1);
    SampledField u(g, Side::physical);
    for (auto& v : u.values)
      v = cdouble(rng.next_double() - 0.5, rng.next_double() - 0.5);
    const FioOperator op = make_fio(bessel_power_symbol(-1.0), wave_phase(1, 1.0));
    row("apply_fio 1d N=512",
        time_of([&] { apply_fio_serial(op, u); }),
        time_of([&] { apply_fio(op, u); }));
  }
  {
    const Grid g = make_grid(2, 48, 8.0);
    DetRng rng(2);
    SampledField u(g, Side::physical);
    for (auto& v : u.values)
      v = cdouble(rng.next_double() - 0.5, rng.next_double() - 0.5);
    const FioOperator op = make_fio(bessel_power_symbol(-1.5), wave_phase(2, 1.0));
    row("apply_fio 2d N=48",
        time_of([&] { apply_fio_serial(op, u); }),
        time_of([&] { apply_fio(op, u); }));
  }
  {
    const Grid g = make_grid(1, 1024, 16.0);
    const FioOperator op = make_fio(cutoff_times_power_symbol(1.0), wave_phase(1, 1.0));
    std::vector<Point> ys(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) ys[i] = g.point_at(i);
    row("kernel_row 1d N=1024",
        time_of([&] { kernel_row_serial(op, g, Point{0.5}, ys); }),
        time_of([&] { kernel_row(op, g, Point{0.5}, ys); }));
  }
  {
    const Grid g = make_grid(1, 2048, 16.0);
    DetRng rng(3);
    SampledField u(g, Side::physical);
    for (auto& v : u.values) v = cdouble(rng.next_double(), 0.0);
    const BallFamily fam = BallFamily::dyadic(g, -6, 3, 64);
    row("maximal 1d N=2048",
        time_of([&] { maximal_serial(u, fam); }),
        time_of([&] { maximal(u, fam); }));
  }
  return 0;
}
