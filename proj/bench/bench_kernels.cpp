// Timing harness for the dense kernels: each OpenMP version against its
// serial reference twin on a realistic annealed matrix. Equality is checked
// bitwise while timing; the unit suite asserts it separately.
//
// Usage: nio_bench [n] [reps]

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "nio/kernels.hpp"
#include "nio/map.hpp"
#include "nio/matrix.hpp"
#include "nio/noise.hpp"
#include "nio/partition.hpp"
#include "nio/ulam.hpp"

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = omp_get_wtime();
    fn();
    double t1 = omp_get_wtime();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-12s %10.4fs %10.4fs %9.2fx   %s\n", name, serial, parallel,
              serial / parallel, equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 512;
  int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  if (n < 2 || n % 2 != 0 || n > nio::AnnealedOperator::kMaterializeLimit) {
    std::fprintf(stderr, "n must be even and in [2, %zu]\n",
                 nio::AnnealedOperator::kMaterializeLimit);
    return 2;
  }

  nio::Partition p(n);
  nio::MapSpec map(5.0, 1.0);
  nio::NoiseKernel kernel(nio::NoiseKernel::Mother::Uniform, 0.5);
  nio::StochasticMatrix det = nio::deterministic_matrix(map, p);
  nio::StochasticMatrix noise =
      nio::noise_matrix(kernel, nio::BoundaryCondition::Periodic, p);
  nio::StochasticMatrix annealed = det.multiply(noise);

  std::printf("kernel benchmark: n=%zu, reps=%d, threads=%d\n", n, reps,
              nio::kernels::max_threads());
  std::printf("%-12s %11s %11s %10s\n", "kernel", "serial", "openmp", "speedup");

  std::vector<double> c1(n * n), c2(n * n);
  double ts = best_of(reps, [&] {
    nio::kernels::matmul_serial(c1.data(), det.data(), noise.data(), n);
  });
  double tp = best_of(reps, [&] {
    nio::kernels::matmul(c2.data(), det.data(), noise.data(), n);
  });
  report("matmul", ts, tp, std::memcmp(c1.data(), c2.data(), n * n * 8) == 0);

  std::vector<double> f(nio::Density::uniform(n).values);
  std::vector<double> o1(n), o2(n);
  int apply_reps = 200;
  ts = best_of(reps, [&] {
    for (int r = 0; r < apply_reps; ++r) {
      nio::kernels::apply_row_serial(o1.data(), f.data(), annealed.data(), n);
    }
  });
  tp = best_of(reps, [&] {
    for (int r = 0; r < apply_reps; ++r) {
      nio::kernels::apply_row(o2.data(), f.data(), annealed.data(), n);
    }
  });
  report("apply_row", ts, tp, std::memcmp(o1.data(), o2.data(), n * 8) == 0);

  double d1 = 0.0, d2 = 0.0;
  ts = best_of(reps, [&] { d1 = nio::kernels::dobrushin_coefficient_serial(annealed.data(), n); });
  tp = best_of(reps, [&] { d2 = nio::kernels::dobrushin_coefficient(annealed.data(), n); });
  report("dobrushin", ts, tp, std::memcmp(&d1, &d2, 8) == 0);

  std::vector<double> m1(annealed.data(), annealed.data() + n * n);
  std::vector<double> m2 = m1;
  int renorm_reps = 50;
  ts = best_of(reps, [&] {
    for (int r = 0; r < renorm_reps; ++r) nio::kernels::renormalize_rows_serial(m1.data(), n);
  });
  tp = best_of(reps, [&] {
    for (int r = 0; r < renorm_reps; ++r) nio::kernels::renormalize_rows(m2.data(), n);
  });
  report("renormalize", ts, tp, std::memcmp(m1.data(), m2.data(), n * n * 8) == 0);

  return 0;
}
