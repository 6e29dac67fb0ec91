#include "nio/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace nio::kernels {

namespace {

int read_thread_cap() {
  const char* env = std::getenv("NIO_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 0;
  return static_cast<int>(std::min(v, 1024L));
}

}  // namespace

int max_threads() {
  static const int cap = read_thread_cap();
  int t = omp_get_max_threads();
  if (cap > 0 && cap < t) t = cap;
  return t;
}

void matmul_serial(double* c, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c + i * n;
    std::memset(ci, 0, n * sizeof(double));
    for (std::size_t k = 0; k < n; ++k) {
      double aik = a[i * n + k];
      if (aik == 0.0) continue;
      const double* bk = b + k * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

void matmul(double* c, const double* a, const double* b, std::size_t n) {
  int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    auto i = static_cast<std::size_t>(ii);
    double* ci = c + i * n;
    std::memset(ci, 0, n * sizeof(double));
    for (std::size_t k = 0; k < n; ++k) {
      double aik = a[i * n + k];
      if (aik == 0.0) continue;
      const double* bk = b + k * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

void apply_row_serial(double* out, const double* f, const double* m, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f[i] * m[i * n + j];
    out[j] = s;
  }
}

void apply_row(double* out, const double* f, const double* m, std::size_t n) {
  int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n); ++jj) {
    auto j = static_cast<std::size_t>(jj);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f[i] * m[i * n + j];
    out[j] = s;
  }
}

namespace {

double row_pair_distance(const double* m, std::size_t n, std::size_t i, std::size_t j) {
  const double* ri = m + i * n;
  const double* rj = m + j * n;
  double s = 0.0;
  for (std::size_t l = 0; l < n; ++l) s += std::abs(ri[l] - rj[l]);
  return s;
}

}  // namespace

double dobrushin_coefficient_serial(const double* m, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      worst = std::max(worst, row_pair_distance(m, n, i, j));
    }
  }
  return 0.5 * worst;
}

double dobrushin_coefficient(const double* m, std::size_t n) {
  int nt = max_threads();
  double worst = 0.0;
#pragma omp parallel for schedule(dynamic, 4) reduction(max : worst) num_threads(nt)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n) - 1; ++ii) {
    auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < n; ++j) {
      worst = std::max(worst, row_pair_distance(m, n, i, j));
    }
  }
  return 0.5 * worst;
}

void renormalize_rows_serial(double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double* row = m + i * n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j];
    if (s == 0.0) continue;
    double inv = 1.0 / s;
    for (std::size_t j = 0; j < n; ++j) row[j] *= inv;
  }
}

void renormalize_rows(double* m, std::size_t n) {
  int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    double* row = m + static_cast<std::size_t>(ii) * n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j];
    if (s == 0.0) continue;
    double inv = 1.0 / s;
    for (std::size_t j = 0; j < n; ++j) row[j] *= inv;
  }
}

}  // namespace nio::kernels
