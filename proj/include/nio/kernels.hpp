#ifndef NIO_KERNELS_HPP
#define NIO_KERNELS_HPP

#include <cstddef>

// Dense kernels shared by the Ulam and spectral code. Each kernel has an
// OpenMP version and a serial reference twin. The parallel versions split
// work only across independent output elements and keep the per-element
// summation order fixed, so they produce bitwise-identical results to the
// serial twins at any thread count.
namespace nio::kernels {

/// Worker count honoring the NIO_THREADS environment cap.
int max_threads();

/// C = A * B for square row-major matrices of order n.
void matmul(double* c, const double* a, const double* b, std::size_t n);
void matmul_serial(double* c, const double* a, const double* b, std::size_t n);

/// Row-vector product out = f * M; out[j] = sum_i f[i] M[i][j].
void apply_row(double* out, const double* f, const double* m, std::size_t n);
void apply_row_serial(double* out, const double* f, const double* m, std::size_t n);

/// Dobrushin ergodicity coefficient of a row-stochastic matrix:
/// (1/2) max_{i,j} sum_l |M[i][l] - M[j][l]|. Equals the L1 operator norm
/// of M restricted to zero-sum row vectors.
double dobrushin_coefficient(const double* m, std::size_t n);
double dobrushin_coefficient_serial(const double* m, std::size_t n);

/// Divide each row by its sum. Rows with vanishing sum are left unchanged.
void renormalize_rows(double* m, std::size_t n);
void renormalize_rows_serial(double* m, std::size_t n);

}  // namespace nio::kernels

#endif  // NIO_KERNELS_HPP
